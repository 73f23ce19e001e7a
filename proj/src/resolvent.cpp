#include "blowup/resolvent.hpp"

#include "blowup/fit.hpp"
#include "blowup/parallel.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>
#include <limits>
#include <sstream>

namespace blowup {

namespace {

constexpr double kParityTol = 1e-10;

struct Integral {
  double value = 0, error = 0;
};

// 30-point Gauss-Legendre with the 20-point rule as error estimate
Integral gauss_pair(const std::function<double(double)>& f, double a, double b)
{
  double hi = boost::math::quadrature::gauss<double, 30>::integrate(f, a, b);
  double lo = boost::math::quadrature::gauss<double, 20>::integrate(f, a, b);
  return {hi, std::abs(hi - lo)};
}

Integral bisect(const std::function<double(double)>& f, double a, double b, double abs_tol, int depth)
{
  Integral whole = gauss_pair(f, a, b);
  if (whole.error <= abs_tol || depth == 0) return whole;
  double m = 0.5 * (a + b);
  Integral l = bisect(f, a, m, abs_tol, depth - 1), r = bisect(f, m, b, abs_tol, depth - 1);
  return {l.value + r.value, l.error + r.error};
}

// panel bisection until each panel's estimate is below tol times the L1 size of the integral
Integral integrate(const std::function<double(double)>& f, double a, double b, double tol = 1e-13)
{
  if (a == b) return {};
  double scale = std::abs(boost::math::quadrature::gauss<double, 30>::integrate(
      [&](double x) { return std::abs(f(x)); }, a, b));
  Integral out = bisect(f, a, b, tol * std::max(scale, std::numeric_limits<double>::min()), 40);
  if (!std::isfinite(out.value)) throw QuadratureError("quadrature produced a non-finite value");
  return out;
}

// int_rho^1 f(s) ds with s = rho + (1-rho) t, t = 1 - tau^2: a sqrt(1-s) factor becomes sqrt(1-rho) tau
Integral integrate_to_one(const std::function<double(double)>& f, double rho)
{
  double h = 1 - rho;
  return integrate([&](double tau) { return f(rho + h * (1 - tau * tau)) * 2 * tau * h; }, 0.0, 1.0);
}

DJet rho_jet(double rho) { return DJet::variable(rho, 1.0); }

} // namespace

// ------------------------------------------------------------------ L tilde

LtildeValue apply_Ltilde_radial(const DJet& u1, const DJet& u2, double rho, int ell, int d)
{
  if (ell < 0 || d < 2) throw std::invalid_argument("apply_Ltilde_radial: need l >= 0 and d >= 2");
  LtildeValue out;
  out.v1 = -rho * u1.d1 - 2 * u1.v + u2.v;
  if (rho == 0) {
    double scale = std::max({1.0, std::abs(u1.v), std::abs(u1.d2)});
    if (ell == 0) {
      if (std::abs(u1.d1) > kParityTol * scale) throw ConsistencyError("l = 0 data with odd part at the origin");
      // u'' + (d-1) u'/rho -> d u''(0)
      out.v2 = d * u1.d2 - 3 * u2.v;
    } else {
      if (std::abs(u1.v) > kParityTol * scale) throw ConsistencyError("l >= 1 data not vanishing at the origin");
      // the rho^l term is annihilated by the angular part; the rest is O(rho^l)
      out.v2 = -3 * u2.v;
    }
    return out;
  }
  double lap = u1.d2 + (d - 1) / rho * u1.d1 - ell * (ell + d - 2) / (rho * rho) * u1.v;
  out.v2 = lap - rho * u2.d1 - 3 * u2.v;
  return out;
}

std::vector<LtildeValue> apply_Ltilde_radial(const RadialFn& u1, const RadialFn& u2, std::span<const double> rho,
                                             int ell, int d)
{
  std::vector<LtildeValue> out(rho.size());
  for (std::size_t i = 0; i < rho.size(); ++i) {
    DJet r = rho_jet(rho[i]);
    out[i] = apply_Ltilde_radial(u1(r), u2(r), rho[i], ell, d);
  }
  return out;
}

// ------------------------------------------------------------------ fundamental system

DJet FundamentalSystem::phi0(const DJet& z) const
{
  DJet w = jsqrt(DJet(1.0) - z);
  return jpow(DJet(2.0) / (DJet(1.0) + w), p) / w;
}

DJet FundamentalSystem::phi1(const DJet& z) const
{
  DJet y = DJet(1.0) - z;
  if (y.v < 2.5e-3) {
    // even series 2 sum_j (p)_{2j+1}/(2j+1)! y^j, y = w^2
    DJet sum(0.0), yk(1.0);
    double c = 2 * p;
    for (int j = 0; j < 60; ++j) {
      sum += DJet(c) * yk;
      if (std::abs(c) * std::pow(y.v, j) < 1e-18 * std::abs(sum.v) && j > 2) break;
      c *= (p + 2 * j + 1) * (p + 2 * j + 2) / ((2 * j + 2.0) * (2 * j + 3.0));
      yk = yk * y;
    }
    return sum;
  }
  DJet w = jsqrt(y);
  // 1/(1-w) = (1+w)/z avoids cancellation for small z
  return (jpow((DJet(1.0) + w) / z, p) - jpow(DJet(1.0) + w, -p)) / w;
}

DJet FundamentalSystem::psi0(const DJet& rho) const
{
  return ipow(rho, static_cast<unsigned>(m)) * phi0(rho * rho);
}

DJet FundamentalSystem::psi1(const DJet& rho) const
{
  return ipow(rho, static_cast<unsigned>(m)) * phi1(rho * rho);
}

double FundamentalSystem::wronskian(double rho) const
{
  DJet a = psi0(rho_jet(rho)), b = psi1(rho_jet(rho));
  return a.v * b.d1 - a.d1 * b.v;
}

double FundamentalSystem::c1_closed() const { return -std::pow(2.0, p - 1); }
double FundamentalSystem::c2_closed() const { return std::pow(2.0, p - 0.5); }

FundamentalSystem hypergeo_fundamental(int ell, int d)
{
  if (ell < 0) throw std::invalid_argument("hypergeo_fundamental: l must be nonnegative");
  if (d != 9 && d != 7) throw std::invalid_argument("hypergeo_fundamental: d must be 7 or 9");
  FundamentalSystem fs;
  fs.d = d;
  fs.ell = ell;
  fs.m = d == 9 ? ell + 3 : ell + 2;
  fs.p = fs.m + 0.5;
  double r = 0.5;
  fs.C = fs.wronskian(r) * std::pow(1 - r * r, 1.5) * r * r;
  return fs;
}

double density_lambda(int d)
{
  if (d == 9) return 2.5;
  if (d == 7) return 1.5;
  throw std::invalid_argument("density_lambda: d must be 7 or 9");
}

double fundamental_ode_residual(const FundamentalSystem& fs, const DJet& v, double rho)
{
  double m = fs.m;
  return -(1 - rho * rho) * v.d2 + (-2 / rho + 5 * rho) * v.d1 + ((m + 1) * m / (rho * rho) + 3.75) * v.v;
}

// ------------------------------------------------------------------ resolvent solve

namespace {

struct ModeKernel {
  FundamentalSystem fs;
  int weight;
  const std::function<double(double)>& g;
  double alpha = 0; // int_0^1 F
  double alpha_err = 0;

  // psi_j(s) s^weight g(s) / ((1-s^2) W(s)) with 1/W = s^2 (1-s^2)^{3/2} / C
  double F(double s) const { return s >= 1 ? 0.0 : fs.psi0(DJet(s)).v * common(s); }
  double G(double s) const { return s >= 1 ? 0.0 : fs.psi1(DJet(s)).v * common(s); }
  double common(double s) const
  {
    if (s <= 0) return 0;
    return std::pow(s, weight + 2) * g(s) * std::sqrt(1 - s * s) / fs.C;
  }
};

struct ModeSample {
  DJet u;
  double err = 0;
};

ModeSample mode_at(const ModeKernel& k, double rho)
{
  Integral ig;
  if (rho < 0.5) {
    Integral left = integrate([&](double s) { return k.G(s); }, rho, 0.5);
    Integral right = integrate_to_one([&](double s) { return k.G(s); }, 0.5);
    ig = {left.value + right.value, left.error + right.error};
  } else {
    ig = integrate_to_one([&](double s) { return k.G(s); }, rho);
  }
  Integral iF;
  if (rho <= 0.5) {
    iF = integrate([&](double s) { return k.F(s); }, 0.0, rho);
  } else {
    Integral tail = integrate_to_one([&](double s) { return k.F(s); }, rho);
    iF = {k.alpha - tail.value, k.alpha_err + tail.error};
  }
  DJet r = rho_jet(rho);
  DJet p0 = k.fs.psi0(r), p1 = k.fs.psi1(r);
  double Fr = k.F(rho), Gr = k.G(rho);
  DJet v{-p0.v * ig.value - p1.v * iF.value, -p0.d1 * ig.value - p1.d1 * iF.value,
         -p0.d2 * ig.value - p1.d2 * iF.value + p0.d1 * Gr - p1.d1 * Fr};
  ModeSample out;
  out.u = v / ipow(r, static_cast<unsigned>(k.weight));
  out.err = (std::abs(p0.v) * ig.error + std::abs(p1.v) * iF.error) / std::pow(rho, k.weight);
  return out;
}

} // namespace

std::vector<double> resolvent_grid()
{
  std::vector<double> r;
  const int n = 200;
  for (int i = 0; i < n; ++i) r.push_back(0.01 + (1 - 1e-3 - 0.01) * i / (n - 1));
  return r;
}

RadialModeFunction solve_resolvent_mode(int d, int ell, const std::function<double(double)>& g,
                                        std::span<const double> rho)
{
  RadialModeFunction out;
  out.d = d;
  out.ell = ell;
  out.lambda = density_lambda(d);
  ModeKernel k{hypergeo_fundamental(ell, d), d == 9 ? 3 : 2, g};
  {
    Integral a = integrate([&](double s) { return k.F(s); }, 0.0, 0.5);
    Integral b = integrate_to_one([&](double s) { return k.F(s); }, 0.5);
    k.alpha = a.value + b.value;
    k.alpha_err = a.error + b.error;
  }
  for (double r : rho)
    if (!(r > 0 && r < 1)) throw std::invalid_argument("solve_resolvent_mode: samples must lie in (0, 1)");

  out.rho.assign(rho.begin(), rho.end());
  out.u.resize(rho.size());
  out.residual.resize(rho.size());
  std::vector<double> errs(rho.size());
  parallel_for(rho.size(), [&](std::size_t i) {
    ModeSample s = mode_at(k, rho[i]);
    out.u[i] = s.u;
    errs[i] = s.err;
    const double L = out.lambda, r = rho[i];
    DJet u1 = s.u;
    // u2 = rho u1' + (lambda + 2) u1; its second derivative is not needed by the operator
    DJet u2{r * u1.d1 + (L + 2) * u1.v, u1.d1 + r * u1.d2 + (L + 2) * u1.d1, 0.0};
    LtildeValue lv = apply_Ltilde_radial(u1, u2, r, ell, d);
    double e1 = std::abs(L * u1.v - lv.v1);
    double e2 = std::abs(L * u2.v - lv.v2 - g(r));
    out.residual[i] = std::max(e1, e2);
  });
  for (std::size_t i = 0; i < rho.size(); ++i) {
    out.max_residual = std::max(out.max_residual, out.residual[i]);
    out.quadrature_error = std::max(out.quadrature_error, errs[i]);
  }
  if (!(out.quadrature_error < 1e-6)) throw QuadratureError("resolvent quadrature did not converge");

  auto xs = geometric_points(2e-3, 2e-2, 8);
  std::vector<double> ys;
  bool zero = true;
  for (double x : xs) {
    ys.push_back(mode_at(k, x).u.v);
    zero = zero && ys.back() == 0;
  }
  out.origin_exponent = zero ? std::numeric_limits<double>::quiet_NaN() : log_log_slope(xs, ys);
  return out;
}

DegeneracyFit fundamental_degeneracy(const FundamentalSystem& fs)
{
  auto ts = geometric_points(1e-5, 1e-2, 80);
  std::vector<double> y;
  for (double t : ts) y.push_back(std::sqrt(t) * fs.psi0(DJet(1 - t)).v);
  auto p1 = [&](double t) { return std::sqrt(t) * fs.psi1(DJet(1 - t)).v; };
  LinearFit f = least_squares(ts, y,
                              {p1, [](double) { return 1.0; }, [](double t) { return t; },
                               [](double t) { return t * t; }, [](double t) { return t * t * t; },
                               [](double t) { return t * t * t * t; }, [](double t) { return std::pow(t, 5); }});
  DegeneracyFit out;
  out.c1 = f.coef[0];
  out.c2 = f.coef[1];
  out.fit_residual = f.max_residual;
  auto near = geometric_points(1e-6, 1e-4, 20);
  std::vector<double> diff;
  for (double t : near) diff.push_back(fs.psi0(DJet(1 - t)).v - out.c1 * fs.psi1(DJet(1 - t)).v);
  out.exponent = log_log_slope(near, diff);
  return out;
}

// ------------------------------------------------------------------ witnesses

namespace {

// u2 = u1 I with I' = 1/(rho^8 u1^2); the jet of I is built from the closed-form integrand
DJet reduction_of_order(const std::function<DJet(const DJet&)>& u1, double base, double rho)
{
  auto integrand = [&](const DJet& s) {
    DJet a = u1(s);
    return (ipow(s, 8) * a * a).inverse();
  };
  Integral i;
  if (rho > 0.5 && base == 0.5) {
    // s = 1 - 1/y removes the double pole at s = 1
    i = integrate([&](double y) { return integrand(DJet(1 - 1 / y)).v / (y * y); }, 2.0, 1 / (1 - rho), 1e-14);
  } else {
    i = integrate([&](double s) { return integrand(DJet(s)).v; }, base, rho, 1e-14);
  }
  DJet J = integrand(rho_jet(rho));
  return u1(rho_jet(rho)) * DJet(i.value, J.v, J.d1);
}

} // namespace

DJet witness_u2_l0(double rho)
{
  auto u1 = [](const DJet& s) {
    DJet q = DJet(7.0) + DJet(5.0) * s * s;
    return (DJet(1.0) - s * s) / ipow(q, 3);
  };
  return reduction_of_order(u1, 0.5, rho);
}

DJet witness_u2_l1(double rho)
{
  auto u1 = [](const DJet& s) {
    DJet q = DJet(7.0) + DJet(5.0) * s * s;
    return s * (DJet(77.0) - DJet(5.0) * s * s) / ipow(q, 3);
  };
  return reduction_of_order(u1, 1.0, rho);
}

WitnessReport multiplicity_witnesses(int d)
{
  if (d != 9) throw std::invalid_argument("multiplicity_witnesses: only d = 9 is covered");
  WitnessReport rep;
  Integral c = integrate([](double s) { return 2 * std::pow(s, 8) * (1 - s * s) / std::pow(7 + 5 * s * s, 6); }, 0.0,
                         1.0, 1e-14);
  rep.C = c.value;
  rep.C_error = c.error;

  auto ts = geometric_points(1e-4, 1e-2, 60);
  std::vector<double> y(ts.size());
  parallel_for(ts.size(), [&](std::size_t i) { y[i] = witness_u2_l0(1 - ts[i]).v; });
  std::vector<std::function<double(double)>> basis{[](double) { return 1.0; },
                                                   [](double t) { return t * std::log(t); },
                                                   [](double t) { return t; }};
  LinearFit leading = least_squares(ts, y, basis);
  rep.log_coefficient_leading_fit = leading.coef[1];
  // the t^2 log t and t^2 terms are not negligible at t = 1e-2
  basis.push_back([](double t) { return t * t * std::log(t); });
  basis.push_back([](double t) { return t * t; });
  LinearFit f = least_squares(ts, y, basis);
  rep.constant_term = f.coef[0];
  rep.log_coefficient = f.coef[1];
  rep.fit_residual = f.max_residual;

  auto rs = geometric_points(1e-3, 1e-2, 12);
  std::vector<double> a, b;
  for (double r : rs) {
    a.push_back(witness_u2_l0(r).v);
    b.push_back(witness_u2_l1(r).v);
  }
  rep.exponent_l0 = log_log_slope(rs, a);
  rep.exponent_l1 = log_log_slope(rs, b);

  std::ostringstream diag;
  if (!(rep.C > 0 && rep.C < 4e-8)) {
    rep.conclusive = false;
    diag << "C outside (0, 4e-8); ";
  }
  if (rep.fit_residual > 1e-3) {
    rep.conclusive = false;
    diag << "expansion fit residual " << rep.fit_residual << "; ";
  }
  rep.diagnostics = diag.str();
  return rep;
}

} // namespace blowup
