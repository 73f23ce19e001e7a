#include "blowup/mode_scan.hpp"

#include "blowup/parallel.hpp"
#include "blowup/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace blowup {

const char* to_string(Potential p)
{
  switch (p) {
  case Potential::u_star: return "u-star";
  case Potential::kappa: return "kappa";
  default: return "free";
  }
}

Potential parse_potential(const std::string& s)
{
  if (s == "u-star" || s == "u_star" || s == "ustar") return Potential::u_star;
  if (s == "kappa") return Potential::kappa;
  if (s == "free") return Potential::free;
  throw std::invalid_argument("unknown potential: " + s);
}

namespace {

using CPoly = std::vector<cplx>;

CPoly mul(const CPoly& a, const CPoly& b)
{
  if (a.empty() || b.empty()) return {};
  CPoly c(a.size() + b.size() - 1, cplx(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

CPoly add(CPoly a, const CPoly& b)
{
  if (a.size() < b.size()) a.resize(b.size(), cplx(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  return a;
}

// p(x0 + t) by repeated synthetic division
CPoly taylor_shift(CPoly p, double x0)
{
  std::size_t n = p.size();
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = n - 1; j > k; --j) p[j - 1] += x0 * p[j];
  return p;
}

cplx coeff(const CPoly& p, std::size_t j) { return j < p.size() ? p[j] : cplx(0); }

} // namespace

RadialOde radial_ode(const SpectralPoint& p)
{
  if (p.d < 3) throw std::invalid_argument("dimension must be >= 3");
  if (p.ell < 0) throw std::invalid_argument("ell must be >= 0");
  double l = p.ell, d = p.d;
  cplx L = p.lambda;
  RadialOde o;
  o.P2 = {0.0, 4.0, -4.0};
  o.P1 = {2 * (2 * l + d), -2.0 * (2 * l + 2.0 * L + 7.0)};
  cplx k = (L + l + 2.0) * (L + l + 3.0);
  if (p.potential == Potential::u_star) {
    auto pc = profile_constants(p.d);
    double c1 = static_cast<double>(pc.c1f), c2 = static_cast<double>(pc.c2f), c3 = static_cast<double>(pc.c3f);
    CPoly D = {c3 * c3, 2 * c3, 1.0}; // (c3 + x)^2
    o.P2 = mul(o.P2, D);
    o.P1 = mul(o.P1, D);
    o.P0 = add(mul({-k}, D), {2 * c1, -2 * c2});
  } else {
    o.P0 = {-k + (p.potential == Potential::kappa ? 12.0 : 0.0)};
  }
  return o;
}

cplx exponent_at_one(int d, cplx lambda) { return (d - 5) / 2.0 - lambda; }

std::vector<cplx> frobenius_branch(const RadialOde& ode, double x0, double r, double tol, int n_max, double* tail)
{
  CPoly P2 = taylor_shift(ode.P2, x0), P1 = taylor_shift(ode.P1, x0), P0 = taylor_shift(ode.P0, x0);
  if (std::abs(P2[0]) > 1e-12) throw std::invalid_argument("expansion point is not singular");
  CPoly Q2(P2.begin() + 1, P2.end());
  std::vector<cplx> c{1.0};
  double scale = 1, rk = 1;
  int quiet = 0;
  for (int m = 1; m <= n_max; ++m) {
    cplx rhs = 0;
    for (std::size_t j = 1; j <= static_cast<std::size_t>(m); ++j) {
      std::size_t k = static_cast<std::size_t>(m) - j;
      double kk = static_cast<double>(k);
      rhs += (coeff(Q2, j) * (kk * (kk - 1)) + coeff(P1, j) * kk) * c[k];
    }
    for (std::size_t j = 0; j + 1 <= static_cast<std::size_t>(m); ++j)
      rhs += coeff(P0, j) * c[static_cast<std::size_t>(m) - 1 - j];
    cplx den = double(m) * (Q2[0] * double(m - 1) + P1[0]);
    if (std::abs(den) < 1e-300) throw std::domain_error("Frobenius recurrence hits a resonant index");
    c.push_back(-rhs / den);
    rk *= r;
    double term = std::abs(c.back()) * rk;
    scale = std::max(scale, term);
    quiet = term < tol * scale ? quiet + 1 : 0;
    if (quiet >= 6) {
      if (tail) *tail = term;
      return c;
    }
  }
  throw PrecisionError("Frobenius series did not converge within " + std::to_string(n_max) + " terms");
}

std::pair<cplx, cplx> eval_series(const std::vector<cplx>& c, cplx t)
{
  cplx v = 0, dv = 0;
  for (std::size_t k = c.size(); k-- > 0;) {
    dv = dv * t + v;
    v = v * t + c[k];
  }
  return {v, dv};
}

TwoSidedSeries two_sided_series(const SpectralPoint& p, double tol)
{
  auto ode = radial_ode(p);
  TwoSidedSeries s;
  s.at0 = frobenius_branch(ode, 0.0, s.xm, tol, 20000, &s.tail0);
  s.at1 = frobenius_branch(ode, 1.0, 1 - s.xm, tol, 20000, &s.tail1);
  return s;
}

cplx raw_wronskian(const SpectralPoint& p)
{
  auto s = two_sided_series(p);
  auto [v0, d0] = eval_series(s.at0, s.xm);
  auto [v1, d1] = eval_series(s.at1, s.xm - 1);
  return v0 * d1 - d0 * v1;
}

std::vector<double> indicator_pole_set(int d)
{
  // (d-5)/2 - lambda = m >= 1 with lambda >= -1/2
  std::vector<double> out;
  for (int m = 1; (d - 5) / 2.0 - m >= -0.5; ++m) out.push_back((d - 5) / 2.0 - m);
  return out;
}

namespace {

cplx indicator_direct(const SpectralPoint& p, const std::vector<double>& poles)
{
  cplx f = raw_wronskian(p);
  for (double q : poles) f *= p.lambda - q;
  return f;
}

} // namespace

cplx connection_indicator(const SpectralPoint& p)
{
  auto poles = indicator_pole_set(p.d);
  constexpr double near = 0.05, radius = 0.1;
  bool close = std::any_of(poles.begin(), poles.end(), [&](double q) { return std::abs(p.lambda - q) < near; });
  if (!close) return indicator_direct(p, poles);
  // mean value over a circle; the product removes the poles so the integrand is analytic inside
  constexpr int K = 32;
  cplx acc = 0;
  for (int k = 0; k < K; ++k) {
    SpectralPoint q = p;
    q.lambda = p.lambda + radius * std::polar(1.0, 2 * std::numbers::pi * (k + 0.5) / K);
    acc += indicator_direct(q, poles);
  }
  return acc / double(K);
}

ScanRoot refine_root(const SpectralPoint& base, cplx start)
{
  SpectralPoint p = base;
  p.lambda = start;
  ScanRoot r;
  cplx f = connection_indicator(p);
  for (int it = 1; it <= 60; ++it) {
    double h = 1e-6 * std::max(1.0, std::abs(p.lambda));
    SpectralPoint a = p, b = p;
    a.lambda += h;
    b.lambda -= h;
    cplx df = (connection_indicator(a) - connection_indicator(b)) / (2 * h);
    if (df == cplx(0)) break;
    cplx step = f / df;
    if (std::abs(step) > 0.5) step *= 0.5 / std::abs(step);
    p.lambda -= step;
    f = connection_indicator(p);
    r.newton_iterations = it;
    if (std::abs(step) < 1e-14 * std::max(1.0, std::abs(p.lambda))) break;
  }
  r.lambda = p.lambda;
  r.residual = std::abs(f);
  return r;
}

ScanResult eigenvalue_scan(int d, int ell, const ScanRegion& region, Potential potential)
{
  if (region.nx < 2 || region.ny < 2) throw std::invalid_argument("scan grid needs at least 2x2 cells");
  if (!(region.re_lo < region.re_hi && region.im_lo < region.im_hi)) throw std::invalid_argument("empty scan region");
  if (region.re_lo < -0.5) throw std::invalid_argument("scan regions must satisfy Re lambda >= -1/2");
  ScanResult out;
  out.base = {d, ell, 0, potential};
  out.region = region;
  out.exploratory = d != 9 || potential != Potential::u_star;

  // interior nodes are shifted off the lattice so that real roots at round numbers never sit on a cell edge
  auto axis = [](double lo, double hi, int n) {
    std::vector<double> v(static_cast<std::size_t>(n) + 1);
    double h = (hi - lo) / n;
    for (int i = 0; i <= n; ++i) v[static_cast<std::size_t>(i)] = lo + h * (i + (i > 0 && i < n ? 0.3183 : 0.0));
    return v;
  };
  out.re = axis(region.re_lo, region.re_hi, region.nx);
  out.im = axis(region.im_lo, region.im_hi, region.ny);
  std::size_t W = out.re.size(), H = out.im.size();
  std::vector<cplx> val(W * H);
  parallel_for(W * H, [&](std::size_t k) {
    SpectralPoint p = out.base;
    p.lambda = cplx(out.re[k % W], out.im[k / W]);
    val[k] = connection_indicator(p);
  });
  out.abs_indicator.resize(val.size());
  std::transform(val.begin(), val.end(), out.abs_indicator.begin(), [](cplx z) { return std::abs(z); });

  struct Cell {
    std::size_t i, j;
    int winding;
  };
  std::vector<Cell> hits;
  for (std::size_t j = 0; j + 1 < H; ++j)
    for (std::size_t i = 0; i + 1 < W; ++i) {
      cplx z[4] = {val[j * W + i], val[j * W + i + 1], val[(j + 1) * W + i + 1], val[(j + 1) * W + i]};
      double turn = 0;
      for (int e = 0; e < 4; ++e) turn += std::arg(z[(e + 1) % 4] / z[e]);
      int w = static_cast<int>(std::lround(turn / (2 * std::numbers::pi)));
      out.total_winding += w;
      if (w != 0) hits.push_back({i, j, w});
    }

  std::vector<ScanRoot> roots(hits.size());
  parallel_for(hits.size(), [&](std::size_t k) {
    const Cell& c = hits[k];
    cplx mid((out.re[c.i] + out.re[c.i + 1]) / 2, (out.im[c.j] + out.im[c.j + 1]) / 2);
    roots[k] = refine_root(out.base, mid);
    roots[k].multiplicity = c.winding;
  });
  for (std::size_t k = 0; k < hits.size(); ++k) {
    const Cell& c = hits[k];
    const ScanRoot& r = roots[k];
    if (c.winding < 0) throw RefinementError("negative winding: indicator has a pole in the region");
    double hx = out.re[c.i + 1] - out.re[c.i], hy = out.im[c.j + 1] - out.im[c.j];
    bool inside = r.lambda.real() > out.re[c.i] - hx && r.lambda.real() < out.re[c.i + 1] + hx &&
                  r.lambda.imag() > out.im[c.j] - hy && r.lambda.imag() < out.im[c.j + 1] + hy;
    if (!inside || r.residual > 1e-8)
      throw RefinementError("Newton left the flagged cell near " + std::to_string(r.lambda.real()) + "+" +
                            std::to_string(r.lambda.imag()) + "i; refine the grid");
    if (c.winding > 1) {
      // a multiple root has a vanishing derivative; a simple one means two roots share the cell
      SpectralPoint a = out.base, b = out.base;
      double h = 1e-4;
      a.lambda = r.lambda + h;
      b.lambda = r.lambda - h;
      double slope = std::abs(connection_indicator(a) - connection_indicator(b)) / (2 * h);
      double corner = std::max({out.abs_indicator[c.j * W + c.i], out.abs_indicator[c.j * W + c.i + 1]});
      if (slope * std::hypot(hx, hy) > 1e-2 * corner)
        throw RefinementError("argument principle counts " + std::to_string(c.winding) +
                              " zeros in one cell but Newton found a simple root; refine the grid");
    }
  }
  std::sort(roots.begin(), roots.end(), [](const ScanRoot& a, const ScanRoot& b) {
    if (a.lambda.real() != b.lambda.real()) return a.lambda.real() < b.lambda.real();
    return a.lambda.imag() < b.lambda.imag();
  });
  for (std::size_t k = 1; k < roots.size(); ++k)
    if (std::abs(roots[k].lambda - roots[k - 1].lambda) < 1e-8)
      throw RefinementError("two flagged cells converged to the same root; refine the grid");
  out.roots = roots;

  if (!out.exploratory) {
    const double known[] = {0.0, 1.0, 3.0};
    for (const auto& r : out.roots) {
      double dist = 1e300;
      for (double k : known) dist = std::min(dist, std::abs(r.lambda - k));
      if (dist > 1e-6) out.spectral_gap = std::min(out.spectral_gap.value_or(1e300), dist);
    }
  }
  return out;
}

// ------------------------------------------------------------------ Gamma and the kappa spectrum

namespace {

constexpr double kLanczosG = 7;
constexpr double kLanczos[] = {0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
                               771.32342877765313,      -176.61502916214059,   12.507343278686905,
                               -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

bool nonpositive_integer(cplx z)
{
  return std::abs(z.imag()) < 1e-13 && z.real() < 0.5 && std::abs(z.real() - std::round(z.real())) < 1e-13;
}

cplx log_gamma_right(cplx z) // Re z >= 1/2
{
  z -= 1.0;
  cplx x = kLanczos[0];
  for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + double(i));
  cplx t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

} // namespace

cplx gamma_fn(cplx z)
{
  if (nonpositive_integer(z)) return {std::numeric_limits<double>::infinity(), 0};
  if (z.real() < 0.5) return std::numbers::pi / (std::sin(std::numbers::pi * z) * gamma_fn(1.0 - z));
  return std::exp(log_gamma_right(z));
}

cplx rgamma(cplx z)
{
  if (nonpositive_integer(z)) return 0;
  if (z.real() < 0.5) return std::sin(std::numbers::pi * z) * gamma_fn(1.0 - z) / std::numbers::pi;
  return std::exp(-log_gamma_right(z));
}

std::vector<double> kappa_spectrum(int d, int ell, double sigma)
{
  if (d != 7 && d != 9) throw std::invalid_argument("kappa spectrum is derived for d in {7, 9}");
  if (ell < 0) throw std::invalid_argument("ell must be >= 0");
  if (sigma < -0.5) throw std::invalid_argument("sigma must be >= -1/2");
  std::vector<double> out;
  for (int n = 0; 1 - ell - 2 * n >= sigma; ++n) out.push_back(1 - ell - 2 * n);
  std::sort(out.begin(), out.end());
  return out;
}

KappaCoefficient connection_coefficient_kappa(int d, int ell, cplx lambda)
{
  KappaCoefficient k;
  k.a = (lambda + double(ell) - 1.0) / 2.0;
  k.b = (lambda + double(ell) + 6.0) / 2.0;
  k.c = d / 2.0 + ell;
  cplx s = k.a + k.b - k.c;
  k.value = gamma_fn(k.c) * rgamma(k.a) * rgamma(k.b);
  if (nonpositive_integer(s)) k.degenerate_log = true;
  else k.value *= gamma_fn(s);
  return k;
}

cplx connection_coefficient_regular(int d, int ell, cplx lambda)
{
  cplx a = (lambda + double(ell) - 1.0) / 2.0, b = (lambda + double(ell) + 6.0) / 2.0, c = d / 2.0 + ell;
  cplx s = c - a - b;
  if (nonpositive_integer(s)) return {std::numeric_limits<double>::infinity(), 0};
  return gamma_fn(c) * gamma_fn(s) * rgamma(c - a) * rgamma(c - b);
}

} // namespace blowup
