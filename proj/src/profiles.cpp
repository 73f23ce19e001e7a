#include "blowup/profiles.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

namespace blowup {

ProfileConstants profile_constants(int d)
{
  if (d < 7) throw std::domain_error("profile constants need d >= 7 (c3 <= 0 otherwise)");
  ProfileConstants pc;
  pc.d = d;
  Integer disc = 6 * (d - 1) * (d - 6);
  long double d0f = std::sqrt(static_cast<long double>(disc.get_si()));
  pc.d0f = d0f;
  pc.c1f = 4.0L / 25 * ((3 * d - 8) * d0f + 8.0L * d * d - 56.0L * d + 48);
  pc.c2f = 4.0L / 5 * d0f;
  pc.c3f = (3.0L * d - 18 + d0f) / 15;
  pc.exact = mpz_perfect_square_p(disc.get_mpz_t()) != 0;
  if (pc.exact) {
    Integer root;
    mpz_sqrt(root.get_mpz_t(), disc.get_mpz_t());
    pc.d0 = Rational(root);
    pc.c1 = Rational(4, 25) * ((3 * d - 8) * pc.d0 + 8 * d * d - 56 * d + 48);
    pc.c2 = Rational(4, 5) * pc.d0;
    pc.c3 = (3 * d - 18 + pc.d0) / 15;
    for (Rational* r : {&pc.c1, &pc.c2, &pc.c3}) r->canonicalize();
    pc.d0f = to_long_double(pc.d0);
    pc.c1f = to_long_double(pc.c1);
    pc.c2f = to_long_double(pc.c2);
    pc.c3f = to_long_double(pc.c3);
  }
  return pc;
}

Boost<Rational> boost_from_tanh_half(const std::vector<Rational>& m)
{
  std::vector<Rational> c, s;
  for (const auto& x : m) {
    if (!(x > -1 && x < 1)) throw std::domain_error("tanh(a/2) must lie in (-1, 1)");
    Rational q = 1 - x * x;
    c.push_back((1 + x * x) / q);
    s.push_back(2 * x / q);
  }
  return Boost<Rational>::from_cosh_sinh(std::move(c), std::move(s));
}

namespace {

// orthonormal pair (boost direction, a perpendicular direction)
std::pair<std::vector<double>, std::vector<double>> boost_frame(const Boost<double>& b)
{
  int d = b.d;
  std::vector<double> e(d, 0.0), p(d, 0.0);
  double n = 0;
  for (double a : b.A) n += a * a;
  n = std::sqrt(n);
  if (n > 0)
    for (int i = 0; i < d; ++i) e[i] = b.A[i] / n;
  else e[0] = 1;
  int k = std::abs(e[0]) < 0.9 ? 0 : 1;
  p[k] = 1;
  double dot = e[k];
  double pn = 0;
  for (int i = 0; i < d; ++i) {
    p[i] -= dot * e[i];
    pn += p[i] * p[i];
  }
  for (double& x : p) x /= std::sqrt(pn);
  return {e, p};
}

std::vector<double> point_at(const std::vector<double>& e, const std::vector<double>& p, double r, double c)
{
  double s = std::sqrt(std::max(0.0, 1 - c * c));
  std::vector<double> x(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) x[i] = r * (c * e[i] + s * p[i]);
  return x;
}

} // namespace

PositivityResult positivity_on_ball(const Family<double>& f, int resolution)
{
  if (f.kind != FamilyKind::u_star) throw std::invalid_argument("positivity_on_ball expects the u-star family");
  if (resolution < 2) throw std::invalid_argument("resolution must be at least 2");
  auto [e, p] = boost_frame(f.boost);
  int R = resolution;
  std::vector<double> vals(static_cast<std::size_t>((R + 1) * (R + 1)));
  auto at = [&](int i, int j) -> double& { return vals[static_cast<std::size_t>(i * (R + 1) + j)]; };
  PositivityResult out;
  out.min = 1e300;
  for (int i = 0; i <= R; ++i)
    for (int j = 0; j <= R; ++j) {
      double r = double(i) / R, c = -1 + 2.0 * j / R;
      auto x = point_at(e, p, r, c);
      double v = profile_value<double>(f, std::span<const double>(x));
      at(i, j) = v;
      if (v < out.min) {
        out.min = v;
        out.argmin_r = r;
        out.argmin_cos = c;
      }
    }
  double hr = 1.0 / R, hc = 2.0 / R, Lr = 0, Lc = 0;
  for (int i = 0; i <= R; ++i)
    for (int j = 0; j <= R; ++j) {
      if (i < R) Lr = std::max(Lr, std::abs(at(i + 1, j) - at(i, j)) / hr);
      if (j < R) Lc = std::max(Lc, std::abs(at(i, j + 1) - at(i, j)) / hc);
    }
  // doubled difference quotients stand in for the Lipschitz constants
  out.slack = (2 * Lr * hr + 2 * Lc * hc) / 2;
  out.verdict = out.min - out.slack > 0 ? "pass" : "inconclusive";
  return out;
}

double sobolev_scaling_exponent(const Family<double>& f, int k)
{
  if (k != 1 && k != 2) throw std::invalid_argument("scaling exponents are implemented for k = 1, 2");
  auto [e, p] = boost_frame(f.boost);
  int d = f.d;
  using J = Jet2<double>;
  auto seminorm2 = [&, &e = e, &p = p](double s) {
    auto integrand = [&](double r, double c) {
      auto x = point_at(e, p, r, c);
      auto second = [&](const std::vector<double>& dir) {
        std::vector<J> xj;
        for (int i = 0; i < d; ++i) xj.push_back(J::variable(x[i] / s, dir[i] / s));
        return profile_value<J>(f, std::span<const J>(xj));
      };
      double acc = 0;
      std::vector<double> dir(d, 0.0);
      std::vector<double> diag(d);
      for (int i = 0; i < d; ++i) {
        std::fill(dir.begin(), dir.end(), 0.0);
        dir[i] = 1;
        J v = second(dir);
        if (k == 1) acc += v.d1 * v.d1;
        diag[i] = v.d2;
      }
      if (k == 2) {
        for (int i = 0; i < d; ++i) acc += diag[i] * diag[i];
        for (int i = 0; i < d; ++i)
          for (int j = i + 1; j < d; ++j) {
            std::fill(dir.begin(), dir.end(), 0.0);
            dir[i] = dir[j] = 1;
            double mixed = (second(dir).d2 - diag[i] - diag[j]) / 2;
            acc += 2 * mixed * mixed;
          }
      }
      return acc * std::pow(r, d - 1) * std::pow(std::sqrt(std::max(0.0, 1 - c * c)), d - 3);
    };
    using boost::math::quadrature::gauss;
    return gauss<double, 20>::integrate(
        [&](double r) { return gauss<double, 20>::integrate([&](double c) { return integrand(r, c); }, -1.0, 1.0); },
        0.0, s);
  };
  std::array<double, 4> ss{0.25, 0.5, 1.0, 2.0};
  double mx = 0, my = 0, sxx = 0, sxy = 0;
  for (double s : ss) {
    double lx = std::log(s), ly = 0.5 * std::log(seminorm2(s));
    mx += lx;
    my += ly;
  }
  mx /= ss.size();
  my /= ss.size();
  for (double s : ss) {
    double lx = std::log(s) - mx, ly = 0.5 * std::log(seminorm2(s)) - my;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return sxy / sxx;
}

EigenField parse_mode(const std::string& label)
{
  if (label == "h") return {'h', 0, 3};
  if (label.size() == 2 && (label[0] == 'g' || label[0] == 'q') && label[1] >= '0' && label[1] <= '9') {
    int i = label[1] - '0';
    if (label[0] == 'g') return {'g', i, 1};
    if (i >= 1) return {'q', i, 0};
  }
  throw std::invalid_argument("unknown mode label: " + label);
}

} // namespace blowup
