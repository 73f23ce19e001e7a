#pragma once

#include "blowup/jet.hpp"
#include "blowup/rational.hpp"

#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace blowup {

// ------------------------------------------------------------------ constants

struct ProfileConstants {
  int d = 9;
  bool exact = true; // d0 rational
  Rational d0, c1, c2, c3;
  long double d0f = 0, c1f = 0, c2f = 0, c3f = 0;
};

template <class S>
struct Consts {
  S d0, c1, c2, c3;
};

ProfileConstants profile_constants(int d);

template <class S>
Consts<S> constants_as(const ProfileConstants& pc)
{
  if constexpr (std::is_same_v<S, Rational>) {
    if (!pc.exact) throw std::domain_error("d = " + std::to_string(pc.d) + " has irrational d0; use a float mode");
    return {pc.d0, pc.c1, pc.c2, pc.c3};
  } else {
    return {S(pc.d0f), S(pc.c1f), S(pc.c2f), S(pc.c3f)};
  }
}

// rho*^2 = c1/c2, the zero of the radial profile
template <class S>
S rho_star_squared(const Consts<S>& c)
{
  return S(c.c1 / c.c2);
}

// ------------------------------------------------------------------ boosts

template <class S>
struct Boost {
  int d = 0;
  std::vector<S> ch, sh; // cosh a^i, sinh a^i
  S A0;
  std::vector<S> A;                // A_j
  std::vector<S> dA0;              // d A0 / d a^k
  std::vector<std::vector<S>> dA;  // dA[k][j] = d A_j / d a^k

  static Boost from_cosh_sinh(std::vector<S> c, std::vector<S> s)
  {
    Boost b;
    b.d = static_cast<int>(c.size());
    b.ch = std::move(c);
    b.sh = std::move(s);
    std::size_t n = b.ch.size();
    auto prod_ch = [&](std::size_t from, std::size_t skip) {
      S p(1);
      for (std::size_t i = from; i < n; ++i)
        if (i != skip) p = S(p * b.ch[i]);
      return p;
    };
    b.A0 = prod_ch(0, n);
    b.A.resize(n);
    for (std::size_t j = 0; j < n; ++j) b.A[j] = S(b.sh[j] * prod_ch(j + 1, n));
    b.dA0.resize(n);
    b.dA.assign(n, std::vector<S>(n, S(0)));
    for (std::size_t k = 0; k < n; ++k) {
      b.dA0[k] = S(b.sh[k] * prod_ch(0, k));
      for (std::size_t j = 0; j < n; ++j) {
        if (k == j) b.dA[k][j] = S(b.ch[j] * prod_ch(j + 1, n));
        else if (k > j) b.dA[k][j] = S(b.sh[j] * b.sh[k] * prod_ch(j + 1, k));
      }
    }
    return b;
  }

  static Boost identity(int d) { return from_cosh_sinh(std::vector<S>(d, S(1)), std::vector<S>(d, S(0))); }

  bool is_identity() const
  {
    for (const auto& s : sh)
      if (s != 0) return false;
    return true;
  }

  // A0^2 - sum A_j^2, identically 1
  S normalization() const
  {
    S acc = S(A0 * A0);
    for (const auto& a : A) acc = S(acc - a * a);
    return acc;
  }
};

// exact boost from m_i = tanh(a^i/2) in (-1, 1)
Boost<Rational> boost_from_tanh_half(const std::vector<Rational>& m);

template <class S>
Boost<S> boost_from_angles(const std::vector<double>& a)
{
  std::vector<S> c, s;
  for (double x : a) {
    c.push_back(S(std::cosh(static_cast<long double>(x))));
    s.push_back(S(std::sinh(static_cast<long double>(x))));
  }
  return Boost<S>::from_cosh_sinh(std::move(c), std::move(s));
}

// Lorentz transform of (s, y) = (T - t, x - x0): successive boosts in the (s, y_j) planes
template <class S>
std::pair<S, std::vector<S>> lorentz(const Boost<S>& b, const S& s, std::vector<S> y)
{
  S sp = s;
  for (int j = 0; j < b.d; ++j) {
    S ns = S(b.ch[j] * sp + b.sh[j] * y[j]);
    S ny = S(b.sh[j] * sp + b.ch[j] * y[j]);
    sp = ns;
    y[j] = ny;
  }
  return {sp, std::move(y)};
}

// ------------------------------------------------------------------ families

enum class FamilyKind { u_star, ode_kappa };

inline FamilyKind parse_family_kind(const std::string& s)
{
  if (s == "u-star" || s == "ustar") return FamilyKind::u_star;
  if (s == "kappa" || s == "ode-kappa") return FamilyKind::ode_kappa;
  throw std::invalid_argument("unknown family: " + s);
}

inline const char* to_string(FamilyKind k) { return k == FamilyKind::u_star ? "u-star" : "ode-kappa"; }

template <class S>
struct Family {
  FamilyKind kind = FamilyKind::u_star;
  int d = 9;
  Consts<S> c;
  Boost<S> boost;
  S T = S(1);
  std::vector<S> x0;
};

template <class S>
Family<S> make_family(FamilyKind kind, int d, std::optional<Boost<S>> boost = std::nullopt)
{
  Family<S> f;
  f.kind = kind;
  f.d = d;
  f.c = constants_as<S>(profile_constants(d));
  f.boost = boost ? *boost : Boost<S>::identity(d);
  if (f.boost.d != d) throw std::invalid_argument("boost dimension mismatch");
  f.x0.assign(static_cast<std::size_t>(d), S(0));
  return f;
}

struct PoleError : std::domain_error {
  using std::domain_error::domain_error;
};

template <class J, class S>
J gamma_of(const Boost<S>& b, std::span<const J> xi)
{
  J g(b.A0);
  for (int j = 0; j < b.d; ++j) g = g - J(b.A[j]) * xi[j];
  return g;
}

template <class J, class S>
J dgamma_of(const Boost<S>& b, int k, std::span<const J> xi)
{
  J g(b.dA0[k]);
  for (int j = 0; j < b.d; ++j) g = g - J(b.dA[k][j]) * xi[j];
  return g;
}

template <class J>
J norm2_of(std::span<const J> xi)
{
  J r(0);
  for (const auto& x : xi) r = r + x * x;
  return r;
}

template <class J>
bool value_is_zero(const J& x)
{
  if constexpr (is_jet<J>::value) return value_is_zero(x.v);
  else return x == 0;
}

template <class J>
const auto& base_value(const J& x)
{
  if constexpr (is_jet<J>::value) return base_value(x.v);
  else return x;
}

// U_a(xi) or kappa_a(xi)
template <class J, class S>
J profile_value(const Family<S>& f, std::span<const J> xi)
{
  J g = gamma_of<J>(f.boost, xi);
  J r2 = norm2_of(xi);
  if (f.kind == FamilyKind::ode_kappa) {
    if (value_is_zero(g)) throw PoleError("kappa_a: gamma vanishes");
    return J(6) / (g * g);
  }
  const auto& c = f.c;
  J num = J(S(c.c1 - c.c2)) * g * g + J(c.c2) * (J(1) - r2);
  J den = J(S(1 + c.c3)) * g * g + r2 - J(1);
  if (value_is_zero(den)) throw PoleError("U_a: denominator vanishes");
  return num / (den * den);
}

// d U_a / d a^k, analytic in gamma
template <class J, class S>
J profile_boost_derivative(const Family<S>& f, int k, std::span<const J> xi)
{
  J g = gamma_of<J>(f.boost, xi);
  J dg = dgamma_of<J>(f.boost, k, xi);
  J r2 = norm2_of(xi);
  if (f.kind == FamilyKind::ode_kappa) return J(-12) * dg / (g * g * g);
  const auto& c = f.c;
  J num = J(S(c.c1 - c.c2)) * g * g + J(c.c2) * (J(1) - r2);
  J den = J(S(1 + c.c3)) * g * g + r2 - J(1);
  J top = J(S(2 * (c.c1 - c.c2))) * g * den - J(S(4 * (1 + c.c3))) * g * num;
  return dg * top / (den * den * den);
}

template <class S>
S eval_profile(const Family<S>& f, std::span<const S> xi)
{
  if (static_cast<int>(xi.size()) != f.d) throw std::invalid_argument("point dimension mismatch");
  return profile_value<S>(f, xi);
}

// u(t, x) = (T - t)^{-2} profile((x - x0)/(T - t))
template <class J, class S>
J physical_value(const Family<S>& f, const J& t, std::span<const J> x)
{
  J s = J(f.T) - t;
  J is = J(1) / s;
  std::vector<J> xi;
  xi.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) xi.push_back((x[i] - J(f.x0[i])) * is);
  return is * is * profile_value<J>(f, std::span<const J>(xi));
}

// u_tt - Lap u - u^2 via second-order jets
template <class S>
S pde_residual(const Family<S>& f, const S& t, std::span<const S> x)
{
  if (static_cast<int>(x.size()) != f.d) throw std::invalid_argument("point dimension mismatch");
  S s = S(f.T - t);
  S r2(0);
  for (int i = 0; i < f.d; ++i) r2 = S(r2 + (x[i] - f.x0[i]) * (x[i] - f.x0[i]));
  if (!(s > 0) || !(r2 < s * s)) throw std::domain_error("point outside the backward light cone");
  using J = Jet2<S>;
  std::vector<J> xj(x.begin(), x.end());
  J ut = physical_value<J>(f, J::variable(t, S(1)), std::span<const J>(xj));
  S lap(0);
  for (int i = 0; i < f.d; ++i) {
    std::vector<J> xi(x.begin(), x.end());
    xi[i] = J::variable(x[i], S(1));
    lap = S(lap + physical_value<J>(f, J(t), std::span<const J>(xi)).d2);
  }
  return S(ut.d2 - lap - ut.v * ut.v);
}

// ------------------------------------------------------------------ positivity

struct PositivityResult {
  double min = 0;
  double argmin_r = 0, argmin_cos = 0; // |xi| and cosine to the boost direction
  double slack = 0;
  std::string verdict; // "pass" | "inconclusive"
};

PositivityResult positivity_on_ball(const Family<double>& f, int resolution);

// exponent of the homogeneous H^k seminorm of U_a(./s) on the ball of radius s
double sobolev_scaling_exponent(const Family<double>& f, int k);

// ------------------------------------------------------------------ eigenfields (d = 9)

struct EigenField {
  char kind = 'h'; // 'h', 'g', 'q'
  int index = 0;   // g: 0..9, q: 1..9
  int lambda = 3;
  std::string label() const { return kind == 'h' ? "h" : std::string(1, kind) + std::to_string(index); }
};

EigenField parse_mode(const std::string& label);

template <class J, class S>
J eigen_first(const EigenField& m, const Family<S>& f, std::span<const J> xi)
{
  if (f.d != 9 || f.kind != FamilyKind::u_star) throw std::invalid_argument("eigenfields are defined for the d = 9 u-star family");
  if (m.kind == 'q') return profile_boost_derivative<J>(f, m.index - 1, xi);
  J g = gamma_of<J>(f.boost, xi);
  J r2 = norm2_of(xi);
  J F = J(12) * g * g + J(5) * r2 - J(5);
  J F3 = F * F * F;
  if (m.kind == 'h') return g / F3;
  if (m.index == 0) return (r2 - J(1)) * g / F3;
  return (J(72) * g * g + J(5) - J(5) * r2) * dgamma_of<J>(f.boost, m.index - 1, xi) / F3;
}

// Lambda u = xi . grad u via a jet along xi itself
template <class J, class Fn>
J euler_derivative(Fn&& fn, std::span<const J> xi)
{
  using JJ = Jet2<J>;
  std::vector<JJ> p;
  for (const auto& x : xi) p.push_back(JJ::variable(x, x));
  return fn(std::span<const JJ>(p)).d1;
}

template <class J, class S>
J eigen_second(const EigenField& m, const Family<S>& f, std::span<const J> xi)
{
  using JJ = Jet2<J>;
  std::vector<JJ> p;
  for (const auto& x : xi) p.push_back(JJ::variable(x, x));
  JJ u = eigen_first<JJ>(m, f, std::span<const JJ>(p));
  return u.d1 + J(m.lambda + 2) * u.v;
}

struct EigenResidual {
  double max_abs = 0;
  bool exact_zero = false; // exact mode and every residual vanished identically
  int points = 0;
};

// residual of (lambda - L - L'_a)u at xi, both components
template <class S>
std::pair<S, S> eigen_residual_at(const EigenField& m, const Family<S>& f, std::span<const S> xi)
{
  using J = Jet2<S>;
  std::vector<J> p;
  for (const auto& x : xi) p.push_back(J::variable(x, x));
  J u1 = eigen_first<J>(m, f, std::span<const J>(p));
  J u2 = eigen_second<J>(m, f, std::span<const J>(p));
  S lam(m.lambda);
  S lap(0);
  for (int i = 0; i < f.d; ++i) {
    std::vector<J> q(xi.begin(), xi.end());
    q[i] = J::variable(xi[i], S(1));
    lap = S(lap + eigen_first<J>(m, f, std::span<const J>(q)).d2);
  }
  S V = S(2 * profile_value<S>(f, xi));
  S r1 = S(lam * u1.v + u1.d1 + 2 * u1.v - u2.v);
  S r2 = S(lam * u2.v + u2.d1 + 3 * u2.v - lap - V * u1.v);
  return {r1, r2};
}

// deterministic test grid inside the unit ball (rational coordinates, |xi|^2 <= 0.81)
template <class S>
std::vector<std::vector<S>> ball_test_grid(int d, int count)
{
  std::vector<std::vector<S>> pts;
  pts.push_back(std::vector<S>(static_cast<std::size_t>(d), S(0)));
  unsigned long state = 12345;
  for (int n = 1; n < count; ++n) {
    std::vector<S> p;
    for (int i = 0; i < d; ++i) {
      state = state * 6364136223846793005UL + 1442695040888963407UL;
      long k = static_cast<long>((state >> 33) % 7) - 3;
      if constexpr (std::is_same_v<S, Rational>) p.push_back(make_rational(k, 10));
      else p.push_back(S(k) / S(10));
    }
    pts.push_back(std::move(p));
  }
  return pts;
}

template <class S>
EigenResidual eigen_residual(const EigenField& m, const Family<S>& f, int count = 40)
{
  EigenResidual out;
  out.exact_zero = std::is_same_v<S, Rational>;
  for (const auto& xi : ball_test_grid<S>(f.d, count)) {
    auto [r1, r2] = eigen_residual_at<S>(m, f, std::span<const S>(xi));
    double a = std::max(std::abs(to_double_any(r1)), std::abs(to_double_any(r2)));
    out.max_abs = std::max(out.max_abs, a);
    if constexpr (std::is_same_v<S, Rational>) out.exact_zero = out.exact_zero && r1 == 0 && r2 == 0;
    ++out.points;
  }
  return out;
}

} // namespace blowup
