#pragma once

#include "blowup/poly.hpp"
#include "blowup/rational.hpp"
#include "blowup/upoly.hpp"

#include <chrono>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace blowup {

enum class Verdict { pass, fail, inconclusive };

inline const char* to_string(Verdict v)
{
  switch (v) {
  case Verdict::pass: return "pass";
  case Verdict::fail: return "fail";
  default: return "inconclusive";
  }
}

struct RootWitness {
  Rational lo, hi; // isolating interval, lo == hi for an exact rational root
  double approx = 0;
};

struct CertificateReport {
  std::string lemma_id;
  std::string bound;
  Verdict verdict = Verdict::fail;
  std::string tactic; // "coefficient-nonnegativity" | "sturm-on-halfline" | "routh-hurwitz" | "symbolic"
  std::vector<int> shifts;
  Poly polynomial; // expanded, shifted certificate polynomial
  std::vector<std::pair<Exponents, Rational>> offending;
  std::optional<RootWitness> witness;
  std::size_t terms = 0;
  std::size_t max_coeff_bits = 0;
  double elapsed_ms = 0;
  std::string note;
};

// ---------------------------------------------------------------- Routh-Hurwitz

// True iff every complex root of p has strictly negative real part.
inline bool routh_hurwitz(const UPoly& p)
{
  if (p.is_zero()) throw std::invalid_argument("routh_hurwitz: zero polynomial");
  int n = p.degree();
  if (n == 0) return true;
  Rational s = p.lead() > 0 ? Rational(1) : Rational(-1);
  std::vector<Rational> r0, r1;
  for (int k = n; k >= 0; k -= 2) r0.push_back(s * p[static_cast<std::size_t>(k)]);
  for (int k = n - 1; k >= 0; k -= 2) r1.push_back(s * p[static_cast<std::size_t>(k)]);
  if (r0.front() <= 0) return false;
  for (int row = 1; row <= n; ++row) {
    if (r1.empty() || r1.front() <= 0) return false;
    std::vector<Rational> next;
    for (std::size_t i = 0; i + 1 < r0.size(); ++i) {
      Rational b = i + 1 < r1.size() ? r1[i + 1] : Rational(0);
      next.push_back((r1.front() * r0[i + 1] - r0.front() * b) / r1.front());
    }
    r0 = std::move(r1);
    r1 = std::move(next);
  }
  return true;
}

inline bool routh_hurwitz(const Poly& p)
{
  if (p.arity() != 1) throw std::invalid_argument("routh_hurwitz: polynomial must be univariate");
  return routh_hurwitz(UPoly::from_poly(p));
}

// ---------------------------------------------------------------- modulus square

// Q(.., s) with Q(.., t^2) = |P(.., i t)|^2; the variable `lambda` is renamed to `s`.
inline Poly modulus_square_split(const Poly& P, const std::string& lambda = "lambda", const std::string& s = "s")
{
  std::size_t li = P.var_index(lambda);
  Poly re(P.vars()), im(P.vars());
  for (const auto& [e, c] : P.terms()) {
    int k = e[li];
    // i^k = (-1)^(k/2) for even k, (-1)^((k-1)/2) i for odd k
    Rational sgn = ((k / 2) % 2 == 0) ? Rational(1) : Rational(-1);
    (k % 2 == 0 ? re : im).add_term(e, sgn * c);
  }
  Poly q2 = re * re + im * im; // only even powers of t remain
  std::vector<std::string> vars = P.vars();
  vars[li] = s;
  Poly Q(vars);
  for (const auto& [e, c] : q2.terms()) {
    Exponents f = e;
    f[li] = e[li] / 2;
    Q.add_term(f, c);
  }
  return Q;
}

inline GaussRational evaluate_on_axis(const Poly& P, std::span<const Rational> point, std::size_t lambda_index,
                                      const Rational& t)
{
  std::vector<GaussRational> x;
  for (std::size_t i = 0; i < point.size(); ++i)
    x.push_back(i == lambda_index ? GaussRational{0, t} : GaussRational{point[i], 0});
  GaussRational acc;
  for (const auto& [e, c] : P.terms()) {
    GaussRational term{c, 0};
    for (std::size_t i = 0; i < e.size(); ++i)
      for (int k = 0; k < e[i]; ++k) term = term * x[i];
    acc = acc + term;
  }
  return acc;
}

// ---------------------------------------------------------------- Sturm

struct Interval {
  Rational lo = 0;
  std::optional<Rational> hi; // empty = +infinity
  bool lo_closed = true;      // [lo, hi) when true, (lo, hi) otherwise
};

namespace detail {

inline std::vector<UPoly> sturm_chain(const UPoly& p)
{
  std::vector<UPoly> chain{p, p.derivative()};
  while (!chain.back().is_zero() && chain.back().degree() > 0) {
    auto r = UPoly::divmod(chain[chain.size() - 2], chain.back()).second;
    if (r.is_zero()) break;
    chain.push_back(-r);
  }
  if (chain.back().is_zero()) chain.pop_back();
  return chain;
}

inline int sign_changes(const std::vector<int>& signs)
{
  int changes = 0, last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

inline int variations_at(const std::vector<UPoly>& chain, const Rational& x)
{
  std::vector<int> s;
  for (const auto& q : chain) s.push_back(sgn(q(x)));
  return sign_changes(s);
}

inline int variations_at_infinity(const std::vector<UPoly>& chain)
{
  std::vector<int> s;
  for (const auto& q : chain) s.push_back(sgn(q.lead()));
  return sign_changes(s);
}

} // namespace detail

// Number of distinct real roots in the interval.
inline int sturm_count(const UPoly& p, const Interval& iv)
{
  if (p.is_zero()) throw std::invalid_argument("sturm_count: zero polynomial");
  if (iv.hi && *iv.hi <= iv.lo) return 0;
  UPoly q = p.squarefree_part();
  if (q.degree() < 1) return 0;
  auto chain = detail::sturm_chain(q);
  int vlo = detail::variations_at(chain, iv.lo);
  int vhi = iv.hi ? detail::variations_at(chain, *iv.hi) : detail::variations_at_infinity(chain);
  int count = vlo - vhi; // roots in (lo, hi]
  if (iv.hi && q(*iv.hi) == 0) --count;
  if (iv.lo_closed && q(iv.lo) == 0) ++count;
  return count;
}

// Isolate the smallest root of p in (lo, inf) to width `width`.
inline std::optional<RootWitness> isolate_root(const UPoly& p, const Rational& lo, const Rational& width)
{
  UPoly q = p.squarefree_part();
  if (sturm_count(q, {lo, std::nullopt, false}) == 0) return std::nullopt;
  Rational hi = lo + 1;
  while (sturm_count(q, {lo, hi, false}) + (q(hi) == 0 ? 1 : 0) == 0) hi *= 2;
  if (q(hi) == 0 && sturm_count(q, {lo, hi, false}) == 0) return RootWitness{hi, hi, hi.get_d()};
  Rational a = lo, b = hi;
  while (b - a > width) {
    Rational m = (a + b) / 2;
    if (q(m) == 0 && sturm_count(q, {a, m, false}) == 0) return RootWitness{m, m, m.get_d()};
    if (sturm_count(q, {a, m, false}) > 0) b = m;
    else a = m;
  }
  Rational mid = (a + b) / 2;
  return RootWitness{a, b, mid.get_d()};
}

// ---------------------------------------------------------------- nonnegativity

inline std::size_t coeff_bits(const Poly& p)
{
  std::size_t bits = 0;
  for (const auto& [e, c] : p.terms())
    bits = std::max(bits, mpz_sizeinbase(c.get_num_mpz_t(), 2) + mpz_sizeinbase(c.get_den_mpz_t(), 2));
  return bits;
}

// p >= 0 on [shift_0, inf) x [shift_1, inf) x ...; strict adds p > 0.
inline CertificateReport certify_nonneg(const Poly& p, std::vector<int> shifts = {}, bool strict = false)
{
  auto t0 = std::chrono::steady_clock::now();
  CertificateReport rep;
  shifts.resize(p.arity(), 0);
  rep.shifts = shifts;
  Poly q = p;
  for (std::size_t i = 0; i < p.arity(); ++i) q = q.shift(i, shifts[i]);
  rep.polynomial = q;
  rep.terms = q.size();
  rep.max_coeff_bits = coeff_bits(q);

  auto done = [&](Verdict v, std::string tactic) {
    rep.verdict = v;
    rep.tactic = std::move(tactic);
    rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
  };

  rep.offending = q.negative_terms();
  bool constant_positive = q.coeff(Exponents(q.arity(), 0)) > 0;
  if (rep.offending.empty() && (!strict || constant_positive)) return done(Verdict::pass, "coefficient-nonnegativity");

  // Sturm fallback for univariate sections
  int live = -1, nvars = 0;
  for (std::size_t i = 0; i < q.arity(); ++i)
    if (q.degree(i) > 0) {
      live = static_cast<int>(i);
      ++nvars;
    }
  if (nvars <= 1) {
    UPoly u = nvars == 0 ? UPoly{q.coeff(Exponents(q.arity(), 0))} : UPoly::from_poly(q, static_cast<std::size_t>(live));
    if (u.is_zero()) return done(strict ? Verdict::fail : Verdict::pass, "sturm-on-halfline");
    int roots = u.degree() > 0 ? sturm_count(u, {Rational(0), std::nullopt, false}) : 0;
    // without roots in (0, inf) the sign there is that of u(1)
    if (roots == 0 && u(Rational(1)) > 0 && (!strict || u(Rational(0)) > 0) && u(Rational(0)) >= 0) {
      rep.offending.clear();
      return done(Verdict::pass, "sturm-on-halfline");
    }
    // witness: the first sign change on (0, inf), else the origin
    if (roots > 0) rep.witness = isolate_root(u, Rational(0), Rational(1, 1000000));
    else rep.witness = RootWitness{0, 0, 0.0};
    return done(Verdict::fail, "sturm-on-halfline");
  }
  return done(Verdict::fail, "coefficient-nonnegativity");
}

// f(p) > 0 for every real p >= shift
inline bool ratfun_positive(const RatFun& f, int shift)
{
  if (f.is_zero()) return false;
  Poly num = f.num.to_poly("p"), den = f.den.to_poly("p");
  auto pos = [&](const Poly& q) { return certify_nonneg(q, {shift}, true).verdict == Verdict::pass; };
  return (pos(num) && pos(den)) || (pos(-num) && pos(-den));
}

// Routh table in `lambda` with coefficients rational in the parameter; stability is
// certified for every parameter value >= shift.  Vars of P: {param, lambda}.
inline CertificateReport routh_hurwitz_parametric(const Poly& P, int shift)
{
  auto t0 = std::chrono::steady_clock::now();
  if (P.arity() != 2) throw std::invalid_argument("routh_hurwitz_parametric: expected variables {param, lambda}");
  CertificateReport rep;
  rep.tactic = "routh-hurwitz";
  rep.shifts = {shift, 0};
  rep.polynomial = P;
  rep.terms = P.size();
  rep.max_coeff_bits = coeff_bits(P);
  int n = P.degree(1);
  std::vector<RatFun> c(static_cast<std::size_t>(n + 1));
  for (const auto& [e, k] : P.terms()) {
    std::vector<Rational> coeffs(static_cast<std::size_t>(e[0]) + 1);
    coeffs.back() = k;
    c[static_cast<std::size_t>(e[1])] = c[static_cast<std::size_t>(e[1])] + RatFun(UPoly(coeffs), UPoly{Rational(1)});
  }
  auto finish = [&](Verdict v, std::string note) {
    rep.verdict = v;
    rep.note = std::move(note);
    rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
  };
  RatFun sgn(Rational(1));
  if (!ratfun_positive(c[static_cast<std::size_t>(n)], shift)) {
    if (!ratfun_positive(RatFun(Rational(-1)) * c[static_cast<std::size_t>(n)], shift))
      return finish(Verdict::fail, "leading coefficient changes sign");
    sgn = RatFun(Rational(-1));
  }
  std::vector<RatFun> r0, r1;
  for (int k = n; k >= 0; k -= 2) r0.push_back(sgn * c[static_cast<std::size_t>(k)]);
  for (int k = n - 1; k >= 0; k -= 2) r1.push_back(sgn * c[static_cast<std::size_t>(k)]);
  for (int row = 1; row <= n; ++row) {
    if (r1.empty() || !ratfun_positive(r1.front(), shift))
      return finish(Verdict::fail, "first-column entry " + std::to_string(row) + " not certified positive");
    std::vector<RatFun> next;
    for (std::size_t i = 0; i + 1 < r0.size(); ++i) {
      RatFun b = i + 1 < r1.size() ? r1[i + 1] : RatFun(Rational(0));
      next.push_back((r1.front() * r0[i + 1] - r0.front() * b) / r1.front());
    }
    r0 = std::move(r1);
    r1 = std::move(next);
  }
  return finish(Verdict::pass, "all " + std::to_string(n + 1) + " first-column entries positive");
}

} // namespace blowup
