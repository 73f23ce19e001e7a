#include "blowup/norms.hpp"

#include "blowup/parallel.hpp"

#include <functional>
#include <numeric>
#include <stdexcept>

namespace blowup {

namespace {

void check_dim(int d)
{
  if (d < 2) throw std::invalid_argument("moments need d >= 2");
}

// multi-indices beta <= bound with |beta| = order
void sub_indices(const Exponents& bound, int order, std::size_t pos, Exponents& cur,
                 const std::function<void(const Exponents&)>& emit)
{
  if (pos == bound.size()) {
    if (order == 0) emit(cur);
    return;
  }
  for (int b = 0; b <= std::min(bound[pos], order); ++b) {
    cur[pos] = b;
    sub_indices(bound, order - b, pos + 1, cur, emit);
  }
  cur[pos] = 0;
}

Integer falling(int n, int k)
{
  Integer r = 1;
  for (int i = 0; i < k; ++i) r *= n - i;
  return r;
}

Integer factorial(int n) { return falling(n, n); }

} // namespace

Rational monomial_moment(Domain dom, int d, const Exponents& alpha)
{
  check_dim(d);
  if (static_cast<int>(alpha.size()) != d) throw std::invalid_argument("multi-index arity must equal d");
  Integer num = 1, den = 1;
  int total = 0;
  for (int a : alpha) {
    if (a < 0) throw std::invalid_argument("negative exponent");
    if (a % 2) return 0;
    for (int m = a - 1; m > 1; m -= 2) num *= m;
    total += a;
  }
  // mean of omega^alpha over the sphere: prod (a_i - 1)!! / (d (d+2) ... (d + |alpha| - 2))
  for (int j = 0; j < total / 2; ++j) den *= d + 2 * j;
  if (dom == Domain::ball) den *= d + total;
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational integrate_poly(Domain dom, int d, const Poly& p)
{
  Rational s = 0;
  for (const auto& [e, c] : p.terms()) s += c * monomial_moment(dom, d, e);
  return s;
}

std::vector<std::string> xi_vars(int d)
{
  std::vector<std::string> v;
  for (int i = 1; i <= d; ++i) v.push_back("x" + std::to_string(i));
  return v;
}

PolyField make_field(int d, const Poly& u1, const Poly& u2)
{
  check_dim(d);
  if (static_cast<int>(u1.arity()) != d || static_cast<int>(u2.arity()) != d)
    throw std::invalid_argument("field arity does not match d = " + std::to_string(d));
  return {d, u1, u2};
}

PolyField make_field(int d, const Rational& c1, const Rational& c2)
{
  return make_field(d, Poly::constant(xi_vars(d), c1), Poly::constant(xi_vars(d), c2));
}

Rational contract(const Poly& p, const Poly& q, int order, Domain dom, int d)
{
  // sum_{i_1..i_n} d_{i..} p d_{i..} q = sum_{|beta| = n} n!/beta! d^beta p d^beta q, expanded monomial-wise
  Rational total = 0;
  Integer nfact = factorial(order);
  Exponents cur(d, 0), bound(d), gamma(d);
  for (const auto& [a, ca] : p.terms())
    for (const auto& [b, cb] : q.terms()) {
      for (int i = 0; i < d; ++i) bound[i] = std::min(a[i], b[i]);
      if (std::accumulate(bound.begin(), bound.end(), 0) < order) continue;
      sub_indices(bound, order, 0, cur, [&](const Exponents& beta) {
        Integer w = nfact;
        Integer fa = 1, fb = 1, bf = 1;
        for (int i = 0; i < d; ++i) {
          bf *= factorial(beta[i]);
          fa *= falling(a[i], beta[i]);
          fb *= falling(b[i], beta[i]);
          gamma[i] = a[i] + b[i] - 2 * beta[i];
        }
        Rational m = monomial_moment(dom, d, gamma);
        if (m == 0) return;
        Rational coeff(w * fa * fb, bf);
        total += coeff * ca * cb * m;
      });
    }
  total.canonicalize();
  return total;
}

Poly laplacian(const Poly& p)
{
  Poly out(p.vars());
  for (std::size_t i = 0; i < p.arity(); ++i) out += p.derivative(i).derivative(i);
  return out;
}

Poly euler(const Poly& p)
{
  Poly out(p.vars());
  for (const auto& [e, c] : p.terms()) out.add_term(e, c * std::accumulate(e.begin(), e.end(), 0));
  return out;
}

PolyField apply_Ltilde(const PolyField& u)
{
  PolyField out{u.d, Poly(u.u1.vars()), Poly(u.u2.vars())};
  out.u1 = -euler(u.u1) - Rational(2) * u.u1 + u.u2;
  out.u2 = laplacian(u.u1) - euler(u.u2) - Rational(3) * u.u2;
  return out;
}

Rational hk_part(const PolyField& u, const PolyField& v, int j)
{
  if (u.d != v.d) throw std::invalid_argument("fields of different dimension");
  const int d = u.d;
  const auto S = Domain::sphere, B = Domain::ball;
  switch (j) {
  case 1:
    return contract(u.u1, v.u1, 1, S, d) + contract(u.u1, v.u1, 0, S, d) + contract(u.u2, v.u2, 0, S, d);
  case 2:
    return contract(laplacian(u.u1), laplacian(v.u1), 1, B, d) + contract(u.u2, v.u2, 2, B, d) +
           contract(u.u2, v.u2, 1, S, d);
  case 3:
    return Rational(4) *
           (contract(u.u1, v.u1, 3, B, d) + contract(u.u2, v.u2, 2, B, d) + contract(u.u1, v.u1, 2, S, d));
  default:
    if (j < 1) throw std::invalid_argument("inner product parts start at j = 1");
    return contract(u.u1, v.u1, j, B, d) + contract(u.u2, v.u2, j - 1, B, d);
  }
}

Rational hk_inner(const PolyField& u, const PolyField& v, int k)
{
  if (k < 3) throw std::invalid_argument("adapted inner product needs k >= 3");
  Rational s = 0;
  for (int j = 1; j <= k; ++j) s += hk_part(u, v, j);
  return s;
}

Rational standard_norm2(const PolyField& u, int k)
{
  Rational s = 0;
  for (int j = 0; j <= k; ++j) s += contract(u.u1, u.u1, j, Domain::ball, u.d);
  for (int j = 0; j < k; ++j) s += contract(u.u2, u.u2, j, Domain::ball, u.d);
  return s;
}

Rational dissipativity_constant(int d)
{
  if (d == 9) return Rational(1, 2);
  if (d == 7) return Rational(3, 2);
  // outside the covered dimensions the weakest constant is used
  return Rational(1, 2);
}

GapResult dissipativity_gap(const PolyField& u, int k)
{
  GapResult r;
  r.c = dissipativity_constant(u.d);
  r.exploratory = !(u.d == 7 || u.d == 9) || k < 3 || k > 5;
  r.inner = hk_inner(apply_Ltilde(u), u, k);
  r.norm2 = hk_inner(u, u, k);
  r.gap = r.inner + r.c * r.norm2;
  return r;
}

Rational norm_equivalence_ratio(const PolyField& u, int k)
{
  if (u.u1.is_zero() && u.u2.is_zero()) throw std::domain_error("norm ratio undefined for the zero field");
  return hk_inner(u, u, k) / standard_norm2(u, k);
}

PolyField random_field(int d, int max_degree, std::mt19937_64& rng, int terms)
{
  auto vars = xi_vars(d);
  std::uniform_int_distribution<int> nterms(1, terms), deg(0, max_degree), var(0, d - 1), num(-9, 9), den(1, 6);
  auto component = [&] {
    Poly p(vars);
    int n = nterms(rng);
    for (int t = 0; t < n; ++t) {
      Exponents e(d, 0);
      int total = deg(rng);
      for (int i = 0; i < total; ++i) ++e[var(rng)];
      int a = num(rng);
      int b = den(rng);
      p.add_term(e, make_rational(a, b));
    }
    return p;
  };
  PolyField f{d, component(), component()};
  if (f.u1.is_zero() && f.u2.is_zero()) f.u1 = Poly::constant(vars, 1);
  return f;
}

CorpusReport dissipativity_corpus(int d, int k, int count, std::uint64_t seed, int max_degree)
{
  CorpusReport rep;
  rep.d = d;
  rep.k = k;
  rep.count = count;
  rep.seed = seed;
  rep.max_degree = max_degree;
  std::mt19937_64 rng(seed);
  std::vector<PolyField> fields;
  for (int i = 0; i < count; ++i) fields.push_back(random_field(d, max_degree, rng));
  std::vector<GapResult> gaps(fields.size());
  std::vector<Rational> ratios(fields.size());
  parallel_for(fields.size(), [&](std::size_t i) {
    gaps[i] = dissipativity_gap(fields[i], k);
    ratios[i] = gaps[i].norm2 / standard_norm2(fields[i], k);
  });
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i == 0 || gaps[i].gap > rep.max_gap) rep.max_gap = gaps[i].gap;
    if (gaps[i].gap > 0) rep.failures.push_back(static_cast<int>(i));
    double r = ratios[i].get_d();
    rep.ratio_min = i == 0 ? r : std::min(rep.ratio_min, r);
    rep.ratio_max = i == 0 ? r : std::max(rep.ratio_max, r);
    rep.exploratory = rep.exploratory || gaps[i].exploratory;
  }
  return rep;
}

} // namespace blowup
