#include "blowup/norms.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

using namespace blowup;

namespace {

Poly var(int d, int i) { return Poly::variable(xi_vars(d), i); }

// sphere mean of omega^alpha through Gamma functions
double gamma_moment(int d, const Exponents& a)
{
  double lg = std::lgamma(d / 2.0) - d / 2.0 * std::log(std::numbers::pi);
  int total = 0;
  for (int e : a) {
    lg += std::lgamma((e + 1) / 2.0);
    total += e;
  }
  return std::exp(lg - std::lgamma((total + d) / 2.0));
}

} // namespace

TEST_CASE("moment table examples")
{
  for (int d = 2; d <= 12; ++d) CHECK(monomial_moment(Domain::sphere, d, Exponents(d, 0)) == 1);
  Exponents e(9, 0);
  e[0] = 2;
  CHECK(monomial_moment(Domain::sphere, 9, e) == Rational(1, 9));
  CHECK(monomial_moment(Domain::ball, 9, Exponents(9, 0)) == Rational(1, 9));
  e[0] = 3;
  CHECK(monomial_moment(Domain::sphere, 9, e) == 0);
  CHECK_THROWS_AS(monomial_moment(Domain::sphere, 1, Exponents(1, 0)), std::invalid_argument);
}

TEST_CASE("moments agree with the Gamma-function formula")
{
  for (int d : {3, 7, 9})
    for (const Exponents& base : {Exponents{2, 4, 0}, Exponents{6, 2, 2}, Exponents{0, 0, 8}, Exponents{2, 2, 2}}) {
      Exponents a(d, 0);
      for (std::size_t i = 0; i < 3; ++i) a[i] = base[i];
      if (d > 3) a[d - 1] = 2;
      double s = monomial_moment(Domain::sphere, d, a).get_d();
      CHECK(s == Catch::Approx(gamma_moment(d, a)).epsilon(1e-12));
      int total = 0;
      for (int x : a) total += x;
      CHECK(monomial_moment(Domain::ball, d, a) == monomial_moment(Domain::sphere, d, a) / (d + total));
    }
}

TEST_CASE("circle moments by direct quadrature")
{
  for (auto [a, b] : {std::pair{2, 2}, {4, 0}, {4, 6}, {0, 8}}) {
    const int n = 4096;
    double s = 0;
    for (int i = 0; i < n; ++i) {
      double t = 2 * std::numbers::pi * i / n;
      s += std::pow(std::cos(t), a) * std::pow(std::sin(t), b);
    }
    CHECK(monomial_moment(Domain::sphere, 2, {a, b}).get_d() == Catch::Approx(s / n).epsilon(1e-12));
  }
}

TEST_CASE("inner product examples")
{
  auto one = make_field(9, 1, 0);
  CHECK(hk_inner(one, one, 5) == 1);
  CHECK(hk_part(one, one, 1) == 1);
  auto x1 = make_field(9, var(9, 0), Poly::constant(xi_vars(9), 0));
  CHECK(hk_part(x1, x1, 1) == Rational(10, 9));
  CHECK(hk_inner(x1, x1, 5) == Rational(10, 9));
  CHECK_THROWS_AS(hk_inner(one, one, 2), std::invalid_argument);
  CHECK_THROWS_AS(make_field(9, var(7, 0), var(7, 1)), std::invalid_argument);
}

TEST_CASE("inner product is symmetric and bilinear")
{
  std::mt19937_64 rng(7);
  for (int t = 0; t < 20; ++t) {
    auto u = random_field(9, 6, rng), v = random_field(9, 6, rng), w = random_field(9, 6, rng);
    CHECK(hk_inner(u, v, 5) == hk_inner(v, u, 5));
    PolyField s{9, u.u1 * Rational(3) + w.u1, u.u2 * Rational(3) + w.u2};
    CHECK(hk_inner(s, v, 5) == Rational(3) * hk_inner(u, v, 5) + hk_inner(w, v, 5));
  }
}

TEST_CASE("integration by parts identities hold exactly")
{
  std::mt19937_64 rng(11);
  for (int d : {7, 9})
    for (int t = 0; t < 20; ++t) {
      auto f = random_field(d, 6, rng);
      // int_B 2 (xi.grad f) f = int_S f^2 - d int_B f^2
      Rational lhs = 2 * integrate_poly(Domain::ball, d, euler(f.u1) * f.u1);
      Rational rhs = integrate_poly(Domain::sphere, d, f.u1 * f.u1) - d * integrate_poly(Domain::ball, d, f.u1 * f.u1);
      CHECK(lhs == rhs);
      // int_B d_i Lap u d_i v = -int_B Lap u Lap v + int_S Lap u (omega.grad v)
      Poly lu = laplacian(f.u1);
      Rational a = contract(lu, f.u2, 1, Domain::ball, d);
      Rational b = -integrate_poly(Domain::ball, d, lu * laplacian(f.u2)) + integrate_poly(Domain::sphere, d, lu * euler(f.u2));
      CHECK(a == b);
    }
}

TEST_CASE("contraction counts every index tuple")
{
  // sum_{ij} (d_i d_j (x1 x2))^2 = 2 over the sphere mean of 1
  Poly p = var(9, 0) * var(9, 1);
  CHECK(contract(p, p, 2, Domain::sphere, 9) == 2);
  CHECK(contract(p, p, 1, Domain::sphere, 9) == Rational(2, 9));
}

TEST_CASE("dissipativity gap examples")
{
  auto one = make_field(9, 1, 0);
  auto Lu = apply_Ltilde(one);
  CHECK(Lu.u1 == Poly::constant(xi_vars(9), -2));
  CHECK(Lu.u2.is_zero());
  auto g = dissipativity_gap(one, 5);
  CHECK(g.gap == Rational(-3, 2));
  CHECK_FALSE(g.exploratory);

  auto e2 = make_field(9, 0, 1);
  auto L2 = apply_Ltilde(e2);
  CHECK(L2.u1 == Poly::constant(xi_vars(9), 1));
  CHECK(L2.u2 == Poly::constant(xi_vars(9), -3));
  CHECK(dissipativity_gap(e2, 5).gap == Rational(-5, 2));
  CHECK(dissipativity_gap(one, 6).exploratory);
}

TEST_CASE("dissipativity on random corpora")
{
  auto r9 = dissipativity_corpus(9, 5, 100, 42);
  CHECK(r9.failures.empty());
  CHECK(r9.max_gap <= 0);
  CHECK(r9.ratio_min > 1e-3);
  CHECK(r9.ratio_max < 1e3);
  for (int k : {3, 4}) CHECK(dissipativity_corpus(9, k, 40, 5).failures.empty());
  auto r7 = dissipativity_corpus(7, 3, 100, 43);
  CHECK(r7.failures.empty());
  CHECK(dissipativity_constant(7) == Rational(3, 2));
}

TEST_CASE("norm equivalence ratios")
{
  auto one = make_field(9, 1, 0);
  Rational r = norm_equivalence_ratio(one, 5);
  CHECK(r > 0);
  // (u|u) = 1, standard norm = |B| = 1/9
  CHECK(r == 9);
  auto f = make_field(9, var(9, 0) * var(9, 1), var(9, 2));
  Rational q = norm_equivalence_ratio(f, 5);
  CHECK(q > 0);
  CHECK(q == hk_inner(f, f, 5) / standard_norm2(f, 5));
  CHECK_THROWS_AS(norm_equivalence_ratio(make_field(9, 0, 0), 5), std::domain_error);
}
