#include "blowup/profiles.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace blowup;

namespace {

std::vector<Rational> radial_point(int d, Rational x1)
{
  std::vector<Rational> p(static_cast<std::size_t>(d), Rational(0));
  p[0] = x1;
  return p;
}

// independent evaluation of U(rho) from its printed radial form
Rational radial_U(const ProfileConstants& c, const Rational& rho2) { return (c.c1 - c.c2 * rho2) / ((c.c3 + rho2) * (c.c3 + rho2)); }

} // namespace

TEST_CASE("profile constants")
{
  auto c9 = profile_constants(9);
  CHECK(c9.exact);
  CHECK(c9.d0 == 12);
  CHECK(c9.c1 == Rational(336, 5));
  CHECK(c9.c2 == Rational(48, 5));
  CHECK(c9.c3 == Rational(7, 5));
  CHECK(c9.c1 / (c9.c3 * c9.c3) == Rational(240, 7));
  auto c7 = profile_constants(7);
  CHECK(c7.d0 == 6);
  CHECK(c7.c1 == Rational(504, 25));
  CHECK(c7.c2 == Rational(24, 5));
  CHECK(c7.c3 == Rational(3, 5));
  auto c8 = profile_constants(8);
  CHECK_FALSE(c8.exact);
  CHECK(c8.d0f * c8.d0f == Catch::Approx(6.0 * 7 * 2));
  CHECK(c8.c3f > 0);
  CHECK(c8.c1f > c8.c2f);
  CHECK_THROWS_AS(profile_constants(6), std::domain_error);
  for (int d = 7; d <= 20; ++d) {
    auto c = profile_constants(d);
    CHECK(c.c3f > 0);
    CHECK(c.c1f > c.c2f);
  }
}

TEST_CASE("twice the radial profile is the d = 9 potential")
{
  auto c = profile_constants(9);
  for (int k = 0; k <= 30; ++k) {
    Rational x = make_rational(k, 7); // x = rho^2
    Rational V = 480 * (7 - x) / ((7 + 5 * x) * (7 + 5 * x));
    CHECK(2 * radial_U(c, x) == V);
  }
}

TEST_CASE("eval_profile examples")
{
  auto f = make_family<Rational>(FamilyKind::u_star, 9);
  auto z = radial_point(9, 0);
  CHECK(eval_profile(f, std::span<const Rational>(z)) == Rational(240, 7));
  // |xi|^2 = 7: use xi = (2, 1, 1, 1, 0, ...)
  std::vector<Rational> p(9, Rational(0));
  p[0] = 2;
  p[1] = p[2] = p[3] = 1;
  CHECK(eval_profile(f, std::span<const Rational>(p)) == 0);
  CHECK(rho_star_squared(f.c) == 7);
  auto k = make_family<Rational>(FamilyKind::ode_kappa, 9);
  CHECK(eval_profile(k, std::span<const Rational>(p)) == 6);
  // radial reduction matches the printed radial profile
  auto q = radial_point(9, Rational(3, 4));
  CHECK(eval_profile(f, std::span<const Rational>(q)) == radial_U(profile_constants(9), Rational(9, 16)));
}

TEST_CASE("boost kernel normalization and gamma at zero boost")
{
  auto b = boost_from_tanh_half({Rational(1, 3), Rational(-1, 5), 0, 0, Rational(1, 7), 0, 0, 0, Rational(2, 9)});
  CHECK(b.normalization() == 1);
  auto bf = boost_from_angles<double>({0.3, -0.1, 0.7});
  CHECK(bf.normalization() == Catch::Approx(1.0).margin(1e-12));
  auto id = Boost<Rational>::identity(9);
  std::vector<Rational> xi{Rational(1, 2), Rational(1, 3), 0, 0, 0, 0, 0, 0, Rational(-1, 4)};
  CHECK(gamma_of<Rational>(id, std::span<const Rational>(xi)) == 1);
}

TEST_CASE("lorentz invariance of the light-cone quadratic form")
{
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> a(9);
    for (auto& x : a) x = u(rng);
    auto b = boost_from_angles<double>(a);
    std::vector<double> y(9);
    for (auto& x : y) x = u(rng);
    double s = u(rng);
    auto [sp, yp] = lorentz(b, s, y);
    double before = -s * s, after = -sp * sp;
    for (int i = 0; i < 9; ++i) {
      before += y[i] * y[i];
      after += yp[i] * yp[i];
    }
    CHECK(after == Catch::Approx(before).margin(1e-12));
  }
}

TEST_CASE("pde residual vanishes exactly")
{
  for (int d : {7, 9}) {
    auto f = make_family<Rational>(FamilyKind::u_star, d);
    auto x = radial_point(d, Rational(1, 4));
    CHECK(pde_residual(f, Rational(1, 2), std::span<const Rational>(x)) == 0);
    std::vector<Rational> m(static_cast<std::size_t>(d), Rational(0));
    m[0] = Rational(1, 3);
    m[d - 1] = Rational(-1, 5);
    auto fb = make_family<Rational>(FamilyKind::u_star, d, boost_from_tanh_half(m));
    fb.T = Rational(3, 2);
    fb.x0[1] = Rational(1, 10);
    std::vector<Rational> y(static_cast<std::size_t>(d), Rational(0));
    y[0] = Rational(1, 5);
    y[1] = Rational(-1, 7);
    y[2] = Rational(1, 9);
    CHECK(pde_residual(fb, Rational(1, 3), std::span<const Rational>(y)) == 0);
    auto kb = make_family<Rational>(FamilyKind::ode_kappa, d, boost_from_tanh_half(m));
    CHECK(pde_residual(kb, Rational(1, 3), std::span<const Rational>(y)) == 0);
  }
}

TEST_CASE("pde residual negative control and float mode")
{
  auto f = make_family<Rational>(FamilyKind::u_star, 9);
  f.c.c1 += 1;
  auto x = radial_point(9, Rational(1, 4));
  CHECK(pde_residual(f, Rational(1, 2), std::span<const Rational>(x)) != 0);

  auto g = make_family<double>(FamilyKind::u_star, 9, boost_from_angles<double>({0.2, 0, 0, -0.3, 0, 0, 0, 0, 0.1}));
  std::vector<double> y(9, 0.0);
  y[0] = 0.1;
  y[3] = -0.2;
  CHECK(std::abs(pde_residual(g, 0.25, std::span<const double>(y))) < 1e-10);

  auto g8 = make_family<long double>(FamilyKind::u_star, 8);
  std::vector<long double> z(8, 0.0L);
  z[0] = 0.3L;
  CHECK(std::abs(static_cast<double>(pde_residual(g8, 0.1L, std::span<const long double>(z)))) < 1e-10);
  CHECK_THROWS_AS(make_family<Rational>(FamilyKind::u_star, 8), std::domain_error);

  std::vector<Rational> outside = radial_point(9, Rational(3, 4));
  CHECK_THROWS_AS(pde_residual(make_family<Rational>(FamilyKind::u_star, 9), Rational(1, 2),
                               std::span<const Rational>(outside)),
                  std::domain_error);
}

TEST_CASE("positivity on the ball")
{
  auto f9 = make_family<double>(FamilyKind::u_star, 9);
  auto r = positivity_on_ball(f9, 200);
  CHECK(r.min == Catch::Approx(10.0).margin(1e-9));
  CHECK(r.argmin_r == Catch::Approx(1.0));
  CHECK(r.verdict == "pass");
  auto f7 = make_family<double>(FamilyKind::u_star, 7);
  CHECK(positivity_on_ball(f7, 200).min == Catch::Approx(6.0).margin(1e-9));
  auto coarse = positivity_on_ball(make_family<double>(FamilyKind::u_star, 9, boost_from_angles<double>({2, 0, 0, 0, 0, 0, 0, 0, 0})), 2);
  CHECK(coarse.verdict == "inconclusive");
  auto boosted = positivity_on_ball(make_family<double>(FamilyKind::u_star, 9, boost_from_angles<double>({1.0, 0, 0, 0, 0, 0, 0, 0, 0.5})), 200);
  CHECK(boosted.min > 0);
}

TEST_CASE("sobolev scaling exponents")
{
  auto f = make_family<double>(FamilyKind::u_star, 9);
  CHECK(sobolev_scaling_exponent(f, 1) == Catch::Approx(9.0 / 2 - 1).epsilon(0.02));
  CHECK(sobolev_scaling_exponent(f, 2) == Catch::Approx(9.0 / 2 - 2).epsilon(0.02));
  auto fb = make_family<double>(FamilyKind::u_star, 9, boost_from_angles<double>({0.3, 0, 0, 0, 0, 0, 0, 0, 0}));
  CHECK(sobolev_scaling_exponent(fb, 1) == Catch::Approx(9.0 / 2 - 1).epsilon(0.02));
}

TEST_CASE("eigenfields at zero boost")
{
  auto f = make_family<Rational>(FamilyKind::u_star, 9);
  for (std::string label : {"h", "g0", "g1", "g5", "q1", "q9"}) {
    auto r = eigen_residual(parse_mode(label), f, 12);
    INFO(label);
    CHECK(r.exact_zero);
  }
  CHECK_THROWS_AS(parse_mode("x3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_mode("q0"), std::invalid_argument);

  std::vector<Rational> xi{Rational(1, 3), Rational(1, 5), 0, 0, Rational(-1, 4), 0, 0, 0, 0};
  std::span<const Rational> s(xi);
  Rational r2 = Rational(1, 9) + Rational(1, 25) + Rational(1, 16);
  Rational w = 7 + 5 * r2;
  // h1 and the g0 component in their printed radial forms
  CHECK(eigen_first<Rational>(parse_mode("h"), f, s) == 1 / (w * w * w));
  CHECK(eigen_first<Rational>(parse_mode("g0"), f, s) == -(1 - r2) / (w * w * w));
  // q1 is proportional to xi_1 (7 - 3|xi|^2)/(7 + 5|xi|^2)^3
  CHECK(eigen_first<Rational>(parse_mode("q1"), f, s) == 8640 * xi[0] * (7 - 3 * r2) / (w * w * w));
  CHECK(eigen_first<Rational>(parse_mode("g1"), f, s) == -xi[0] * (77 - 5 * r2) / (w * w * w));
  // h2 = Lambda h1 + 5 h1 with Lambda h1 = -30 r2 / w^4
  Rational h1 = 1 / (w * w * w);
  CHECK(eigen_second<Rational>(parse_mode("h"), f, s) == -30 * r2 / (w * w * w * w) + 5 * h1);
}

TEST_CASE("eigenfields at nonzero boost")
{
  auto fe = make_family<Rational>(FamilyKind::u_star, 9,
                                  boost_from_tanh_half({Rational(1, 4), 0, Rational(-1, 6), 0, 0, 0, 0, 0, Rational(1, 8)}));
  for (std::string label : {"h", "g0", "g1", "g3", "g9", "q1", "q3", "q9"}) {
    INFO(label);
    CHECK(eigen_residual(parse_mode(label), fe, 6).exact_zero);
  }
  auto fd = make_family<double>(FamilyKind::u_star, 9, boost_from_angles<double>({0.4, 0, 0, -0.2, 0, 0, 0, 0, 0.3}));
  for (std::string label : {"h", "g0", "g4", "q4"}) {
    INFO(label);
    CHECK(eigen_residual(parse_mode(label), fd, 20).max_abs < 1e-10);
  }
}
