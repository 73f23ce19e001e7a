#include "blowup/mode_scan.hpp"
#include "blowup/spectral_series.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

using namespace blowup;

namespace {

cplx eval_poly(const std::vector<cplx>& p, cplx x)
{
  cplx v = 0;
  for (std::size_t k = p.size(); k-- > 0;) v = v * x + p[k];
  return v;
}

// residual of the radial ODE for a series in t = x - x0, second derivative taken term by term
double ode_residual(const RadialOde& o, const std::vector<cplx>& c, double x0, double x)
{
  double t = x - x0;
  cplx v = 0, d1 = 0, d2 = 0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    double kk = static_cast<double>(k);
    v += c[k] * std::pow(t, kk);
    if (k >= 1) d1 += kk * c[k] * std::pow(t, kk - 1);
    if (k >= 2) d2 += kk * (kk - 1) * c[k] * std::pow(t, kk - 2);
  }
  return std::abs(eval_poly(o.P2, x) * d2 + eval_poly(o.P1, x) * d1 + eval_poly(o.P0, x) * v);
}

} // namespace

TEST_CASE("indicator examples")
{
  CHECK(std::abs(connection_indicator({9, 0, 3.0})) < 1e-10);
  CHECK(std::abs(connection_indicator({9, 1, 1.0})) < 1e-10);
  CHECK(std::abs(connection_indicator({9, 1, 0.0})) < 1e-10);
  CHECK(std::abs(connection_indicator({9, 0, 1.0})) < 1e-10);
  double at2 = std::abs(connection_indicator({9, 0, 2.0}));
  CHECK(at2 > 1e-3);
  CHECK(numeric_ratio_scan(0, Rational(2)).cls == RatioClass::tends_to_1);
}

TEST_CASE("analytic branch at 0 reproduces the eigenfunctions")
{
  auto s = two_sided_series({9, 0, 3.0});
  for (double x : {0.1, 0.3, 0.5}) {
    double expect = std::pow(7.0 / (7.0 + 5.0 * x), 3);
    CHECK(std::abs(eval_series(s.at0, x).first - expect) < 1e-13);
  }
  // lambda = 1 is resonant at x = 1, so only the branch at 0 is built
  auto at0 = frobenius_branch(radial_ode({9, 1, 1.0}), 0.0, 0.5, 1e-15, 20000);
  for (double x : {0.1, 0.3, 0.5}) {
    double expect = (77.0 - 5.0 * x) * 343.0 / (77.0 * std::pow(7.0 + 5.0 * x, 3));
    CHECK(std::abs(eval_series(at0, x).first - expect) < 1e-13);
  }
}

TEST_CASE("branch at 0 agrees with the Heun series")
{
  for (int ell : {0, 1, 2, 4})
    for (cplx L : {cplx(0.4, 0.0), cplx(2.3, 1.1), cplx(-0.3, -2.0)}) {
      auto s = two_sided_series({9, ell, L});
      auto led = frobenius_coeffs(ell, L, 400, HeunForm::low);
      for (double x : {0.2, 0.45}) {
        cplx y = eval_series(led.af, x).first;
        cplx v = eval_series(s.at0, x).first * std::pow((1.4 + x) / 1.4, 3);
        CHECK(std::abs(v - y) < 1e-11 * std::max(1.0, std::abs(y)));
      }
    }
}

TEST_CASE("both branches solve the radial equation")
{
  for (int d : {7, 9})
    for (Potential pot : {Potential::u_star, Potential::kappa, Potential::free})
      for (cplx L : {cplx(0.7, 0.0), cplx(1.5, 2.5)}) {
        SpectralPoint p{d, 2, L, pot};
        auto o = radial_ode(p);
        auto s = two_sided_series(p);
        for (double x : {0.35, 0.5}) CHECK(ode_residual(o, s.at0, 0.0, x) < 1e-9);
        for (double x : {0.5, 0.65}) CHECK(ode_residual(o, s.at1, 1.0, x) < 1e-9);
      }
}

TEST_CASE("characteristic exponents")
{
  CHECK(exponent_at_one(9, 0.5) == cplx(1.5));
  CHECK(exponent_at_one(7, 0.0) == cplx(1.0));
  CHECK(indicator_pole_set(9) == std::vector<double>{1.0, 0.0});
  CHECK(indicator_pole_set(7) == std::vector<double>{0.0});
}

TEST_CASE("indicator is conjugate symmetric and continuous through the pole set")
{
  for (cplx L : {cplx(0.3, 0.7), cplx(2.2, -1.4), cplx(0.98, 0.01)}) {
    cplx a = connection_indicator({9, 0, L}), b = connection_indicator({9, 0, std::conj(L)});
    CHECK(std::abs(a - std::conj(b)) < 1e-10 * std::max(1.0, std::abs(a)));
  }
  // the mean-value evaluation matches the direct product just outside its disk
  for (double q : {0.0, 1.0}) {
    cplx inside = connection_indicator({9, 2, q + 0.0499});
    cplx outside = connection_indicator({9, 2, q + 0.0501});
    CHECK(std::abs(inside - outside) < 1e-2 * std::abs(outside));
  }
}

TEST_CASE("scan recovers the unstable spectrum")
{
  auto s0 = eigenvalue_scan(9, 0, {0, 4, -2, 2, 200, 200});
  REQUIRE(s0.roots.size() == 2);
  CHECK(std::abs(s0.roots[0].lambda - 1.0) < 1e-6);
  CHECK(std::abs(s0.roots[1].lambda - 3.0) < 1e-6);
  CHECK(s0.total_winding == 2);
  CHECK_FALSE(s0.exploratory);
  for (const auto& r : s0.roots) CHECK(r.residual < 1e-8);

  auto s1 = eigenvalue_scan(9, 1, {-0.25, 2, -2, 2, 200, 200});
  REQUIRE(s1.roots.size() == 2);
  CHECK(std::abs(s1.roots[0].lambda - 0.0) < 1e-6);
  CHECK(std::abs(s1.roots[1].lambda - 1.0) < 1e-6);

  CHECK(eigenvalue_scan(9, 3, {0, 5, -3, 3, 200, 200}).roots.empty());
}

TEST_CASE("scan roots are stable under grid refinement")
{
  auto coarse = eigenvalue_scan(9, 0, {0, 4, -2, 2, 60, 60});
  auto fine = eigenvalue_scan(9, 0, {0, 4, -2, 2, 120, 120});
  REQUIRE(coarse.roots.size() == fine.roots.size());
  for (std::size_t k = 0; k < fine.roots.size(); ++k)
    CHECK(std::abs(coarse.roots[k].lambda - fine.roots[k].lambda) < 1e-8);
}

TEST_CASE("scan rejects bad regions")
{
  CHECK_THROWS_AS(eigenvalue_scan(9, 0, {-1, 1, -1, 1, 10, 10}), std::invalid_argument);
  CHECK_THROWS_AS(eigenvalue_scan(9, 0, {1, 0, -1, 1, 10, 10}), std::invalid_argument);
  CHECK(eigenvalue_scan(7, 0, {0, 4, -1, 1, 40, 40}).exploratory);
}

TEST_CASE("gamma function special values")
{
  double fact = 1;
  for (int n = 1; n <= 20; ++n) {
    CHECK(std::abs(gamma_fn(n) - fact) < 1e-12 * fact);
    fact *= n;
  }
  // Gamma(n + 1/2) = (2n)! sqrt(pi) / (4^n n!)
  double g = std::sqrt(std::numbers::pi);
  for (int n = 0; n <= 15; ++n) {
    CHECK(std::abs(gamma_fn(n + 0.5) - g) < 1e-12 * g);
    g *= n + 0.5;
  }
  CHECK(std::abs(gamma_fn(-0.5) + 2 * std::sqrt(std::numbers::pi)) < 1e-12);
  for (int n = 0; n <= 5; ++n) CHECK(rgamma(-n) == cplx(0));
  CHECK(std::isinf(gamma_fn(-3).real()));
  cplx z(0.3, 1.7);
  CHECK(std::abs(gamma_fn(z + 1.0) - z * gamma_fn(z)) < 1e-12 * std::abs(gamma_fn(z + 1.0)));
  CHECK(std::abs(gamma_fn(z) * gamma_fn(1.0 - z) - std::numbers::pi / std::sin(std::numbers::pi * z)) < 1e-11);
}

TEST_CASE("kappa spectrum examples")
{
  CHECK(kappa_spectrum(9, 0, 0) == std::vector<double>{1});
  CHECK(kappa_spectrum(9, 1, 0) == std::vector<double>{0});
  CHECK(kappa_spectrum(7, 2, 0).empty());
  CHECK(kappa_spectrum(9, 0, -0.5).size() == 1);
  CHECK_THROWS_AS(kappa_spectrum(9, 0, -1), std::invalid_argument);
  CHECK(std::abs(connection_coefficient_kappa(9, 0, 1.0).value) == 0);
  auto two = connection_coefficient_kappa(9, 0, 2.0);
  CHECK(std::abs(two.value) > 1e-3);
  CHECK(std::isfinite(std::abs(two.value)));
  CHECK(std::abs(connection_coefficient_kappa(7, 1, 0.0).value) == 0);
  CHECK(std::isinf(connection_coefficient_regular(9, 0, 3.0).real()));
  CHECK(std::abs(connection_coefficient_regular(9, 0, 1.0)) > 1e-3);
}

TEST_CASE("kappa spectrum equals the zero set of the connection coefficient")
{
  for (int d : {7, 9})
    for (int ell = 0; ell <= 6; ++ell) {
      std::vector<double> zeros;
      for (int k = -32; k <= 320; ++k) {
        double L = k / 64.0;
        if (std::abs(connection_coefficient_kappa(d, ell, L).value) < 1e-12) zeros.push_back(L);
      }
      CHECK(zeros == kappa_spectrum(d, ell, -0.5));
    }
}

TEST_CASE("constant potential scan matches the kappa spectrum")
{
  for (int ell : {0, 1}) {
    auto s = eigenvalue_scan(9, ell, {-0.25, 3, -1, 1, 80, 40}, Potential::kappa);
    auto k = kappa_spectrum(9, ell, -0.25);
    REQUIRE(s.roots.size() == k.size());
    for (std::size_t i = 0; i < k.size(); ++i) CHECK(std::abs(s.roots[i].lambda - k[i]) < 1e-6);
  }
}
