#include "blowup/profiles.hpp"
#include "blowup/resolvent.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <vector>

using namespace blowup;

namespace {

// radial u* for d = 9 and its Euler companion rho U' + 2U
DJet U9(const DJet& r)
{
  auto pc = profile_constants(9);
  double c1 = double(pc.c1f), c2 = double(pc.c2f), c3 = double(pc.c3f);
  DJet x = r * r;
  return (DJet(c1) - DJet(c2) * x) / ((DJet(c3) + x) * (DJet(c3) + x));
}

} // namespace

TEST_CASE("L tilde on constants")
{
  for (double r : {0.0, 0.4}) {
    auto v = apply_Ltilde_radial(DJet(1.0), DJet(0.0), r, 0, 9);
    CHECK(v.v1 == -2.0);
    CHECK(v.v2 == 0.0);
  }
}

TEST_CASE("u* is a static solution of the similarity system")
{
  std::vector<double> rho;
  for (int i = 0; i <= 40; ++i) rho.push_back(i / 40.0);
  RadialFn u1 = U9;
  RadialFn u2 = [](const DJet& r) {
    DJet u = U9(r);
    return r * DJet(u.d1, u.d2, 0.0) + DJet(2.0) * u;
  };
  auto v = apply_Ltilde_radial(u1, u2, rho, 0, 9);
  for (std::size_t i = 0; i < rho.size(); ++i) {
    double U = U9(DJet(rho[i])).v;
    CHECK(std::abs(v[i].v1) < 1e-10);
    CHECK(std::abs(v[i].v2 + U * U) < 1e-10);
  }
}

TEST_CASE("the l = 0 eigenfield at lambda = 3")
{
  auto h1 = [](const DJet& r) {
    DJet q = DJet(7.0) + DJet(5.0) * r * r;
    return (q * q * q).inverse();
  };
  for (int i = 0; i <= 40; ++i) {
    double r = i / 40.0;
    DJet R = DJet::variable(r, 1.0);
    DJet a = h1(R);
    // h2 = rho h1' + 5 h1; only its first derivative is used
    DJet h2{r * a.d1 + 5 * a.v, a.d1 + r * a.d2 + 5 * a.d1, 0.0};
    auto v = apply_Ltilde_radial(a, h2, r, 0, 9);
    double V = 2 * U9(DJet(r)).v;
    CHECK(std::abs(v.v1 - 3 * a.v) < 1e-10);
    CHECK(std::abs(v.v2 + V * a.v - 3 * h2.v) < 1e-10);
  }
}

TEST_CASE("parity checks at the origin")
{
  CHECK_THROWS_AS(apply_Ltilde_radial(DJet(0.0, 1.0, 0.0), DJet(0.0), 0.0, 0, 9), ConsistencyError);
  CHECK_THROWS_AS(apply_Ltilde_radial(DJet(1.0), DJet(0.0), 0.0, 1, 9), ConsistencyError);
  CHECK_NOTHROW(apply_Ltilde_radial(DJet(0.0, 1.0, 0.0), DJet(0.0), 0.0, 1, 9));
  // the origin value of the l = 0 Laplacian is d u''(0)
  auto q = [](const DJet& r) { return r * r; };
  auto v0 = apply_Ltilde_radial(q(DJet::variable(0.0, 1.0)), DJet(0.0), 0.0, 0, 9);
  auto v1 = apply_Ltilde_radial(q(DJet::variable(1e-4, 1.0)), DJet(0.0), 1e-4, 0, 9);
  CHECK(v0.v2 == Catch::Approx(18.0));
  CHECK(v1.v2 == Catch::Approx(18.0).epsilon(1e-6));
}

TEST_CASE("fundamental systems solve the homogeneous equation")
{
  for (int d : {9, 7})
    for (int ell = 0; ell <= 5; ++ell) {
      auto fs = hypergeo_fundamental(ell, d);
      CHECK(fs.phi0(DJet(0.0)).v == Catch::Approx(1.0).epsilon(1e-14));
      for (double r : {0.2, 0.6, 0.9, 0.999}) {
        DJet R = DJet::variable(r, 1.0);
        DJet a = fs.psi0(R), b = fs.psi1(R);
        CHECK(std::abs(fundamental_ode_residual(fs, a, r)) < 1e-10 * std::max(1.0, std::abs(a.v) + std::abs(a.d2)));
        CHECK(std::abs(fundamental_ode_residual(fs, b, r)) < 1e-10 * std::max(1.0, std::abs(b.v) + std::abs(b.d2)));
      }
    }
  auto fs = hypergeo_fundamental(2);
  DJet b = fs.psi1(DJet::variable(0.6, 1.0));
  CHECK(std::abs(fundamental_ode_residual(fs, b, 0.6)) < 1e-10);
}

TEST_CASE("phi_1 is analytic at z = 1")
{
  // both sides of the series switch agree
  auto fs = hypergeo_fundamental(1);
  double a = 1 - 2.49e-3, b = 1 - 2.51e-3;
  DJet lo = fs.phi1(DJet::variable(a, 1.0)), hi = fs.phi1(DJet::variable(b, 1.0));
  double mid = 0.5 * (a + b);
  CHECK(lo.v + lo.d1 * (mid - a) == Catch::Approx(hi.v + hi.d1 * (mid - b)).epsilon(1e-9));
  CHECK(lo.d1 + lo.d2 * (mid - a) == Catch::Approx(hi.d1 + hi.d2 * (mid - b)).epsilon(1e-7));
  CHECK(fs.phi1(DJet(1.0)).v == Catch::Approx(2 * fs.p));
}

TEST_CASE("Wronskian normalization is constant")
{
  for (int ell : {0, 1, 4}) {
    auto fs = hypergeo_fundamental(ell);
    for (double r : {0.3, 0.5, 0.7}) {
      double w = fs.wronskian(r) * std::pow(1 - r * r, 1.5) * r * r;
      CHECK(std::abs(w - fs.C) < 1e-10 * std::abs(fs.C));
    }
    CHECK(fs.C != 0);
  }
}

TEST_CASE("degeneracy of the regular solution at rho = 1")
{
  for (int ell : {0, 1, 2, 3}) {
    auto fs = hypergeo_fundamental(ell);
    auto deg = fundamental_degeneracy(fs);
    CHECK(std::abs(deg.exponent + 0.5) < 0.05);
    CHECK(deg.c1 == Catch::Approx(fs.c1_closed()).epsilon(1e-6));
    CHECK(deg.c2 == Catch::Approx(fs.c2_closed()).epsilon(1e-6));
  }
}

TEST_CASE("resolvent solve: zero forcing")
{
  auto grid = resolvent_grid();
  auto m = solve_resolvent_mode(9, 0, [](double) { return 0.0; }, grid);
  for (const auto& u : m.u) CHECK(u.v == 0.0);
  CHECK(std::isnan(m.origin_exponent));
}

TEST_CASE("resolvent solve: constant forcing")
{
  auto grid = resolvent_grid();
  auto m = solve_resolvent_mode(9, 0, [](double) { return 1.0; }, grid);
  CHECK(m.max_residual < 1e-8);
  // bounded with bounded derivative near the origin
  CHECK(std::abs(m.u.front().v) < 10);
  CHECK(std::abs(m.u.front().d1) < 10);
  CHECK(std::abs(m.origin_exponent) < 0.05);
  // bounded up to the boundary
  CHECK(std::isfinite(m.u.back().v));
  CHECK(std::abs(m.u.back().v - m.u[m.u.size() - 2].v) < 1e-2);
}

TEST_CASE("resolvent solve: regular branch at the origin")
{
  auto grid = resolvent_grid();
  auto m = solve_resolvent_mode(9, 2, [](double r) { return r * r; }, grid);
  CHECK(m.max_residual < 1e-8);
  CHECK(std::abs(m.origin_exponent - 2.0) < 0.05);
}

TEST_CASE("resolvent solve: residual for several modes and d = 7")
{
  auto grid = resolvent_grid();
  for (int d : {9, 7})
    for (int ell : {0, 1, 3}) {
      auto g = [ell](double r) { return std::pow(r, ell) * (1 + r * r - 0.5 * r * r * r * r); };
      auto m = solve_resolvent_mode(d, ell, g, grid);
      INFO("d = " << d << " l = " << ell);
      CHECK(m.max_residual < 1e-8);
      CHECK(std::abs(m.origin_exponent - ell) < 0.05);
    }
}

TEST_CASE("resolvent solve is linear")
{
  auto grid = resolvent_grid();
  auto g = [](double r) { return r * (1 + r * r); };
  auto h = [](double r) { return r * std::cos(r); };
  double a = 1.7, b = -0.6;
  auto mg = solve_resolvent_mode(9, 1, g, grid);
  auto mh = solve_resolvent_mode(9, 1, h, grid);
  auto mc = solve_resolvent_mode(9, 1, [&](double r) { return a * g(r) + b * h(r); }, grid);
  for (std::size_t i = 0; i < grid.size(); ++i)
    CHECK(std::abs(mc.u[i].v - a * mg.u[i].v - b * mh.u[i].v) < 1e-9);
}

TEST_CASE("resolvent rejects samples outside the open interval")
{
  std::vector<double> bad{0.0, 0.5};
  CHECK_THROWS_AS(solve_resolvent_mode(9, 0, [](double) { return 1.0; }, bad), std::invalid_argument);
  CHECK_THROWS_AS(hypergeo_fundamental(0, 8), std::invalid_argument);
}

TEST_CASE("multiplicity witnesses")
{
  auto w = multiplicity_witnesses(9);
  CHECK(w.C > 0);
  CHECK(w.C < 4e-8);
  // composite Simpson oracle
  double simpson = 0;
  const int n = 20000;
  auto f = [](double x) { return 2 * std::pow(x, 8) * (1 - x * x) / std::pow(7 + 5 * x * x, 6); };
  for (int i = 0; i <= n; ++i) simpson += (i == 0 || i == n ? 1 : i % 2 ? 4 : 2) * f(double(i) / n);
  simpson /= 3.0 * n;
  CHECK(w.C == Catch::Approx(simpson).epsilon(1e-10));
  CHECK(w.C == Catch::Approx(3.6133032888e-8).epsilon(1e-9));
  CHECK(std::abs(w.constant_term - 864) < 1);
  CHECK(std::abs(w.log_coefficient + 3456) < 5);
  CHECK(std::abs(w.exponent_l0 + 7) < 0.1);
  CHECK(std::abs(w.exponent_l1 + 8) < 0.1);
  CHECK(w.conclusive);
}

TEST_CASE("witness second solutions solve their equations")
{
  // (1-rho^2) u'' + (8/rho - 8 rho) u' - (12 + l(l+7)/rho^2 - V) u = 0 at lambda = 1
  auto pc = profile_constants(9);
  for (int ell : {0, 1})
    for (double r : {0.05, 0.3, 0.6, 0.8, 0.99}) {
      DJet u = ell == 0 ? witness_u2_l0(r) : witness_u2_l1(r);
      double V = 2 * (double(pc.c1f) - double(pc.c2f) * r * r) / std::pow(double(pc.c3f) + r * r, 2);
      double res = (1 - r * r) * u.d2 + (8 / r - 8 * r) * u.d1 - (12 + ell * (ell + 7) / (r * r) - V) * u.v;
      double scale = std::abs(u.d2) + std::abs(u.d1) / r + std::abs(u.v) / (r * r);
      CHECK(std::abs(res) < 1e-10 * scale);
    }
}
