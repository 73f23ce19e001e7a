#include "blowup/spectral_series.hpp"

#include <catch_amalgamated.hpp>

#include <Eigen/Dense>

#include <cmath>

using namespace blowup;

namespace {

UPoly lam() { return UPoly{Rational(0), Rational(1)}; }
UPoly c(long v) { return UPoly{Rational(v)}; }

// general Heun three-term recurrence written from the equation's parameters
std::pair<UPoly, UPoly> heun_recurrence(const HeunParams& h, int n)
{
  int j = n + 1;
  Rational a = h.mu;
  Rational den = a * (j + 1) * (j + h.gamma);
  UPoly jj = c(j);
  UPoly A = h.q + jj * (UPoly{Rational((j - 1 + h.gamma) * (1 + a))} + a * h.delta + UPoly{h.eps});
  UPoly B = Rational(-1) * ((UPoly{Rational(j - 1)} + h.alpha) * (UPoly{Rational(j - 1)} + h.beta));
  return {(1 / den) * A, (1 / den) * B};
}

std::vector<std::complex<double>> numeric_roots(const UPoly& p)
{
  int n = p.degree();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  double lead = p.lead().get_d();
  for (int i = 1; i < n; ++i) m(i, i - 1) = 1;
  for (int i = 0; i < n; ++i) m(i, n - 1) = -p[static_cast<std::size_t>(i)].get_d() / lead;
  Eigen::EigenSolver<Eigen::MatrixXd> es(m);
  std::vector<std::complex<double>> out;
  for (int i = 0; i < n; ++i) out.push_back(es.eigenvalues()[i]);
  return out;
}

const Verdict* find_verdict(const LemmaCertificate& c, const std::string& id)
{
  for (const auto& r : c.reports)
    if (r.lemma_id == id) return &r.verdict;
  return nullptr;
}

} // namespace

TEST_CASE("recurrence coefficients match the Heun parameters")
{
  for (HeunForm f : {HeunForm::low, HeunForm::high})
    for (int ell : {0, 1, 2, 3, 7}) {
      auto h = heun_params(f, ell);
      // Fuchs relation
      CHECK(UPoly{h.gamma + h.eps} + h.delta == h.alpha + h.beta + c(1));
      for (int n = -1; n <= 12; ++n) {
        auto [A, B] = recurrence_coeffs_symbolic(f, ell, n);
        auto [A2, B2] = heun_recurrence(h, n);
        INFO("form " << to_string(f) << " ell " << ell << " n " << n);
        CHECK(A == A2);
        if (n >= 0) CHECK(B == B2);
      }
    }
}

TEST_CASE("both Heun forms describe the same regular solution")
{
  auto series = [](const CoefficientLedger& L, double x) {
    double s = 0, p = 1;
    for (auto a : L.af) {
      s += a.real() * p;
      p *= x;
    }
    return s;
  };
  for (int ell : {2, 3, 6})
    for (double lam : {0.37, 2.5, -0.2}) {
      auto lo = frobenius_coeffs(ell, cplx(lam), 300, HeunForm::low);
      auto hi = frobenius_coeffs(ell, cplx(lam), 300, HeunForm::high);
      std::vector<double> ratios;
      for (double r : {0.2, 0.4, 0.6}) {
        double x = r * r, xt = 12 * x / (5 * x + 7);
        double fl = std::pow(r, ell) * std::pow(1.4 + x, -3) * series(lo, x);
        double fh = std::pow(xt, ell / 2.0) * std::pow(2.4 - xt, (lam + 3) / 2) * series(hi, xt);
        ratios.push_back(fl / fh);
      }
      CHECK(ratios[0] == Catch::Approx(ratios[1]).epsilon(1e-10));
      CHECK(ratios[0] == Catch::Approx(ratios[2]).epsilon(1e-10));
    }
}

TEST_CASE("rational and complex recurrence evaluators agree")
{
  for (HeunForm f : {HeunForm::low, HeunForm::high})
    for (int ell : {0, 1, 4})
      for (int n : {-1, 0, 5, 40})
        for (Rational L : {Rational(0), Rational(3, 2), Rational(-7, 3)}) {
          auto rc = recurrence_coeffs(f, ell, n, L);
          auto [A, B] = recurrence_coeffs(f, ell, n, cplx(L.get_d()));
          CHECK(std::abs(A - rc.A.get_d()) < 1e-12);
          CHECK(std::abs(B - rc.B.get_d()) < 1e-12);
        }
  CHECK(recurrence_coeffs(HeunForm::low, 0, 0, Rational(0)).A == Rational(-10, 77));
  CHECK(recurrence_coeffs(HeunForm::high, 0, 0, Rational(0)).exploratory);
  CHECK_THROWS_AS(recurrence_coeffs(HeunForm::low, 0, -2, Rational(0)), std::out_of_range);
}

TEST_CASE("characteristic roots are the limits of the recurrence")
{
  for (HeunForm f : {HeunForm::low, HeunForm::high}) {
    auto [r1, r2] = characteristic_roots(f);
    CHECK(r1 == 1);
    auto rc = recurrence_coeffs(f, default_form(0) == f ? 0 : 2, 1000000, Rational(1, 2));
    double A = rc.A.get_d(), B = rc.B.get_d();
    CHECK(std::abs(A - Rational(r1 + r2).get_d()) < 1e-4);
    CHECK(std::abs(B + Rational(r1 * r2).get_d()) < 1e-4);
  }
  CHECK(characteristic_roots(HeunForm::low).second == Rational(-5, 7));
  CHECK(characteristic_roots(HeunForm::high).second == Rational(5, 12));
}

TEST_CASE("low-order coefficients have the closed forms")
{
  auto L = lam();
  auto s0 = frobenius_symbolic(0, 12);
  CHECK(s0.as[2] == Rational(1, 5544) * ((L - c(3)) * (L - c(1)) * (Rational(7) * L * L + Rational(126) * L + c(680))));
  CHECK(s0.as[3] == Rational(1, 3027024) * ((L - c(3)) * (L - c(1)) *
                                            (Rational(49) * L * L * L * L + Rational(1519) * L * L * L +
                                             Rational(18494) * L * L + Rational(84224) * L + c(46080))));
  CHECK(s0.removed_factor == (L - c(3)) * (L - c(1)));

  auto s1 = frobenius_symbolic(1, 12);
  CHECK(s1.as[2] == Rational(1, 8008) * (L * (L - c(1)) * (Rational(7) * L * L + Rational(133) * L + c(786))));
  CHECK(s1.as[3] == Rational(1, 720720) * (L * (L - c(1)) *
                                           (Rational(7) * L * L * L * L + Rational(238) * L * L * L +
                                            Rational(3263) * L * L + Rational(17828) * L + c(22476))));
  CHECK(s1.removed_factor == L * (L - c(1)));

  for (std::size_t n = 2; n < s0.as.size(); ++n) CHECK(s0.bs[n] * s0.removed_factor == s0.as[n]);
  CHECK(frobenius_symbolic(2, 6).removed_factor == c(1));
}

TEST_CASE("polynomial solutions terminate")
{
  struct Case {
    int ell;
    Rational lambda, a1;
  };
  for (auto [ell, L, a1] : {Case{0, 1, -1}, Case{0, 3, 0}, Case{1, 0, Rational(-3, 7)}, Case{1, 1, Rational(-5, 77)}}) {
    auto led = frobenius_coeffs(ell, L, 40);
    INFO("ell " << ell << " lambda " << L);
    CHECK(led.a[1] == a1);
    CHECK(led.terminating);
    for (std::size_t n = 2; n < led.a.size(); ++n) CHECK(led.a[n] == 0);
  }
  CHECK_FALSE(frobenius_coeffs(0, Rational(2), 40).terminating);
}

TEST_CASE("quasi-solution examples")
{
  CHECK(quasi_solution(2, 1, Rational(0)) == Rational(17, 48));
  // polynomial form and the closed form evaluators agree
  for (int cls : {0, 1, 2}) {
    auto Q = quasi_polys(cls);
    int ell = cls == 2 ? 5 : cls;
    for (int n : {0, 3, 17})
      for (Rational L : {Rational(0), Rational(2, 3), Rational(-5, 2)}) {
        Rational v = Q.p.evaluate({Rational(n), Rational(ell), L}) / Q.q.evaluate({Rational(n), Rational(ell), L});
        CHECK(v == quasi_solution(ell, n, L));
        auto z = quasi_solution(ell, n, cplx(L.get_d()));
        CHECK(std::abs(z - v.get_d()) < 1e-12);
      }
  }
  CHECK_THROWS_AS(quasi_solution(0, -1, Rational(0)), std::out_of_range);
}

TEST_CASE("C_n tends to the product of the characteristic roots")
{
  auto led = frobenius_coeffs(0, cplx(0.3, 2.0), 4000);
  CHECK(std::abs(led.Cf[3990] - 5.0 / 7.0) < 1e-3);
  auto hi = frobenius_coeffs(3, cplx(0.3, 2.0), 4000);
  CHECK(std::abs(hi.Cf[3990] + 5.0 / 12.0) < 1e-3);
}

TEST_CASE("delta recursion holds identically")
{
  for (auto [ell, n] : {std::pair{0, 6}, {1, 5}, {2, 3}, {4, 7}}) {
    auto d = delta_epsilon_C(ell, n);
    INFO("ell " << ell << " n " << n);
    CHECK(d.recursion_residual.is_zero());
    CHECK_FALSE(d.delta_n.is_zero());
  }
}

TEST_CASE("delta recursion holds on the imaginary axis in floating point")
{
  for (int ell : {0, 1, 2, 5})
    for (double t : {0.05, 0.7, 3.0, 25.0}) {
      auto led = frobenius_coeffs(ell, cplx(0.0, t), 200);
      for (std::size_t n = 3; n + 2 < 200; ++n) {
        cplx d = led.deltaf[n];
        cplx next = led.epsf[n] - led.Cf[n] * d / (1.0 + d);
        REQUIRE(std::abs(next - led.deltaf[n + 1]) < 1e-9 * (1 + std::abs(next)));
      }
    }
}

TEST_CASE("start denominators are Hurwitz and match companion roots")
{
  for (auto [ell, n, deg] : {std::tuple{0, 6, 10}, {1, 5, 8}}) {
    auto sym = frobenius_symbolic(ell, n + 1);
    const UPoly& b = sym.bs[static_cast<std::size_t>(n)];
    CHECK(b.degree() == deg);
    CHECK(routh_hurwitz(b));
    for (auto z : numeric_roots(b)) CHECK(z.real() < 0);
    auto r = ratio_symbolic(sym, n);
    CHECK(routh_hurwitz(r.den));
  }
  // l = 1 carries a polynomial solution at lambda = -3 which cancels from r_5
  auto s1 = frobenius_symbolic(1, 6);
  CHECK(ratio_symbolic(s1, 5).den.degree() == 7);
  CHECK(frobenius_coeffs(1, Rational(-3), 20).terminating);
}

TEST_CASE("delta start bound holds on sampled axis points")
{
  for (auto [ell, n0, b] : {std::tuple{0, 6, 0.2}, {1, 5, 0.2}, {2, 3, 1.0 / 3}, {6, 3, 1.0 / 3}, {30, 3, 1.0 / 3}}) {
    for (int k = 0; k <= 200; ++k) {
      double t = std::pow(10.0, -2 + k * 0.025);
      auto led = frobenius_coeffs(ell, cplx(0.0, t), n0 + 2);
      REQUIRE(std::abs(led.deltaf[static_cast<std::size_t>(n0)]) <= b);
    }
  }
}

TEST_CASE("envelopes dominate eps and C on the imaginary axis")
{
  for (int ell : {0, 1, 2, 9})
    for (double t : {0.0, 0.3, 1.0, 4.0, 20.0, 150.0}) {
      auto led = frobenius_coeffs(ell, cplx(0.0, t), 400);
      int n0 = ell == 0 ? 6 : ell == 1 ? 5 : 3;
      for (int n = n0; n < 398; ++n) {
        double e, C;
        if (ell == 0) {
          e = 3.0 / 140 + 23.0 / (40.0 * n);
          C = 5.0 / 7 - 23.0 / (10.0 * n);
        } else if (ell == 1) {
          e = 3.0 / 140 + 5.0 / (8.0 * (n + 1));
          C = 5.0 / 7 - 5.0 / (2.0 * (n + 1));
        } else {
          e = 1.0 / 8;
          C = 5.0 / 12;
        }
        auto k = static_cast<std::size_t>(n);
        REQUIRE(std::abs(led.epsf[k]) <= e);
        REQUIRE(std::abs(led.Cf[k]) <= C);
      }
    }
}

TEST_CASE("ratio scans classify")
{
  CHECK(numeric_ratio_scan(0, Rational(2)).cls == RatioClass::tends_to_1);
  CHECK(numeric_ratio_scan(0, Rational(3)).cls == RatioClass::terminating);
  CHECK(numeric_ratio_scan(0, Rational(1)).cls == RatioClass::terminating);
  CHECK(numeric_ratio_scan(2, Rational(1, 2)).cls == RatioClass::tends_to_1);
  CHECK(numeric_ratio_scan(0, cplx(2.0, 0.0)).cls == RatioClass::tends_to_1);
  CHECK(numeric_ratio_scan(1, cplx(0.5, 1.5)).cls == RatioClass::tends_to_1);
  auto s = numeric_ratio_scan(0, Rational(7, 4));
  CHECK(std::abs(s.accelerated - 1.0) < 0.05);
  CHECK_THROWS_AS(numeric_ratio_scan(0, Rational(2), 50), std::invalid_argument);
}

TEST_CASE("exact ledger respects the resource cap")
{
  int saved = exact_n_max;
  exact_n_max = 30;
  try {
    frobenius_coeffs(0, Rational(1, 3), 60);
    FAIL("expected ResourceError");
  } catch (const ResourceError& e) {
    CHECK(e.ledger.partial);
    CHECK(e.ledger.N == 30);
  }
  exact_n_max = saved;
}

TEST_CASE("exact ledger fields are consistent")
{
  auto led = frobenius_coeffs(0, Rational(5, 2), 30);
  for (std::size_t n = 0; n + 1 < 30; ++n) {
    REQUIRE(led.r[n]);
    CHECK(*led.r[n] == led.a[n + 1] / led.a[n]);
    CHECK(*led.delta[n] == *led.r[n] / *led.rt[n] - 1);
  }
}

TEST_CASE("certificates close for every l class")
{
  for (std::string cls : {"0", "1", "ge2"}) {
    auto cert = certify_lemma(cls);
    INFO("class " << cls);
    for (const auto& r : cert.reports) {
      INFO(r.lemma_id << " " << r.tactic << " " << to_string(r.verdict) << " " << r.note);
      CHECK(r.verdict == Verdict::pass);
    }
    CHECK(cert.verdict == Verdict::pass);
    CHECK(cert.induction == Verdict::pass);
    auto v = find_verdict(cert, "ell" + cls + ".C-envelope");
    REQUIRE(v);
  }
  CHECK(certify_lemma("0").b == Rational(1, 5));
  CHECK(certify_lemma("ge2").start == 3);
  CHECK_THROWS_AS(certify_lemma("7"), std::invalid_argument);
}
