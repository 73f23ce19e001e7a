#include "blowup/checks.hpp"

#include "blowup/evolve.hpp"
#include "blowup/mode_scan.hpp"
#include "blowup/norms.hpp"
#include "blowup/parallel.hpp"
#include "blowup/profiles.hpp"
#include "blowup/report.hpp"
#include "blowup/resolvent.hpp"
#include "blowup/spectral_series.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

namespace blowup {

using nlohmann::json;

namespace {

struct Outcome {
  bool ok = true;
  bool inconclusive = false;
  std::string detail;
  json data = json::object();
};

std::string fmt(double x, int prec = 6)
{
  std::ostringstream os;
  os.precision(prec);
  os << x;
  return os.str();
}

json cplx_json(cplx z) { return json::array({z.real(), z.imag()}); }

// ------------------------------------------------------------------ 1

template <class S>
std::vector<S> point(int d, std::initializer_list<S> head)
{
  std::vector<S> p(static_cast<std::size_t>(d), S(0));
  std::copy(head.begin(), head.end(), p.begin());
  return p;
}

Outcome profile_exactness()
{
  Outcome o;
  int exact_points = 0, exact_nonzero = 0;
  double float_max = 0;
  for (int d : {7, 9}) {
    std::vector<Rational> m(static_cast<std::size_t>(d), Rational(0));
    m[0] = Rational(1, 3);
    m[static_cast<std::size_t>(d - 1)] = Rational(-1, 5);
    auto boost = boost_from_tanh_half(m);
    std::vector<Family<Rational>> fams{make_family<Rational>(FamilyKind::u_star, d),
                                       make_family<Rational>(FamilyKind::u_star, d, boost),
                                       make_family<Rational>(FamilyKind::ode_kappa, d),
                                       make_family<Rational>(FamilyKind::ode_kappa, d, boost)};
    fams[1].T = fams[3].T = Rational(3, 2);
    fams[1].x0[1] = fams[3].x0[1] = Rational(1, 10);
    const std::vector<std::pair<Rational, std::vector<Rational>>> samples{
        {Rational(1, 2), point<Rational>(d, {Rational(1, 4)})},
        {Rational(1, 3), point<Rational>(d, {Rational(1, 5), Rational(-1, 7), Rational(1, 9)})},
        {Rational(-1, 2), point<Rational>(d, {Rational(0), Rational(2, 5), Rational(0), Rational(-3, 8)})},
    };
    for (const auto& f : fams)
      for (const auto& [t, x] : samples) {
        Rational r = pde_residual(f, t, std::span<const Rational>(x));
        ++exact_points;
        if (r != 0) ++exact_nonzero;
      }

    std::vector<double> angles(static_cast<std::size_t>(d), 0.0);
    angles[0] = 0.2;
    angles[3] = -0.3;
    angles[static_cast<std::size_t>(d - 1)] = 0.1;
    for (auto kind : {FamilyKind::u_star, FamilyKind::ode_kappa}) {
      auto g = make_family<double>(kind, d, boost_from_angles<double>(angles));
      for (double t : {0.25, -0.4, 0.7}) {
        auto y = point<double>(d, {0.1, 0.0, 0.0, -0.2 * (1 - t)});
        float_max = std::max(float_max, std::abs(pde_residual(g, t, std::span<const double>(y))));
      }
    }
  }
  o.ok = exact_nonzero == 0 && float_max <= 1e-10;
  o.data = {{"exact-points", exact_points}, {"exact-nonzero", exact_nonzero}, {"float-max-residual", float_max}};
  o.detail = std::to_string(exact_points - exact_nonzero) + "/" + std::to_string(exact_points) +
             " exact residuals zero, float max " + fmt(float_max, 3);
  return o;
}

// ------------------------------------------------------------------ 2

Outcome potential_identity()
{
  Outcome o;
  auto c = profile_constants(9);
  // 2 (c1 - c2 x)/(c3 + x)^2 = 480 (7 - x)/(7 + 5x)^2 with x = rho^2, cross-multiplied
  UPoly num{c.c1, -c.c2}, den{c.c3, Rational(1)};
  UPoly lhs = UPoly{Rational(2)} * num * UPoly{Rational(7), Rational(5)} * UPoly{Rational(7), Rational(5)};
  UPoly rhs = UPoly{Rational(480) * 7, Rational(-480)} * den * den;
  bool identity = lhs == rhs;
  // and the family evaluator reproduces it at a rational point
  auto f = make_family<Rational>(FamilyKind::u_star, 9);
  auto xi = point<Rational>(9, {Rational(3, 4)});
  Rational x = Rational(9, 16);
  bool eval_ok = 2 * eval_profile(f, std::span<const Rational>(xi)) == 480 * (7 - x) / ((7 + 5 * x) * (7 + 5 * x));
  o.ok = identity && eval_ok;
  o.data = {{"polynomial-identity", identity}, {"evaluator-consistent", eval_ok}, {"lhs", lhs.str("x")},
            {"rhs", rhs.str("x")}};
  o.detail = std::string("cross-multiplied identity ") + (identity ? "holds" : "fails") + ", evaluator " +
             (eval_ok ? "consistent" : "inconsistent");
  return o;
}

// ------------------------------------------------------------------ 3

Outcome recurrence_fidelity()
{
  Outcome o;
  UPoly L{Rational(0), Rational(1)};
  auto k = [](long v) { return UPoly{Rational(v)}; };
  auto s0 = frobenius_symbolic(0, 6);
  auto s1 = frobenius_symbolic(1, 6);
  UPoly a2_0 = UPoly{Rational(1, 5544)} * ((L - k(3)) * (L - k(1)) * (k(7) * L * L + k(126) * L + k(680)));
  UPoly a3_0 = UPoly{Rational(1, 3027024)} *
               ((L - k(3)) * (L - k(1)) *
                (k(49) * L * L * L * L + k(1519) * L * L * L + k(18494) * L * L + k(84224) * L + k(46080)));
  UPoly a2_1 = UPoly{Rational(1, 8008)} * (L * (L - k(1)) * (k(7) * L * L + k(133) * L + k(786)));
  bool e20 = s0.as[2] == a2_0, e30 = s0.as[3] == a3_0, e21 = s1.as[2] == a2_1;
  o.ok = e20 && e30 && e21;
  o.data = {{"a2(0)", e20}, {"a3(0)", e30}, {"a2(1)", e21}, {"a2(0)-recurrence", s0.as[2].str("lambda")},
            {"a3(0)-recurrence", s0.as[3].str("lambda")}, {"a2(1)-recurrence", s1.as[2].str("lambda")}};
  o.detail = std::string("a2(0,l) ") + (e20 ? "=" : "!=") + ", a3(0,l) " + (e30 ? "=" : "!=") + ", a2(1,l) " +
             (e21 ? "=" : "!=") + " closed forms";
  return o;
}

// ------------------------------------------------------------------ 4

Outcome lemma_certificates()
{
  Outcome o;
  struct Want {
    std::string cls;
    Rational b;
    int start;
    std::string eps, C;
  };
  const std::vector<Want> wants{{"0", Rational(1, 5), 6, "3/140 + 23/(40n)", "5/7 - 23/(10n)"},
                                {"1", Rational(1, 5), 5, "3/140 + 5/(8(n+1))", "5/7 - 5/(2(n+1))"},
                                {"ge2", Rational(1, 3), 3, "1/8", "5/12"}};
  std::vector<LemmaCertificate> certs(wants.size());
  parallel_for(wants.size(), [&](std::size_t i) { certs[i] = certify_lemma(wants[i].cls); });
  std::vector<std::string> parts;
  for (std::size_t i = 0; i < wants.size(); ++i) {
    const auto& w = wants[i];
    const auto& c = certs[i];
    bool constants = c.b == w.b && c.start == w.start && c.eps_envelope == w.eps && c.C_envelope == w.C;
    bool subs = std::all_of(c.reports.begin(), c.reports.end(), [](const auto& r) { return r.verdict == Verdict::pass; });
    bool hurwitz = true;
    int hurwitz_degree = -1;
    if (w.cls == "0") {
      auto it = std::find_if(c.reports.begin(), c.reports.end(), [](const auto& r) { return r.tactic == "routh-hurwitz"; });
      hurwitz = it != c.reports.end() && it->verdict == Verdict::pass;
      if (it != c.reports.end()) hurwitz_degree = UPoly::from_poly(it->polynomial).degree();
      hurwitz = hurwitz && hurwitz_degree == 10;
    }
    bool ok = c.verdict == Verdict::pass && c.induction == Verdict::pass && constants && subs && hurwitz;
    o.ok = o.ok && ok;
    o.data[w.cls] = {{"verdict", to_string(c.verdict)},        {"induction", to_string(c.induction)},
                     {"b", c.b.get_str()},                     {"start", c.start},
                     {"eps-envelope", c.eps_envelope},         {"C-envelope", c.C_envelope},
                     {"sub-certificates", c.reports.size()},   {"all-sub-certificates-pass", subs}};
    if (w.cls == "0") o.data[w.cls]["hurwitz-degree"] = hurwitz_degree;
    parts.push_back(w.cls + ":" + to_string(c.verdict));
  }
  o.detail = "certificates";
  for (const auto& p : parts) o.detail += " " + p;
  o.detail += ", Hurwitz degree " + std::to_string(o.data["0"].value("hurwitz-degree", -1));
  return o;
}

// ------------------------------------------------------------------ 5

std::vector<ScanRegion> scan_regions_for(int ell)
{
  if (ell == 0) return {{0, 4, -2, 2, 200, 200}};
  if (ell == 1) return {{-0.25, 2, -2, 2, 200, 200}};
  return {{0, 5, -3, 3, 200, 200}};
}

Outcome spectrum_recovery()
{
  Outcome o;
  std::vector<int> ells{0, 1, 2, 3, 4, 5, 6};
  std::vector<ScanResult> res(ells.size());
  for (std::size_t i = 0; i < ells.size(); ++i) res[i] = eigenvalue_scan(9, ells[i], scan_regions_for(ells[i]).front());
  auto matches = [](const ScanResult& s, std::vector<double> want) {
    if (s.roots.size() != want.size()) return false;
    for (std::size_t k = 0; k < want.size(); ++k)
      if (std::abs(s.roots[k].lambda - want[k]) > 1e-6) return false;
    return true;
  };
  bool l0 = matches(res[0], {1, 3}), l1 = matches(res[1], {0, 1});
  bool rest = true;
  for (std::size_t i = 2; i < ells.size(); ++i)
    for (const auto& r : res[i].roots)
      if (r.lambda.real() >= 0) rest = false;
  o.ok = l0 && l1 && rest;
  for (std::size_t i = 0; i < ells.size(); ++i) {
    json roots = json::array();
    for (const auto& r : res[i].roots) roots.push_back({{"lambda", cplx_json(r.lambda)}, {"residual", r.residual}});
    o.data["ell" + std::to_string(ells[i])] = {{"roots", roots}, {"winding", res[i].total_winding}};
  }
  auto list = [](const ScanResult& s) {
    std::string t = "{";
    for (std::size_t k = 0; k < s.roots.size(); ++k) t += (k ? ", " : "") + fmt(s.roots[k].lambda.real(), 10);
    return t + "}";
  };
  o.detail = "l=0 " + list(res[0]) + ", l=1 " + list(res[1]) + ", l=2..6 " + (rest ? "no roots" : "roots found");
  return o;
}

// ------------------------------------------------------------------ 6

// zeros of the connection coefficient on lambda = k/100 in [0, 4]: exact zeros plus sign changes
// between neighbours that do not straddle a pole of Gamma(a + b - c)
std::vector<double> coefficient_zeros(int d, int ell)
{
  std::vector<double> zeros;
  const int n = 400;
  double prev = 0;
  double prev_lam = 0;
  for (int i = 0; i <= n; ++i) {
    double lam = i / 100.0;
    auto k = connection_coefficient_kappa(d, ell, cplx(lam, 0));
    double v = k.value.real();
    if (v == 0) zeros.push_back(lam);
    else if (i > 0 && prev != 0 && (v > 0) != (prev > 0)) {
      // a + b - c = lambda + (5 - d)/2 crosses a nonpositive integer: pole, not a zero
      double s0 = prev_lam + (5.0 - d) / 2, s1 = lam + (5.0 - d) / 2;
      double m = std::ceil(s0);
      bool pole = m <= s1 && m <= 0;
      if (!pole) zeros.push_back(0.5 * (lam + prev_lam));
    }
    prev = v;
    prev_lam = lam;
  }
  return zeros;
}

Outcome kappa_spectrum_check()
{
  Outcome o;
  int mismatches = 0;
  for (int d : {7, 9}) {
    for (int ell = 0; ell <= 6; ++ell) {
      auto spec = kappa_spectrum(d, ell, 0);
      std::vector<double> want;
      if (ell == 0) want = {1};
      if (ell == 1) want = {0};
      auto zeros = coefficient_zeros(d, ell);
      // the scan window [0, 4] covers every eigenvalue in the half-plane
      bool ok = spec == want && zeros.size() == spec.size();
      for (std::size_t k = 0; ok && k < zeros.size(); ++k) ok = std::abs(zeros[k] - spec[k]) < 1e-12;
      if (!ok) ++mismatches;
      o.data["d" + std::to_string(d)]["ell" + std::to_string(ell)] = {{"spectrum", spec}, {"coefficient-zeros", zeros}};
    }
  }
  o.ok = mismatches == 0;
  o.detail = "d in {7,9}, l = 0..6: " + std::to_string(mismatches) + " mismatches; expected {1}, {0}, empty";
  return o;
}

// ------------------------------------------------------------------ 7

Outcome witness_integrals()
{
  Outcome o;
  auto w = multiplicity_witnesses(9);
  bool c_ok = w.C > 0 && w.C < 4e-8;
  bool const_ok = std::abs(w.constant_term - 864) <= 1;
  bool log_ok = std::abs(w.log_coefficient + 3456) <= 5;
  o.ok = c_ok && const_ok && log_ok;
  o.data = {{"C", w.C},
            {"C-error", w.C_error},
            {"constant-term", w.constant_term},
            {"log-coefficient", w.log_coefficient},
            {"log-coefficient-three-term-fit", w.log_coefficient_leading_fit},
            {"fit-residual", w.fit_residual},
            {"origin-exponent-lambda1", w.exponent_l0},
            {"origin-exponent-lambda0", w.exponent_l1},
            {"conclusive", w.conclusive}};
  o.detail = "C = " + fmt(w.C, 6) + ", constant " + fmt(w.constant_term, 8) + ", log slope " + fmt(w.log_coefficient, 7);
  return o;
}

// ------------------------------------------------------------------ 8

Outcome resolvent_check()
{
  Outcome o;
  std::vector<double> grid;
  const int n = 400;
  for (int i = 0; i < n; ++i) grid.push_back(1e-3 + (1 - 2e-3) * i / (n - 1));
  const std::vector<std::pair<std::string, std::function<double(double)>>> forcings{
      {"one", [](double) { return 1.0; }},
      {"poly", [](double r) { return 1 + r * r - 0.5 * r * r * r * r; }},
      {"gauss", [](double r) { return std::exp(-r * r); }}};
  double worst = 0, wworst = 0;
  for (int ell : {0, 1, 2}) {
    for (const auto& [name, g0] : forcings) {
      auto g = [ell, &g0](double r) { return std::pow(r, ell) * g0(r); };
      auto m = solve_resolvent_mode(9, ell, g, grid);
      worst = std::max(worst, m.max_residual);
      o.data["ell" + std::to_string(ell)][name] = {{"max-residual", m.max_residual}, {"origin-exponent", m.origin_exponent}};
    }
    auto fs = hypergeo_fundamental(ell);
    double wmax = 0;
    for (int k = 1; k <= 9; ++k) {
      double r = k / 10.0;
      double w = fs.wronskian(r) * std::pow(1 - r * r, 1.5) * r * r;
      wmax = std::max(wmax, std::abs(w - fs.C) / std::abs(fs.C));
    }
    wworst = std::max(wworst, wmax);
    o.data["ell" + std::to_string(ell)]["wronskian-deviation"] = wmax;
  }
  o.ok = worst <= 1e-8 && wworst <= 1e-10;
  o.data["interval"] = {grid.front(), grid.back()};
  o.detail = "max ODE residual " + fmt(worst, 3) + " on [1e-3, 1-1e-3], Wronskian deviation " + fmt(wworst, 3);
  return o;
}

// ------------------------------------------------------------------ 9

Outcome dissipativity_check(int count, int max_degree, int k)
{
  Outcome o;
  std::size_t failures = 0;
  std::vector<std::string> parts;
  for (auto [d, seed] : {std::pair{9, 42}, std::pair{7, 43}}) {
    auto rep = dissipativity_corpus(d, k, count, static_cast<std::uint64_t>(seed), max_degree);
    failures += rep.failures.size();
    o.data["d" + std::to_string(d)] = {{"c", dissipativity_constant(d).get_str()},
                                       {"k", k},
                                       {"count", count},
                                       {"seed", seed},
                                       {"max-degree", max_degree},
                                       {"max-gap", rep.max_gap.get_str()},
                                       {"max-gap-float", rep.max_gap.get_d()},
                                       {"ratio-range", {rep.ratio_min, rep.ratio_max}},
                                       {"failures", rep.failures}};
    parts.push_back("d=" + std::to_string(d) + " max gap " + fmt(rep.max_gap.get_d(), 4));
  }
  o.ok = failures == 0;
  o.detail = std::to_string(count) + " pairs each, " + std::to_string(failures) + " failures; " + parts[0] + ", " + parts[1];
  return o;
}

// ------------------------------------------------------------------ 10

RadialStatePair plus_mode(const RadialSystem& sys, double eps)
{
  auto s = sys.static_state();
  auto m = sys.unstable_modes().front();
  for (std::size_t i = 0; i < s.psi1.size(); ++i) {
    s.psi1[i] += eps * m.first[i];
    s.psi2[i] += eps * m.second[i];
  }
  return s;
}

Outcome growth_rates(int N)
{
  Outcome o;
  EvolveOptions eo;
  eo.tau_end = 2;
  RadialSystem us(FamilyKind::u_star, 9, N);
  RadialSystem ks(FamilyKind::ode_kappa, 9, N);
  auto tu = us.evolve(plus_mode(us, 1e-4), eo);
  auto tk = ks.evolve(plus_mode(ks, 1e-4), eo);
  auto fu = fit_rate(tu, 0, 2, 0);
  auto fk = fit_rate(tk, 0, 2, 0);
  o.ok = std::abs(fu.exponent - 3) <= 0.2 && std::abs(fk.exponent - 1) <= 0.1 && !tu.diverged && !tk.diverged;
  o.data = {{"N", N},
            {"h-rate", fu.exponent},
            {"h-fit-residual", fu.residual},
            {"kappa-rate", fk.exponent},
            {"kappa-fit-residual", fk.residual},
            {"seed-amplitude", 1e-4}};
  o.detail = "h-mode rate " + fmt(fu.exponent, 7) + ", kappa mode rate " + fmt(fk.exponent, 7) + " on [0, 2], N = " +
             std::to_string(N);
  return o;
}

// ------------------------------------------------------------------ 11

Outcome stability_experiments()
{
  Outcome o;
  auto zero = [](double) { return 0.0; };
  auto fk = [](double r) { return 1e-3 * (1 - r * r) * (1 - r * r); };
  auto gk = [](double r) { return 5e-4 * r * r * (1 - r * r); };
  auto fu = [](double r) { return 1e-4 * (1 - r * r) * (1 - r * r); };

  // (a) kappa family, both dimensions
  bool a_ok = true;
  double min_psi = INFINITY;
  for (int d : {7, 9}) {
    TuneOptions opt;
    auto r = tune(FamilyKind::ode_kappa, d, fk, gk, opt);
    bool ok = r.verdict == "pass" && r.monotone_after_2 && r.final_distance < 0.1 * r.peak_distance;
    a_ok = a_ok && ok;
    min_psi = std::min(min_psi, r.min_psi1);
    o.data["a"]["d" + std::to_string(d)] = to_json(r);
  }

  // (b) u-star family: tuned boundedness to tau = 8, detuned growth
  TuneOptions opt;
  opt.tau_end = 8;
  opt.bound_tau = 8;
  auto r = tune(FamilyKind::u_star, 9, fu, zero, opt);
  min_psi = std::min(min_psi, r.min_psi1);
  RadialSystem us(FamilyKind::u_star, 9, opt.N);
  EvolveOptions eo;
  eo.tau_end = 3;
  auto off = us.evolve(us.upsilon_data(fu, zero, r.T, r.alpha + 1e-5), eo);
  auto growth = fit_rate(off, 1, 3, 0);
  bool b_ok = r.verdict == "pass" && r.bounded && r.max_ratio <= 2 && std::abs(growth.exponent - 3) <= 0.3;
  o.data["b"] = to_json(r);
  o.data["b"]["detuned-growth-rate"] = growth.exponent;
  o.data["b"]["detuned-fit-window"] = {1, 3};

  // (c) positivity on all tuned runs
  bool c_ok = min_psi > 0;
  o.data["c"] = {{"min-psi1", min_psi}};
  o.ok = a_ok && b_ok && c_ok;
  o.detail = std::string("(a) ") + (a_ok ? "pass" : "fail") + ", (b) max ratio " + fmt(r.max_ratio, 4) +
             " to tau 8, detuned rate " + fmt(growth.exponent, 5) + ", (c) min psi1 " + fmt(min_psi, 5);
  return o;
}

// ------------------------------------------------------------------ 12

bool is_eigen_class(RatioClass c) { return c == RatioClass::tends_to_other || c == RatioClass::terminating; }

Outcome cross_method()
{
  Outcome o;
  const double lo = -0.25, hi = 4;
  int unconfirmed = 0, unmatched = 0, ambiguous = 0;
  for (int ell : {0, 1}) {
    auto scan = eigenvalue_scan(9, ell, {lo, hi, -0.5, 0.5, 170, 40});
    std::vector<double> roots;
    for (const auto& r : scan.roots)
      if (std::abs(r.lambda.imag()) < 1e-8) roots.push_back(r.lambda.real());
    json key = "ell" + std::to_string(ell);
    // scan -> classifier: rational neighbour of each root
    json confirmed = json::array();
    for (double r : roots) {
      Rational q = make_rational(std::lround(r * 1e6), 1000000);
      auto cls = numeric_ratio_scan(ell, q).cls;
      confirmed.push_back({{"lambda", r}, {"class", to_string(cls)}});
      if (!is_eigen_class(cls)) ++unconfirmed;
    }
    // classifier -> scan on the sweep lambda = k/40
    json hits = json::array();
    std::vector<Rational> sweep;
    for (long k = -10; k <= 160; ++k) sweep.push_back(make_rational(k, 40));
    std::vector<RatioClass> cls(sweep.size());
    parallel_for(sweep.size(), [&](std::size_t i) { cls[i] = numeric_ratio_scan(ell, sweep[i]).cls; });
    for (std::size_t i = 0; i < sweep.size(); ++i) {
      if (cls[i] == RatioClass::inconclusive) ++ambiguous;
      if (!is_eigen_class(cls[i])) continue;
      double lam = sweep[i].get_d();
      hits.push_back(lam);
      bool near = std::any_of(roots.begin(), roots.end(), [&](double r) { return std::abs(r - lam) < 1e-6; });
      if (!near) ++unmatched;
    }
    o.data[key] = {{"scan-roots", roots}, {"classifier-on-roots", confirmed}, {"classifier-eigen-points", hits}};
  }
  o.ok = unconfirmed == 0 && unmatched == 0;
  o.inconclusive = o.ok && ambiguous > 0;
  o.data["ambiguous-sweep-points"] = ambiguous;
  o.detail = std::to_string(unconfirmed) + " scan roots unconfirmed, " + std::to_string(unmatched) +
             " classifier hits without a scan root, " + std::to_string(ambiguous) + " ambiguous sweep points";
  return o;
}

// ------------------------------------------------------------------ stress extras

Outcome stress_scans()
{
  Outcome o;
  int found = 0;
  for (int ell = 7; ell <= 20; ++ell) {
    auto s = eigenvalue_scan(9, ell, {0, 5, -3, 3, 80, 80});
    int n = 0;
    for (const auto& r : s.roots)
      if (r.lambda.real() >= 0) ++n;
    found += n;
    o.data["ell" + std::to_string(ell)] = n;
  }
  o.ok = found == 0;
  o.detail = "l = 7..20: " + std::to_string(found) + " roots with Re >= 0";
  return o;
}

const std::vector<CheckInfo> catalog{
    {1, "profile-exactness", "profiles/pde-residual", 5},
    {2, "potential-identity", "profiles/potential-d9", 1},
    {3, "recurrence-fidelity", "spectral-series/closed-form-coefficients", 5},
    {4, "lemma-certificates", "spectral-series/delta-induction", 600},
    {5, "spectrum-recovery", "mode-scan/unstable-spectrum-d9", 300},
    {6, "kappa-spectrum", "mode-scan/kappa-connection", 10},
    {7, "witness-integrals", "resolvent/multiplicity-witnesses", 30},
    {8, "resolvent", "resolvent/density-solve", 60},
    {9, "dissipativity", "norms/dissipativity", 600},
    {10, "linear-growth-rates", "evolve/linear-growth", 120},
    {11, "stability-experiments", "evolve/tuned-stability", 600},
    {12, "cross-method-consistency", "mode-scan/ratio-classifier", 120},
    {13, "dissipativity-quick", "norms/dissipativity", 120},
    {14, "stress-norms-degree-10", "norms/dissipativity", 0},
    {15, "stress-scans-high-ell", "mode-scan/unstable-spectrum-d9", 0},
    {16, "stress-evolve-N2048", "evolve/linear-growth", 0},
};

Outcome dispatch(int id)
{
  switch (id) {
  case 1: return profile_exactness();
  case 2: return potential_identity();
  case 3: return recurrence_fidelity();
  case 4: return lemma_certificates();
  case 5: return spectrum_recovery();
  case 6: return kappa_spectrum_check();
  case 7: return witness_integrals();
  case 8: return resolvent_check();
  case 9: return dissipativity_check(500, 6, 5);
  case 10: return growth_rates(512);
  case 11: return stability_experiments();
  case 12: return cross_method();
  case 13: return dissipativity_check(50, 6, 5);
  case 14: return dissipativity_check(100, 10, 5);
  case 15: return stress_scans();
  case 16: return growth_rates(2048);
  default: throw std::invalid_argument("unknown check id " + std::to_string(id));
  }
}

} // namespace

const std::vector<CheckInfo>& check_catalog() { return catalog; }

CheckResult run_check(int id)
{
  auto it = std::find_if(catalog.begin(), catalog.end(), [id](const CheckInfo& c) { return c.id == id; });
  if (it == catalog.end()) throw std::invalid_argument("unknown check id " + std::to_string(id));
  CheckResult r;
  r.id = id;
  r.name = it->name;
  r.anchor = it->anchor;
  r.budget_seconds = it->budget_seconds;
  r.exploratory = id >= 14;
  auto t0 = std::chrono::steady_clock::now();
  try {
    Outcome o = dispatch(id);
    r.verdict = !o.ok ? Verdict::fail : o.inconclusive ? Verdict::inconclusive : Verdict::pass;
    r.detail = o.detail;
    r.data = std::move(o.data);
  } catch (const std::exception& e) {
    r.verdict = Verdict::fail;
    r.detail = std::string("error: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (r.budget_seconds > 0 && r.seconds > r.budget_seconds && r.verdict == Verdict::pass) {
    r.verdict = Verdict::fail;
    r.detail += "; over the runtime budget";
  }
  return r;
}

std::vector<int> suite_checks(const std::string& name)
{
  if (name == "quick") return {1, 2, 6, 13};
  if (name == "paper-checks") return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
  if (name == "stress") return {14, 15, 16};
  throw std::invalid_argument("unknown suite: " + name);
}

Verdict overall(const std::vector<CheckResult>& results)
{
  bool inconclusive = false;
  for (const auto& r : results) {
    if (r.exploratory) continue;
    if (r.verdict == Verdict::fail) return Verdict::fail;
    if (r.verdict == Verdict::inconclusive) inconclusive = true;
  }
  return inconclusive ? Verdict::inconclusive : Verdict::pass;
}

json to_json(const CheckResult& r)
{
  return {{"id", r.id},
          {"name", r.name},
          {"anchor", r.anchor},
          {"verdict", to_string(r.verdict)},
          {"exploratory", r.exploratory},
          {"seconds", r.seconds},
          {"budget-seconds", r.budget_seconds},
          {"detail", r.detail},
          {"data", r.data}};
}

std::string summary_line(const CheckResult& r)
{
  std::string v = r.verdict == Verdict::pass ? "PASS" : r.verdict == Verdict::fail ? "FAIL" : "INCONCLUSIVE";
  std::string budget = r.budget_seconds > 0 ? " / " + fmt(r.budget_seconds, 4) + " s" : "";
  return "[" + v + "] " + std::to_string(r.id) + " " + r.name + " (" + fmt(r.seconds, 3) + " s" + budget + "): " + r.detail;
}

} // namespace blowup
