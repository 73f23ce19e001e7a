#include "blowup/spectral_series.hpp"

#include <chrono>
#include <cmath>
#include <future>

namespace blowup {

namespace {

const std::vector<std::string> kNLL{"n", "l", "lambda"};

Poly c3(long v) { return Poly::constant(kNLL, v); }
const Poly& Vn() { static Poly p = Poly::variable(kNLL, 0); return p; }
const Poly& Vl() { static Poly p = Poly::variable(kNLL, 1); return p; }
const Poly& Vlam() { static Poly p = Poly::variable(kNLL, 2); return p; }

void check_index(int n)
{
  if (n < -1) throw std::out_of_range("recurrence index n must be >= -1");
}

bool form_matches(HeunForm f, int ell) { return (f == HeunForm::low) == (ell <= 1); }

UPoly lambda_poly(const Poly& p, int n, int ell)
{
  return UPoly::from_poly(p.fix(0, n).fix(0, ell), 0);
}

} // namespace

HeunParams heun_params(HeunForm form, int ell)
{
  HeunParams h;
  h.form = form;
  h.ell = ell;
  h.gamma = make_rational(9 + 2 * ell, 2);
  h.delta = UPoly{-1, 1};
  h.alpha = UPoly{make_rational(ell - 3, 2), Rational(1, 2)};
  if (form == HeunForm::low) {
    h.mu = Rational(-7, 5);
    h.eps = -6;
    h.beta = UPoly{make_rational(ell - 4, 2), Rational(1, 2)};
    // q = -(7(l-3)(l+8) + 7 ell^2 + (14 l + 95) ell)/20
    h.q = Rational(-1, 20) * (Rational(7) * (UPoly{-3, 1} * UPoly{8, 1}) + UPoly{Rational(7 * ell * ell + 95 * ell), Rational(14 * ell)});
  } else {
    h.mu = Rational(12, 5);
    h.eps = Rational(3, 2);
    h.beta = UPoly{make_rational(ell + 11, 2), Rational(1, 2)};
    // +7 lambda^2: the sign that reproduces the recurrence
    h.q = Rational(1, 20) * UPoly{Rational(17 * ell * ell + 110 * ell - 303), Rational(24 * ell + 80), Rational(7)};
  }
  return h;
}

const RecurrencePolys& recurrence_polys(HeunForm form)
{
  static const RecurrencePolys low = [] {
    const Poly &n = Vn(), &l = Vl(), &L = Vlam();
    RecurrencePolys r;
    r.NA = c3(7) * L * (L + c3(9)) + c3(7) * l * l + l * (c3(8) * n + c3(14) * L + c3(103)) + c3(8) * n * n +
           c3(4) * (c3(7) * L + c3(34)) * n - c3(40);
    r.NB = c3(5) * (L + l + c3(2) * n - c3(4)) * (L + l + c3(2) * n - c3(3));
    r.DA = c3(14) * (n + c3(2)) * (c3(2) * l + c3(2) * n + c3(11));
    return r;
  }();
  static const RecurrencePolys high = [] {
    const Poly &n = Vn(), &l = Vl(), &L = Vlam();
    RecurrencePolys r;
    r.NA = c3(68) * n * n + (c3(48) * L + c3(68) * l + c3(356)) * n + c3(7) * L * L + c3(17) * l * l +
           c3(24) * L * l + c3(128) * L + c3(178) * l - c3(15);
    r.NB = c3(-5) * (c3(2) * n + L + l + c3(11)) * (c3(2) * n + L + l - c3(3));
    r.DA = c3(24) * (n + c3(2)) * (c3(2) * n + c3(2) * l + c3(11));
    return r;
  }();
  return form == HeunForm::low ? low : high;
}

RecurrenceCoeffs recurrence_coeffs(HeunForm form, int ell, int n, const Rational& lambda)
{
  check_index(n);
  const auto& P = recurrence_polys(form);
  Rational nn(n), ll(ell);
  Rational da = P.DA.evaluate({nn, ll, lambda});
  return {P.NA.evaluate({nn, ll, lambda}) / da, P.NB.evaluate({nn, ll, lambda}) / da, !form_matches(form, ell)};
}

std::pair<cplx, cplx> recurrence_coeffs(HeunForm form, int ell, int n, cplx lambda)
{
  check_index(n);
  double N = n, l = ell;
  cplx L = lambda;
  if (form == HeunForm::low) {
    cplx na = 7.0 * L * (L + 9.0) + 7 * l * l + l * (8 * N + 14.0 * L + 103.0) + 8 * N * N + 4.0 * (7.0 * L + 34.0) * N - 40.0;
    cplx nb = 5.0 * (L + l + 2 * N - 4.0) * (L + l + 2 * N - 3.0);
    double da = 14 * (N + 2) * (2 * l + 2 * N + 11);
    return {na / da, nb / da};
  }
  cplx na = 68 * N * N + (48.0 * L + 68 * l + 356.0) * N + 7.0 * L * L + 17 * l * l + 24.0 * L * l + 128.0 * L + 178.0 * l - 15.0;
  cplx nb = -5.0 * (2 * N + L + l + 11.0) * (2 * N + L + l - 3.0);
  double da = 24 * (N + 2) * (2 * N + 2 * l + 11);
  return {na / da, nb / da};
}

std::pair<UPoly, UPoly> recurrence_coeffs_symbolic(HeunForm form, int ell, int n)
{
  check_index(n);
  const auto& P = recurrence_polys(form);
  Rational da = P.DA.evaluate({Rational(n), Rational(ell), Rational(0)});
  Rational inv = 1 / da;
  return {inv * lambda_poly(P.NA, n, ell), inv * lambda_poly(P.NB, n, ell)};
}

std::pair<Rational, Rational> characteristic_roots(HeunForm form)
{
  // t^2 - (2/7) t - 5/7 = (t - 1)(t + 5/7);  t^2 - (17/12) t + 5/12 = (t - 1)(t - 5/12)
  return form == HeunForm::low ? std::pair{Rational(1), Rational(-5, 7)} : std::pair{Rational(1), Rational(5, 12)};
}

// ------------------------------------------------------------------ quasi-solutions

QuasiPolys quasi_polys(int ell_class)
{
  const Poly &n = Vn(), &l = Vl(), &L = Vlam();
  QuasiPolys q;
  if (ell_class == 0) {
    q.p = L * L + (c3(4) * n + c3(9)) * L + c3(4) * (n + c3(1)) * (n + c3(1));
    q.q = c3(2) * (c3(2) * n + c3(9)) * (n + c3(1));
  } else if (ell_class == 1) {
    q.p = (n + c3(4)) * L * L + (n + c3(4)) * (c3(4) * n + c3(11)) * L + c3(2) * (c3(2) * n + c3(11)) * (n + c3(1)) * (n + c3(1));
    q.q = c3(2) * (c3(2) * n + c3(11)) * (n + c3(1)) * (n + c3(4));
  } else {
    Poly w = c3(2) * n + c3(2) * l + c3(9);
    q.p = c3(14) * L * L + c3(16) * L * (c3(6) * n + c3(3) * l + c3(10)) + c3(17) * l * w + c3(48) * (n - c3(1)) * w;
    q.q = c3(48) * (n + c3(1)) * w;
  }
  return q;
}

template <class T>
static T quasi_value(int ell, T n, T L)
{
  if (ell == 0)
    return L * L / (T(2) * (T(2) * n + T(9)) * (n + T(1))) + L * (T(4) * n + T(9)) / (T(2) * (T(2) * n + T(9)) * (n + T(1))) +
           (T(2) * n + T(2)) / (T(2) * n + T(9));
  if (ell == 1)
    return L * L / (T(2) * (T(2) * n + T(11)) * (n + T(1))) +
           (T(4) * n + T(11)) * L / (T(2) * (T(2) * n + T(11)) * (n + T(1))) + (n + T(1)) / (n + T(4));
  T l(ell);
  T w = T(2) * n + T(2) * l + T(9);
  return T(7) * L * L / (T(24) * (n + T(1)) * w) + L * (T(6) * n + T(3) * l + T(10)) / (T(3) * (n + T(1)) * w) +
         T(17) * l / (T(48) * (n + T(1))) + (n - T(1)) / (n + T(1));
}

Rational quasi_solution(int ell, int n, const Rational& lambda)
{
  if (n < 0) throw std::out_of_range("quasi-solution index must be >= 0");
  Rational v = quasi_value<Rational>(ell, Rational(n), lambda);
  v.canonicalize();
  return v;
}

cplx quasi_solution(int ell, int n, cplx lambda)
{
  if (n < 0) throw std::out_of_range("quasi-solution index must be >= 0");
  return quasi_value<cplx>(ell, cplx(n), lambda);
}

// ------------------------------------------------------------------ ledgers

CoefficientLedger frobenius_coeffs(int ell, const Rational& lambda, int N, std::optional<HeunForm> form)
{
  if (N < 3) throw std::invalid_argument("frobenius_coeffs needs N >= 3");
  CoefficientLedger L;
  L.mode = "exact-at-rational-lambda";
  L.form = form.value_or(default_form(ell));
  L.ell = ell;
  int upto = std::min(N, exact_n_max);
  L.N = upto;
  L.a.assign(static_cast<std::size_t>(upto) + 1, Rational(0));
  L.a[0] = 1;
  Rational prev = 0; // a_{-1}
  for (int n = -1; n + 2 <= upto; ++n) {
    auto [A, B, ex] = recurrence_coeffs(L.form, ell, n, lambda);
    const Rational& an1 = L.a[static_cast<std::size_t>(n + 1)];
    const Rational& an = n >= 0 ? L.a[static_cast<std::size_t>(n)] : prev;
    L.a[static_cast<std::size_t>(n + 2)] = A * an1 + B * an;
  }
  for (int n = 0; n < upto; ++n)
    if (L.a[static_cast<std::size_t>(n)] == 0 && L.a[static_cast<std::size_t>(n + 1)] == 0) {
      L.terminating = true;
      L.terminating_index = n;
      break;
    }
  std::size_t M = static_cast<std::size_t>(upto);
  L.r.resize(M);
  L.rt.resize(M);
  L.delta.resize(M);
  L.eps.resize(M);
  L.C.resize(M);
  for (int n = 0; n < upto; ++n) {
    std::size_t k = static_cast<std::size_t>(n);
    if (L.a[k] != 0) L.r[k] = Rational(L.a[k + 1] / L.a[k]);
    Rational rt = quasi_solution(ell, n, lambda);
    L.rt[k] = rt;
    if (L.r[k] && rt != 0) L.delta[k] = Rational(*L.r[k] / rt - 1);
  }
  for (int n = 0; n + 1 < upto; ++n) {
    std::size_t k = static_cast<std::size_t>(n);
    Rational rt0 = *L.rt[k], rt1 = *L.rt[k + 1];
    if (rt0 == 0 || rt1 == 0) continue;
    auto [A, B, ex] = recurrence_coeffs(L.form, ell, n, lambda);
    L.eps[k] = Rational((A * rt0 + B) / (rt0 * rt1) - 1);
    L.C[k] = Rational(B / (rt0 * rt1));
  }
  if (upto < N) {
    L.partial = true;
    throw ResourceError("exact ledger truncated at N_max = " + std::to_string(exact_n_max), std::move(L));
  }
  return L;
}

CoefficientLedger frobenius_coeffs(int ell, cplx lambda, int N, std::optional<HeunForm> form)
{
  if (N < 3) throw std::invalid_argument("frobenius_coeffs needs N >= 3");
  CoefficientLedger L;
  L.mode = "float-at-complex-lambda";
  L.form = form.value_or(default_form(ell));
  L.ell = ell;
  L.N = N;
  L.af.assign(static_cast<std::size_t>(N) + 1, cplx(0));
  L.af[0] = 1;
  for (int n = -1; n + 2 <= N; ++n) {
    auto [A, B] = recurrence_coeffs(L.form, ell, n, lambda);
    cplx an = n >= 0 ? L.af[static_cast<std::size_t>(n)] : cplx(0);
    L.af[static_cast<std::size_t>(n + 2)] = A * L.af[static_cast<std::size_t>(n + 1)] + B * an;
  }
  std::size_t M = static_cast<std::size_t>(N);
  L.rf.assign(M, cplx(NAN, NAN));
  L.rtf.resize(M);
  L.deltaf.assign(M, cplx(NAN, NAN));
  L.epsf.assign(M, cplx(NAN, NAN));
  L.Cf.assign(M, cplx(NAN, NAN));
  for (std::size_t k = 0; k < M; ++k) {
    if (L.af[k] != cplx(0)) L.rf[k] = L.af[k + 1] / L.af[k];
    L.rtf[k] = quasi_solution(ell, static_cast<int>(k), lambda);
    L.deltaf[k] = L.rf[k] / L.rtf[k] - 1.0;
  }
  for (std::size_t k = 0; k + 1 < M; ++k) {
    auto [A, B] = recurrence_coeffs(L.form, ell, static_cast<int>(k), lambda);
    L.epsf[k] = (A * L.rtf[k] + B) / (L.rtf[k] * L.rtf[k + 1]) - 1.0;
    L.Cf[k] = B / (L.rtf[k] * L.rtf[k + 1]);
  }
  return L;
}

CoefficientLedger frobenius_symbolic(int ell, int N, std::optional<HeunForm> form)
{
  if (N < 3) throw std::invalid_argument("frobenius_symbolic needs N >= 3");
  CoefficientLedger L;
  L.mode = "exact-symbolic-in-lambda";
  L.form = form.value_or(default_form(ell));
  L.ell = ell;
  L.N = N;
  L.as.assign(static_cast<std::size_t>(N) + 1, UPoly{});
  L.as[0] = UPoly{Rational(1)};
  for (int n = -1; n + 2 <= N; ++n) {
    auto [A, B] = recurrence_coeffs_symbolic(L.form, ell, n);
    UPoly an = n >= 0 ? L.as[static_cast<std::size_t>(n)] : UPoly{};
    L.as[static_cast<std::size_t>(n + 2)] = A * L.as[static_cast<std::size_t>(n + 1)] + B * an;
  }
  if (L.form == HeunForm::low && ell <= 1) {
    UPoly g = UPoly::gcd(L.as[2], L.as[3]);
    for (int n = 4; n <= N; ++n) g = UPoly::gcd(g, L.as[static_cast<std::size_t>(n)]);
    L.removed_factor = g;
  }
  L.bs.resize(L.as.size());
  for (std::size_t n = 2; n < L.as.size(); ++n) {
    auto [q, r] = UPoly::divmod(L.as[n], L.removed_factor);
    if (!r.is_zero()) throw std::logic_error("removed factor does not divide a_n");
    L.bs[n] = q;
  }
  return L;
}

RatFun ratio_symbolic(const CoefficientLedger& sym, int n)
{
  if (n < 0 || n + 1 >= static_cast<int>(sym.as.size())) throw std::out_of_range("ratio index outside ledger");
  const UPoly& num = sym.as[static_cast<std::size_t>(n + 1)];
  const UPoly& den = sym.as[static_cast<std::size_t>(n)];
  if (den.is_zero()) throw std::domain_error("a_n vanishes identically");
  return RatFun(num, den);
}

namespace {

RatFun quasi_ratfun(int ell, int n)
{
  auto qp = quasi_polys(std::min(ell, 2));
  UPoly p = lambda_poly(qp.p, n, ell);
  Rational q = qp.q.evaluate({Rational(n), Rational(ell), Rational(0)});
  return RatFun(p, UPoly{q});
}

} // namespace

DeltaEpsC delta_epsilon_C(int ell, int n)
{
  if (n < 2) throw std::out_of_range("delta_epsilon_C needs n >= 2");
  HeunForm form = default_form(ell);
  auto sym = frobenius_symbolic(ell, n + 2, form);
  auto [A, B] = recurrence_coeffs_symbolic(form, ell, n);
  RatFun Af(A, UPoly{Rational(1)}), Bf(B, UPoly{Rational(1)});
  RatFun rt0 = quasi_ratfun(ell, n), rt1 = quasi_ratfun(ell, n + 1);
  RatFun one(Rational(1));
  DeltaEpsC out;
  out.eps = (Af * rt0 + Bf) / (rt0 * rt1) - one;
  out.C = Bf / (rt0 * rt1);
  out.delta_n = ratio_symbolic(sym, n) / rt0 - one;
  out.delta_next = ratio_symbolic(sym, n + 1) / rt1 - one;
  out.recursion_residual = out.delta_next - (out.eps - out.C * out.delta_n / (one + out.delta_n));
  return out;
}

EpsCPolys eps_C_polys(int ell_class)
{
  HeunForm form = ell_class >= 2 ? HeunForm::high : HeunForm::low;
  const auto& R = recurrence_polys(form);
  auto Q = quasi_polys(ell_class);
  Poly p1 = Q.p.shift(0, 1), q1 = Q.q.shift(0, 1);
  EpsCPolys e;
  e.eps_num = (R.NA * Q.p + R.NB * Q.q) * q1 - R.DA * Q.p * p1;
  e.eps_den = R.DA * Q.p * p1;
  e.C_num = R.NB * Q.q * q1;
  e.C_den = R.DA * Q.p * p1;
  if (ell_class < 2) {
    for (Poly* p : {&e.eps_num, &e.eps_den, &e.C_num, &e.C_den}) *p = p->fix(1, ell_class);
  }
  return e;
}

// ------------------------------------------------------------------ certificates

namespace {

struct ClassSpec {
  std::string id;
  int ell;
  Rational b;
  int n0;
  Poly eN, eD, cN, cD; // envelopes as polynomials in {n}
  std::string eps_text, C_text;
};

ClassSpec class_spec(const std::string& id)
{
  std::vector<std::string> v{"n"};
  Poly n = Poly::variable(v, 0);
  auto k = [&](long x) { return Poly::constant(v, x); };
  ClassSpec s;
  s.id = id;
  if (id == "0") {
    s.ell = 0;
    s.b = Rational(1, 5);
    s.n0 = 6;
    s.eN = k(6) * n + k(161); // 3/140 + 23/(40 n)
    s.eD = k(280) * n;
    s.cN = k(50) * n - k(161); // 5/7 - 23/(10 n)
    s.cD = k(70) * n;
    s.eps_text = "3/140 + 23/(40n)";
    s.C_text = "5/7 - 23/(10n)";
  } else if (id == "1") {
    s.ell = 1;
    s.b = Rational(1, 5);
    s.n0 = 5;
    s.eN = k(6) * n + k(181); // 3/140 + 5/(8(n+1))
    s.eD = k(280) * (n + k(1));
    s.cN = k(10) * n - k(25); // 5/7 - 5/(2(n+1))
    s.cD = k(14) * (n + k(1));
    s.eps_text = "3/140 + 5/(8(n+1))";
    s.C_text = "5/7 - 5/(2(n+1))";
  } else if (id == "ge2") {
    s.ell = 2;
    s.b = Rational(1, 3);
    s.n0 = 3;
    s.eN = k(1);
    s.eD = k(8);
    s.cN = k(5);
    s.cD = k(12);
    s.eps_text = "1/8";
    s.C_text = "5/12";
  } else {
    throw std::invalid_argument("unknown ell-class: " + id + " (expected 0, 1, ge2)");
  }
  return s;
}

CertificateReport named(CertificateReport r, std::string id, std::string bound)
{
  r.lemma_id = std::move(id);
  r.bound = std::move(bound);
  return r;
}

CertificateReport symbolic_report(std::string id, std::string bound, bool ok, std::string note, double ms = 0)
{
  CertificateReport r;
  r.lemma_id = std::move(id);
  r.bound = std::move(bound);
  r.tactic = "symbolic";
  r.verdict = ok ? Verdict::pass : Verdict::fail;
  r.note = std::move(note);
  r.elapsed_ms = ms;
  return r;
}

// |num/den| <= eN/eD on the imaginary axis, as eN^2 Q_den - eD^2 Q_num >= 0
CertificateReport envelope_certificate(const Poly& num, const Poly& den, const Poly& eN, const Poly& eD,
                                       std::vector<int> shifts)
{
  Poly Qn = modulus_square_split(num), Qd = modulus_square_split(den);
  std::vector<std::string> vars = Qn.vars();
  Poly eN2 = (eN * eN).embed(vars), eD2 = (eD * eD).embed(vars);
  return certify_nonneg(eN2 * Qd - eD2 * Qn, std::move(shifts));
}

int lambda_degree(const Poly& p) { return p.degree(p.var_index("lambda")); }

} // namespace

LemmaCertificate certify_lemma(const std::string& ell_class)
{
  auto t0 = std::chrono::steady_clock::now();
  ClassSpec spec = class_spec(ell_class);
  LemmaCertificate cert;
  cert.ell_class = spec.id;
  cert.b = spec.b;
  cert.start = spec.n0;
  cert.eps_envelope = spec.eps_text;
  cert.C_envelope = spec.C_text;
  bool uniform = spec.id == "ge2";
  const int l0 = 2;
  std::string tag = "ell" + spec.id;
  Rational inv_b2 = 1 / (spec.b * spec.b);
  std::string nstr = std::to_string(spec.n0);

  // (i) analyticity of the start ratio and (ii) the delta-start bound
  auto start_job = std::async(std::launch::async, [&]() {
    std::vector<CertificateReport> out;
    if (!uniform) {
      auto sym = frobenius_symbolic(spec.ell, spec.n0 + 1);
      RatFun r = ratio_symbolic(sym, spec.n0);
      CertificateReport rh;
      rh.lemma_id = tag + ".start-denominator-hurwitz";
      const UPoly& bn = sym.bs[static_cast<std::size_t>(spec.n0)];
      rh.bound = "zeros of b_" + nstr + " in the open left half-plane (degree " + std::to_string(bn.degree()) + ")";
      rh.tactic = "routh-hurwitz";
      rh.polynomial = bn.to_poly("lambda");
      rh.terms = rh.polynomial.size();
      rh.max_coeff_bits = coeff_bits(rh.polynomial);
      rh.verdict = routh_hurwitz(bn) && routh_hurwitz(r.den) ? Verdict::pass : Verdict::fail;
      rh.note = "removed factor " + sym.removed_factor.str("lambda");
      out.push_back(rh);

      RatFun rt = quasi_ratfun(spec.ell, spec.n0);
      UPoly num = r.num * rt.den - r.den * rt.num, den = r.den * rt.num;
      Poly Pn = num.to_poly("lambda"), Pd = den.to_poly("lambda");
      auto Qn = modulus_square_split(Pn), Qd = modulus_square_split(Pd);
      auto rep = certify_nonneg(Qd - inv_b2 * Qn, {0});
      out.push_back(named(rep, tag + ".delta-start", "|delta_" + nstr + "| <= " + spec.b.get_str()));
      bool deg_ok = num.degree() <= den.degree();
      out.push_back(symbolic_report(tag + ".delta-start-degree", "deg num <= deg den in lambda", deg_ok,
                                    std::to_string(num.degree()) + " <= " + std::to_string(den.degree())));
    } else {
      // numerator recurrence in {l, lambda}: a~_n = N_n / D_n with D_{n+2} = D_{n+1} DA_n
      const auto& R = recurrence_polys(HeunForm::high);
      std::vector<std::string> v{"l", "lambda"};
      auto at = [&](const Poly& p, int n) { return p.fix(0, n); };
      std::vector<Poly> N{Poly::constant(v, 1)};
      N.push_back(at(R.NA, -1));
      for (int n = 0; n + 2 <= 4; ++n) {
        Poly DAprev = at(R.DA, n - 1);
        N.push_back(at(R.NA, n) * N[static_cast<std::size_t>(n + 1)] + at(R.NB, n) * DAprev * N[static_cast<std::size_t>(n)]);
      }
      const Poly& N3 = N[3];
      const Poly& N4 = N[4];
      auto rh = routh_hurwitz_parametric(N3, l0);
      rh.lemma_id = tag + ".start-denominator-hurwitz";
      rh.bound = "zeros in lambda of the a~_3 numerator in the open left half-plane for all l >= 2";
      out.push_back(rh);

      auto Q = quasi_polys(2);
      Poly p3 = at(Q.p, 3), q3 = at(Q.q, 3);
      Poly DA2 = at(R.DA, 2);
      Poly num = N4 * q3 - N3 * DA2 * p3, den = N3 * DA2 * p3;
      auto Qn = modulus_square_split(num), Qd = modulus_square_split(den);
      auto rep = certify_nonneg(Qd - inv_b2 * Qn, {l0, 0});
      out.push_back(named(rep, tag + ".delta-start", "|delta~_3| <= 1/3 for all l >= 2"));
      bool deg_ok = lambda_degree(num) <= lambda_degree(den);
      out.push_back(symbolic_report(tag + ".delta-start-degree", "deg num <= deg den in lambda", deg_ok,
                                    std::to_string(lambda_degree(num)) + " <= " + std::to_string(lambda_degree(den))));
    }
    return out;
  });

  // quasi-solution zeros: quadratic in lambda with positive coefficients
  auto quasi_job = std::async(std::launch::async, [&]() {
    auto Q = quasi_polys(std::min(spec.ell, 2));
    Poly p = uniform ? Q.p : Q.p.fix(1, spec.ell);
    std::size_t li = p.var_index("lambda");
    bool ok = p.degree(li) == 2;
    std::string note;
    std::vector<int> shifts = uniform ? std::vector<int>{spec.n0, l0} : std::vector<int>{spec.n0};
    for (int k = 0; k <= 2; ++k) {
      Poly ck(uniform ? std::vector<std::string>{"n", "l"} : std::vector<std::string>{"n"});
      for (const auto& [e, c] : p.terms())
        if (e[li] == k) {
          Exponents f = e;
          f.erase(f.begin() + static_cast<std::ptrdiff_t>(li));
          ck.add_term(f, c);
        }
      auto rep = certify_nonneg(ck, shifts, true);
      ok = ok && rep.verdict == Verdict::pass;
      note += "lambda^" + std::to_string(k) + ": " + rep.tactic + "/" + to_string(rep.verdict) + "; ";
    }
    auto r = symbolic_report(tag + ".quasi-zeros", "quasi-solution zeros in the open left half-plane", ok, note);
    r.tactic = "coefficient-nonnegativity";
    r.polynomial = p;
    return r;
  });

  auto polys = eps_C_polys(std::min(spec.ell, 2));
  std::vector<int> shifts = uniform ? std::vector<int>{spec.n0, l0, 0} : std::vector<int>{spec.n0, 0};

  auto eps_job = std::async(std::launch::async, [&]() {
    return named(envelope_certificate(polys.eps_num, polys.eps_den, spec.eN, spec.eD, shifts), tag + ".eps-envelope",
                 "|eps_n| <= " + spec.eps_text + ", n >= " + nstr);
  });
  auto C_job = std::async(std::launch::async, [&]() {
    return named(envelope_certificate(polys.C_num, polys.C_den, spec.cN, spec.cD, shifts), tag + ".C-envelope",
                 "|C_n| <= " + spec.C_text + ", n >= " + nstr);
  });

  auto deg_ok = lambda_degree(polys.eps_num) <= lambda_degree(polys.eps_den) &&
                lambda_degree(polys.C_num) <= lambda_degree(polys.C_den);
  auto degree_report = symbolic_report(tag + ".eps-C-degree", "deg num <= deg den in lambda for eps_n and C_n", deg_ok,
                                       "eps " + std::to_string(lambda_degree(polys.eps_num)) + "/" +
                                           std::to_string(lambda_degree(polys.eps_den)) + ", C " +
                                           std::to_string(lambda_degree(polys.C_num)) + "/" +
                                           std::to_string(lambda_degree(polys.C_den)));

  // envelopes nonnegative and the induction step closes:
  // b - e(n) - b/(1-b) c(n) >= 0 for n >= n0
  Poly ind = Poly::constant({"n"}, spec.b) * spec.eD * spec.cD - spec.eN * spec.cD -
             Poly::constant({"n"}, spec.b / (1 - spec.b)) * spec.cN * spec.eD;
  std::vector<int> nshift{spec.n0};
  auto ind_rep = certify_nonneg(ind, nshift);
  bool env_ok = certify_nonneg(spec.eN, nshift).verdict == Verdict::pass &&
                certify_nonneg(spec.cN, nshift).verdict == Verdict::pass &&
                certify_nonneg(spec.eD, nshift, true).verdict == Verdict::pass &&
                certify_nonneg(spec.cD, nshift, true).verdict == Verdict::pass;
  ind_rep = named(ind_rep, tag + ".induction",
                  "eps_env + b/(1-b) C_env <= b = " + spec.b.get_str() + " for n >= " + nstr);
  if (!env_ok) {
    ind_rep.verdict = Verdict::fail;
    ind_rep.note = "an envelope is negative on the index range";
  }

  for (auto& r : start_job.get()) cert.reports.push_back(std::move(r));
  cert.reports.push_back(quasi_job.get());
  cert.reports.push_back(eps_job.get());
  cert.reports.push_back(C_job.get());
  cert.reports.push_back(degree_report);
  cert.reports.push_back(ind_rep);

  cert.induction = ind_rep.verdict;
  bool all = true;
  for (const auto& r : cert.reports) all = all && r.verdict == Verdict::pass;
  cert.verdict = all ? Verdict::pass : Verdict::fail;
  cert.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return cert;
}

// ------------------------------------------------------------------ ratio classifier

const char* to_string(RatioClass c)
{
  switch (c) {
  case RatioClass::tends_to_1: return "tends-to-1";
  case RatioClass::tends_to_other: return "tends-to-other-root";
  case RatioClass::terminating: return "terminating";
  default: return "inconclusive";
  }
}

namespace {

RatioScan classify_ratios(HeunForm form, int ell, cplx lambda, int N, std::vector<cplx> tail_start, int n_start)
{
  // continue the ratio recurrence r_{n+1} = A_n + B_n / r_n in floating point
  RatioScan out;
  out.N = N;
  out.other_root = characteristic_roots(form).second.get_d();
  std::vector<cplx> r = std::move(tail_start);
  for (int n = n_start; n < N; ++n) {
    auto [A, B] = recurrence_coeffs(form, ell, n, lambda);
    r.push_back(A + B / r.back());
  }
  std::size_t m = r.size();
  out.r_N = r[m - 1];
  cplx d1 = r[m - 1] - r[m - 2], d2 = r[m - 1] - 2.0 * r[m - 2] + r[m - 3];
  out.accelerated = std::abs(d2) > 1e-300 ? r[m - 1] - d1 * d1 / d2 : r[m - 1];
  // Aitken can overshoot when the sequence is already converged; keep the closer estimate
  if (!std::isfinite(std::abs(out.accelerated)) || std::abs(out.accelerated - r[m - 1]) > std::abs(d1) * 1e3)
    out.accelerated = r[m - 1];
  double gap = std::abs(1.0 - out.other_root);
  double to1 = std::abs(out.accelerated - 1.0), toO = std::abs(out.accelerated - out.other_root);
  if (to1 < 0.25 * gap && to1 < toO) out.cls = RatioClass::tends_to_1;
  else if (toO < 0.25 * gap) out.cls = RatioClass::tends_to_other;
  else out.cls = RatioClass::inconclusive;
  return out;
}

} // namespace

RatioScan numeric_ratio_scan(int ell, const Rational& lambda, int N)
{
  if (N < 200) throw std::invalid_argument("numeric_ratio_scan needs N >= 200");
  HeunForm form = default_form(ell);
  // exact prefix decides termination; the tail runs in floating point
  int prefix = std::min(N, 80);
  auto L = frobenius_coeffs(ell, lambda, prefix, form);
  if (L.terminating) {
    RatioScan out;
    out.cls = RatioClass::terminating;
    out.N = N;
    out.exact = true;
    out.other_root = characteristic_roots(form).second.get_d();
    return out;
  }
  int last = prefix - 1;
  while (last >= 0 && !L.r[static_cast<std::size_t>(last)]) --last;
  if (last < 0) throw std::domain_error("no nonzero ratio in the exact prefix");
  std::vector<cplx> tail{cplx(L.r[static_cast<std::size_t>(last)]->get_d())};
  auto out = classify_ratios(form, ell, cplx(lambda.get_d()), N, tail, last);
  // a zero ratio in the tail would only happen on an exact zero; the float tail never hits it
  out.exact = true;
  return out;
}

RatioScan numeric_ratio_scan(int ell, cplx lambda, int N)
{
  if (N < 200) throw std::invalid_argument("numeric_ratio_scan needs N >= 200");
  HeunForm form = default_form(ell);
  auto [A, B] = recurrence_coeffs(form, ell, -1, lambda);
  (void)B;
  if (A == cplx(0)) {
    // a_1 = 0: restart from a_1/a_0 = 0 is undefined, fall back to the coefficient sequence
    auto L = frobenius_coeffs(ell, lambda, N, form);
    RatioScan out;
    out.N = N;
    out.other_root = characteristic_roots(form).second.get_d();
    double scale = 0;
    for (std::size_t k = 5; k < L.af.size(); ++k) scale = std::max(scale, std::abs(L.af[k]));
    out.cls = scale < 1e-13 ? RatioClass::terminating : RatioClass::inconclusive;
    return out;
  }
  return classify_ratios(form, ell, lambda, N, {A}, 0);
}

} // namespace blowup
