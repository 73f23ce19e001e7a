#pragma once

#include "blowup/certify.hpp"
#include "blowup/poly.hpp"
#include "blowup/rational.hpp"
#include "blowup/upoly.hpp"

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace blowup {

using cplx = std::complex<double>;

// low: the rho^2 Heun form used for l in {0, 1}; high: the x = 12 rho^2/(5 rho^2 + 7) form for l >= 2
enum class HeunForm { low, high };

inline HeunForm default_form(int ell) { return ell <= 1 ? HeunForm::low : HeunForm::high; }
inline const char* to_string(HeunForm f) { return f == HeunForm::low ? "low-ell" : "high-ell"; }

struct HeunParams {
  HeunForm form;
  int ell;
  Rational mu, gamma, eps; // eps only meaningful for the high form
  // alpha, beta, delta, q are affine/quadratic in lambda; stored as polynomials in lambda
  UPoly alpha, beta, delta, q;
};

HeunParams heun_params(HeunForm form, int ell);

// ------------------------------------------------------------------ recurrence

// a_{n+2} = A_n a_{n+1} + B_n a_n with A_n = NA/DA, B_n = NB/DA; variables {n, l, lambda}
struct RecurrencePolys {
  Poly NA, NB, DA;
};
const RecurrencePolys& recurrence_polys(HeunForm form);

struct RecurrenceCoeffs {
  Rational A, B;
  bool exploratory = false; // form used outside its intended l range
};

RecurrenceCoeffs recurrence_coeffs(HeunForm form, int ell, int n, const Rational& lambda);
std::pair<cplx, cplx> recurrence_coeffs(HeunForm form, int ell, int n, cplx lambda);
// A_n, B_n as polynomials in lambda (DA is a constant once n, l are fixed)
std::pair<UPoly, UPoly> recurrence_coeffs_symbolic(HeunForm form, int ell, int n);

// characteristic roots of t^2 - A_inf t - B_inf
std::pair<Rational, Rational> characteristic_roots(HeunForm form);

// ------------------------------------------------------------------ quasi-solutions

// r~ = p/q with p quadratic in lambda; variables {n, l, lambda}.  ell_class 0, 1 or 2 (>= 2)
struct QuasiPolys {
  Poly p, q;
};
QuasiPolys quasi_polys(int ell_class);

Rational quasi_solution(int ell, int n, const Rational& lambda);
cplx quasi_solution(int ell, int n, cplx lambda);

// ------------------------------------------------------------------ ledgers

struct CoefficientLedger {
  std::string mode; // exact-symbolic-in-lambda | exact-at-rational-lambda | float-at-complex-lambda
  HeunForm form = HeunForm::low;
  int ell = 0;
  int N = 0;
  bool partial = false;
  bool terminating = false; // a_n = 0 for all n beyond some index
  int terminating_index = -1;

  std::vector<Rational> a;
  std::vector<std::optional<Rational>> r, rt, delta, eps, C;

  std::vector<cplx> af, rf, rtf, deltaf, epsf, Cf;

  std::vector<UPoly> as;  // a_n(lambda)
  UPoly removed_factor{Rational(1)};
  std::vector<UPoly> bs;  // a_n / removed_factor for n >= 2
};

struct ResourceError : std::runtime_error {
  ResourceError(const std::string& what, CoefficientLedger partial_ledger)
    : std::runtime_error(what), ledger(std::move(partial_ledger))
  {
  }
  CoefficientLedger ledger;
};

inline int exact_n_max = 4000;

CoefficientLedger frobenius_coeffs(int ell, const Rational& lambda, int N, std::optional<HeunForm> form = {});
CoefficientLedger frobenius_coeffs(int ell, cplx lambda, int N, std::optional<HeunForm> form = {});
CoefficientLedger frobenius_symbolic(int ell, int N, std::optional<HeunForm> form = {});

// r_n = a_{n+1}/a_n in lambda, reduced; uses the removed factor for l in {0, 1}
RatFun ratio_symbolic(const CoefficientLedger& sym, int n);

struct DeltaEpsC {
  RatFun eps, C, delta_n, delta_next;
  RatFun recursion_residual; // delta_{n+1} - (eps - C delta/(1 + delta)), identically zero
};
DeltaEpsC delta_epsilon_C(int ell, int n);

// eps_n and C_n as polynomial quotients in {n, l, lambda}
struct EpsCPolys {
  Poly eps_num, eps_den, C_num, C_den;
};
EpsCPolys eps_C_polys(int ell_class);

// ------------------------------------------------------------------ certificates

struct LemmaCertificate {
  std::string ell_class; // "0" | "1" | "ge2"
  Rational b;
  int start = 0;
  std::string eps_envelope, C_envelope;
  std::vector<CertificateReport> reports;
  Verdict induction = Verdict::fail;
  Verdict verdict = Verdict::fail;
  double elapsed_ms = 0;
};

LemmaCertificate certify_lemma(const std::string& ell_class);

// ------------------------------------------------------------------ ratio classifier

enum class RatioClass { tends_to_1, tends_to_other, terminating, inconclusive };
const char* to_string(RatioClass c);

struct RatioScan {
  RatioClass cls = RatioClass::inconclusive;
  cplx r_N{0, 0};
  cplx accelerated{0, 0};
  cplx other_root{0, 0};
  int N = 0;
  bool exact = false;
};

RatioScan numeric_ratio_scan(int ell, const Rational& lambda, int N = 500);
RatioScan numeric_ratio_scan(int ell, cplx lambda, int N = 500);

} // namespace blowup
