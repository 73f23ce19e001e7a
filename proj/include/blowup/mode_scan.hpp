#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace blowup {

using cplx = std::complex<double>;

// u_star: V = 2U of the radial profile; kappa: constant 2 kappa_0 = 12; free: V = 0
enum class Potential { u_star, kappa, free };
const char* to_string(Potential p);
Potential parse_potential(const std::string& s);

struct SpectralPoint {
  int d = 9;
  int ell = 0;
  cplx lambda{0, 0};
  Potential potential = Potential::u_star;
};

struct PrecisionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct RefinementError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Radial equation in x = rho^2 after f = rho^l v(x):
//   4x(1-x) v'' + [2(2l+d) - 2(2l+2lambda+7)x] v' - [(lambda+l+2)(lambda+l+3) - V] v = 0,
// cleared of the potential's denominator.  Coefficients are polynomials in x.
struct RadialOde {
  std::vector<cplx> P2, P1, P0;
};
RadialOde radial_ode(const SpectralPoint& p);

// second characteristic exponent at x = 1: (d-5)/2 - lambda
cplx exponent_at_one(int d, cplx lambda);

struct TwoSidedSeries {
  std::vector<cplx> at0, at1; // analytic branches in t = x and t = x - 1, leading coefficient 1
  double xm = 0.5;
  double tail0 = 0, tail1 = 0;
};

// analytic Frobenius branch of the ODE at x0 in {0, 1}, coefficients until the tail at |t| = r drops below tol
std::vector<cplx> frobenius_branch(const RadialOde& ode, double x0, double r, double tol, int n_max, double* tail = nullptr);
TwoSidedSeries two_sided_series(const SpectralPoint& p, double tol = 1e-15);

// value and x-derivative of a series in t at t
std::pair<cplx, cplx> eval_series(const std::vector<cplx>& c, cplx t);

// Wronskian of the two analytic branches at x = 1/2, multiplied by prod (lambda - lambda_k) over the
// values where the branch at 1 has a pole (second exponent a positive integer) so the result is entire
// in Re lambda > -1/2; near those values it is evaluated by the mean over a small circle.
cplx connection_indicator(const SpectralPoint& p);
cplx raw_wronskian(const SpectralPoint& p);
std::vector<double> indicator_pole_set(int d);

struct ScanRegion {
  double re_lo = 0, re_hi = 4, im_lo = -2, im_hi = 2;
  int nx = 200, ny = 200;
};

struct ScanRoot {
  cplx lambda;
  int multiplicity = 1; // argument-principle winding of the containing cell
  double residual = 0;  // |indicator| at the refined position
  int newton_iterations = 0;
};

struct ScanResult {
  SpectralPoint base;
  ScanRegion region;
  std::vector<double> re, im;           // grid node coordinates
  std::vector<double> abs_indicator;    // row-major, im index outer
  std::vector<ScanRoot> roots;          // sorted by real part then imaginary part
  int total_winding = 0;
  bool exploratory = false;             // d = 7 or non-u_star potentials are not covered by a proof
  std::optional<double> spectral_gap;   // distance from the known eigenvalues to the nearest other root
};

ScanResult eigenvalue_scan(int d, int ell, const ScanRegion& region, Potential potential = Potential::u_star);

// Newton on the indicator from a starting point
ScanRoot refine_root(const SpectralPoint& base, cplx start);

// ------------------------------------------------------------------ kappa (ODE blowup) spectrum

cplx gamma_fn(cplx z);
cplx rgamma(cplx z); // 1/Gamma, entire

// {1 - l - 2n : n >= 0} intersected with Re lambda >= sigma
std::vector<double> kappa_spectrum(int d, int ell, double sigma);

struct KappaCoefficient {
  cplx value{0, 0};
  bool degenerate_log = false; // a + b - c a nonpositive integer: the log term coefficient is reported
  cplx a, b, c;
};

// coefficient of the non-smooth branch at x = 1 of 2F1(a, b; c; x), a = (lambda+l-1)/2, b = (lambda+l+6)/2,
// c = d/2 + l: Gamma(c) Gamma(a+b-c)/(Gamma(a) Gamma(b)); zero iff the regular solution is smooth at 1
KappaCoefficient connection_coefficient_kappa(int d, int ell, cplx lambda);
// coefficient of the analytic branch, Gamma(c) Gamma(c-a-b)/(Gamma(c-a) Gamma(c-b)); a pole of Gamma(c-a-b)
// returns complex infinity
cplx connection_coefficient_regular(int d, int ell, cplx lambda);

} // namespace blowup
