#pragma once

#include "blowup/jet.hpp"

#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace blowup {

using DJet = Jet2<double>;
// radial function evaluated on a jet in rho: value and first two rho-derivatives
using RadialFn = std::function<DJet(const DJet&)>;

struct ConsistencyError : std::domain_error {
  using std::domain_error::domain_error;
};
struct QuadratureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LtildeValue {
  double v1 = 0, v2 = 0;
};

// one mode l of the free similarity operator at rho; rho = 0 uses the regular limit
LtildeValue apply_Ltilde_radial(const DJet& u1, const DJet& u2, double rho, int ell, int d);
std::vector<LtildeValue> apply_Ltilde_radial(const RadialFn& u1, const RadialFn& u2, std::span<const double> rho,
                                             int ell, int d);

// Homogeneous solutions of
//   -(1-rho^2) v'' + (-2/rho + 5 rho) v' + ((m+1)m/rho^2 + 15/4) v = 0,  m = l+3 (d = 9) or l+2 (d = 7),
// psi_j = rho^m phi_j(rho^2) with phi_0 regular at z = 0 and phi_1 regular at z = 1.
struct FundamentalSystem {
  int d = 9;
  int ell = 0;
  int m = 3;         // power of rho in front of phi
  double p = 3.5;    // exponent in the closed forms, m + 1/2
  double C = 0;      // W(psi_0, psi_1) = C (1-rho^2)^{-3/2} rho^{-2}

  DJet phi0(const DJet& z) const;
  DJet phi1(const DJet& z) const;
  DJet psi0(const DJet& rho) const;
  DJet psi1(const DJet& rho) const;
  double wronskian(double rho) const;
  // coefficients in psi_0 = c1 psi_1 + c2 psi_2 / sqrt(1-rho), psi_2 analytic at 1 with psi_2(1) = 1
  double c1_closed() const;
  double c2_closed() const;
};

FundamentalSystem hypergeo_fundamental(int ell, int d = 9);

// density-argument spectral parameter: 5/2 for d = 9, 3/2 for d = 7
double density_lambda(int d);

// homogeneous residual -(1-rho^2) v'' + ... for a jet of v
double fundamental_ode_residual(const FundamentalSystem& fs, const DJet& v, double rho);

struct RadialModeFunction {
  int d = 9;
  int ell = 0;
  double lambda = 2.5;
  std::vector<double> rho;
  std::vector<DJet> u;         // u and its rho-derivatives
  std::vector<double> residual; // max over both components of |(lambda - L)u - f|
  double max_residual = 0;
  double quadrature_error = 0;  // largest Gauss-Kronrod error estimate
  double origin_exponent = 0;   // fitted power of rho near 0 (NaN for u = 0)
};

// Solve (lambda - L)(u1, u2) = (0, g) mode-wise through the second-order equation for u1;
// u2 = rho u1' + (lambda + 2) u1.  d = 7 runs the same kernel with the shifted l and weight rho^2.
RadialModeFunction solve_resolvent_mode(int d, int ell, const std::function<double(double)>& g,
                                        std::span<const double> rho);
// default sample set: 200 points on [0.01, 1 - 1e-3]
std::vector<double> resolvent_grid();

struct DegeneracyFit {
  double c1 = 0, c2 = 0;   // regression estimates
  double exponent = 0;     // power of (1-rho) in psi_0 - c1 psi_1
  double fit_residual = 0;
};
DegeneracyFit fundamental_degeneracy(const FundamentalSystem& fs);

struct WitnessReport {
  double C = 0; // 2 int_0^1 s^8 (1-s^2)/(7+5s^2)^6 ds
  double C_error = 0;
  double constant_term = 0;   // u_2 -> 864
  double log_coefficient = 0; // -3456
  double fit_residual = 0;
  double log_coefficient_leading_fit = 0; // three-term model {1, t log t, t} only
  double exponent_l0 = 0;     // -7
  double exponent_l1 = 0;     // -8
  bool conclusive = true;
  std::string diagnostics;
};

// second solutions of the l = 0 and l = 1 problems at lambda = 1 by reduction of order
DJet witness_u2_l0(double rho);
DJet witness_u2_l1(double rho);
WitnessReport multiplicity_witnesses(int d = 9);

} // namespace blowup
