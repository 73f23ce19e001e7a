#pragma once

#include "blowup/profiles.hpp"

#include <array>
#include <functional>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace blowup {

using RadialData = std::function<double(double)>;

struct ConditioningError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// uniform grid rho_i = i/N, i = 0..N, with fourth-order stencils:
// even reflection at the origin, one-sided rows at rho = 1
struct RadialGrid {
  struct Row {
    int first = 0; // index of the first weight, may be negative (reflected)
    int n = 0;
    std::array<double, 7> w{};
  };
  int N = 0;
  double h = 0;
  std::vector<double> rho;
  std::vector<double> quad; // trapezoid weights
  std::vector<Row> d1, d2;

  double apply(const Row& r, std::span<const double> f) const;
};

std::shared_ptr<const RadialGrid> make_radial_grid(int N);

struct RadialStatePair {
  double tau = 0;
  int d = 9;
  FamilyKind family = FamilyKind::u_star;
  std::shared_ptr<const RadialGrid> grid;
  std::vector<double> psi1, psi2;
};

struct ModeAmplitudes {
  std::vector<std::string> labels; // {"h", "g0"} or {"g"}
  std::vector<double> amp;
  double residual = 0;           // |Phi - sum amp_k b_k| / |Phi|
  double basis_overlap = 0;      // largest normalized off-diagonal Gram entry
};

struct TrajectorySample {
  double tau = 0;
  double distance = 0; // |Psi - static| in the discrete H^1 x L^2 norm
  std::vector<double> amp;
  double sup = 0;      // max |psi_1 - static_1|
  double min_psi1 = 0;
};

struct EvolveOptions {
  double tau_end = 2;
  double sample_every = 0.05;
  double cfl = 0.5;          // dtau = cfl * h
  double divergence = 1e6;   // |Phi| beyond this stops the run
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  RadialStatePair final_state;
  bool diverged = false;
  double last_valid_tau = 0;
  std::vector<std::string> labels;
};

// radial similarity-coordinate system around one static family member (a = 0, T = 1)
class RadialSystem {
public:
  RadialSystem(FamilyKind family, int d, int N);

  FamilyKind family() const { return family_; }
  int dimension() const { return d_; }
  const RadialGrid& grid() const { return *grid_; }
  std::span<const double> rho() const { return grid_->rho; }

  RadialStatePair static_state() const;
  RadialStatePair state_from(std::vector<double> psi1, std::vector<double> psi2, double tau = 0) const;

  // L Psi + F(Psi) on the grid, full state
  RadialStatePair rhs(const RadialStatePair& s) const;
  // same for Phi = Psi - static with the static residual removed analytically
  void perturbation_rhs(std::span<const double> phi1, std::span<const double> phi2, std::span<double> out1,
                        std::span<double> out2) const;

  // static + Upsilon((f + alpha h1, g + alpha h2), T, 0); alpha only for u-star
  RadialStatePair upsilon_data(const RadialData& f, const RadialData& g, double T, double alpha = 0) const;

  // unstable eigenpairs sampled on the grid: h and g0 (u-star, d = 9) or (1, 3) (kappa)
  std::vector<std::pair<std::vector<double>, std::vector<double>>> unstable_modes() const;
  std::vector<std::string> mode_labels() const;
  std::vector<double> mode_rates() const;

  double inner(std::span<const double> a1, std::span<const double> a2, std::span<const double> b1,
               std::span<const double> b2) const;
  double distance(const RadialStatePair& s) const;

  // least-squares projection of Psi - static onto the unstable modes
  ModeAmplitudes mode_amplitudes(const RadialStatePair& s) const;
  // biorthogonal amplitudes from the left eigenvectors of the discrete linearization
  std::vector<double> spectral_amplitudes(const RadialStatePair& s) const;

  Trajectory evolve(const RadialStatePair& init, const EvolveOptions& opt) const;

private:
  FamilyKind family_;
  int d_;
  std::shared_ptr<const RadialGrid> grid_;
  std::vector<double> s1_, s2_; // static pair
  std::vector<double> pot_;     // 2 * static_1
  mutable std::vector<std::vector<double>> left_; // left eigenvectors, built on first use
  mutable std::vector<double> left_scale_;

  void build_left_vectors() const;
  void check_state(const RadialStatePair& s) const;
};

// radial profile of the static pair at rho
std::pair<double, double> static_pair_at(FamilyKind family, int d, double rho);

struct DecayFit {
  double t0 = 0, t1 = 0;
  double exponent = 0, amplitude = 0;
  double residual = 0; // rms of the log residual
  bool meaningful = false;
};

// log-linear fit of value ~ amplitude * exp(exponent * tau) on [t0, t1]
DecayFit fit_rate(std::span<const double> tau, std::span<const double> value, double t0, double t1);
DecayFit fit_rate(const Trajectory& tr, double t0, double t1, int amp_index = -1); // -1: distance

struct TuneOptions {
  double tau_star = 6;
  double tau_end = 10;
  double bound_tau = 10;     // boundedness required for tau <= bound_tau
  double delta = 0.05;       // |T - 1|, |alpha| <= delta
  int N = 512;
  bool spectral = true;      // objective from biorthogonal amplitudes (else least squares)
};

struct TuneResult {
  FamilyKind family = FamilyKind::u_star;
  int d = 9;
  double T = 1, alpha = 0;
  double initial_distance = 0;
  double peak_distance = 0, final_distance = 0;
  double max_ratio = 0;          // max over tau <= bound_tau of distance / initial distance
  bool bounded = false;          // max_ratio <= 2
  bool monotone_after_2 = false; // distance nonincreasing on samples with tau >= 2
  double min_psi1 = 0;
  DecayFit decay;                // distance on [2, tau_end]
  std::string verdict;           // pass | fail | no-tune
  std::string diagnostics;
  int trajectories = 0;
  Trajectory trajectory;
};

TuneResult tune(FamilyKind family, int d, const RadialData& f, const RadialData& g, const TuneOptions& opt);

} // namespace blowup
