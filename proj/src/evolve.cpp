#include "blowup/evolve.hpp"

#include "blowup/fit.hpp"
#include "blowup/jet.hpp"
#include "blowup/parallel.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace blowup {

namespace {

using DJ = Jet2<double>;

// Fornberg: weights of derivatives 0..m at x0 for nodes x
std::vector<std::vector<double>> fornberg(double x0, const std::vector<double>& x, int m)
{
  const int n = static_cast<int>(x.size());
  std::vector<std::vector<double>> c(m + 1, std::vector<double>(n, 0.0));
  double c1 = 1, c4 = x[0] - x0;
  c[0][0] = 1;
  for (int i = 1; i < n; ++i) {
    int mn = std::min(i, m);
    double c2 = 1, c5 = c4;
    c4 = x[i] - x0;
    for (int j = 0; j < i; ++j) {
      double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c[k][i] = c1 * (k * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
        c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
      }
      for (int k = mn; k >= 1; --k) c[k][j] = (c4 * c[k][j] - k * c[k - 1][j]) / c3;
      c[0][j] = c4 * c[0][j] / c3;
    }
    c1 = c2;
  }
  return c;
}

RadialGrid::Row make_row(int i, int first, int n, int order, double h)
{
  RadialGrid::Row r;
  r.first = first;
  r.n = n;
  std::vector<double> x;
  for (int k = 0; k < n; ++k) x.push_back(first + k - i);
  auto c = fornberg(0.0, x, order);
  double s = std::pow(h, -order);
  for (int k = 0; k < n; ++k) r.w[k] = c[order][k] * s;
  return r;
}

DJ radial_U(int d, const DJ& r)
{
  static thread_local int cached_d = -1;
  static thread_local double c1, c2, c3;
  if (cached_d != d) {
    auto pc = profile_constants(d);
    c1 = double(pc.c1f);
    c2 = double(pc.c2f);
    c3 = double(pc.c3f);
    cached_d = d;
  }
  DJ x = r * r;
  DJ q = DJ(c3) + x;
  return (DJ(c1) - DJ(c2) * x) / (q * q);
}

// (u, rho u' + (lambda + 2) u) from a radial jet function
template <class Fn>
std::pair<double, double> pair_from(Fn&& u, double rho, double lambda)
{
  DJ a = u(DJ::variable(rho, 1.0));
  return {a.v, rho * a.d1 + (lambda + 2) * a.v};
}

DJ h1_fn(const DJ& r)
{
  DJ q = DJ(7.0) + DJ(5.0) * r * r;
  return (q * q * q).inverse();
}

DJ g01_fn(const DJ& r)
{
  DJ q = DJ(7.0) + DJ(5.0) * r * r;
  return (r * r - DJ(1.0)) / (q * q * q);
}

} // namespace

double RadialGrid::apply(const Row& r, std::span<const double> f) const
{
  double s = 0;
  for (int k = 0; k < r.n; ++k) {
    int j = r.first + k;
    s += r.w[k] * f[j < 0 ? -j - 1 : j];
  }
  return s;
}

std::shared_ptr<const RadialGrid> make_radial_grid(int N)
{
  if (N < 16) throw std::invalid_argument("radial grid needs N >= 16");
  auto g = std::make_shared<RadialGrid>();
  g->N = N;
  g->h = 1.0 / N;
  for (int i = 0; i < N; ++i) {
    g->rho.push_back((i + 0.5) * g->h);
    g->quad.push_back(g->h);
  }
  // one-sided five-point rows in the last two cells
  for (int i = 0; i < N; ++i) {
    int first = std::min(i - 2, N - 5);
    g->d1.push_back(make_row(i, first, 5, 1, g->h));
    g->d2.push_back(make_row(i, first, 5, 2, g->h));
  }
  return g;
}

std::pair<double, double> static_pair_at(FamilyKind family, int d, double rho)
{
  if (family == FamilyKind::ode_kappa) return {6.0, 12.0};
  return pair_from([d](const DJ& r) { return radial_U(d, r); }, rho, 0.0);
}

RadialSystem::RadialSystem(FamilyKind family, int d, int N) : family_(family), d_(d), grid_(make_radial_grid(N))
{
  if (d < 3) throw std::invalid_argument("evolution needs d >= 3");
  for (double r : grid_->rho) {
    auto [a, b] = static_pair_at(family, d, r);
    s1_.push_back(a);
    s2_.push_back(b);
    pot_.push_back(2 * a);
  }
}

void RadialSystem::check_state(const RadialStatePair& s) const
{
  if (s.psi1.size() != grid_->rho.size() || s.psi2.size() != grid_->rho.size())
    throw std::invalid_argument("state does not live on this grid");
  if (s.d != d_ || s.family != family_) throw std::invalid_argument("state belongs to a different system");
}

RadialStatePair RadialSystem::state_from(std::vector<double> psi1, std::vector<double> psi2, double tau) const
{
  RadialStatePair s{tau, d_, family_, grid_, std::move(psi1), std::move(psi2)};
  check_state(s);
  return s;
}

RadialStatePair RadialSystem::static_state() const { return state_from(s1_, s2_); }

RadialStatePair RadialSystem::rhs(const RadialStatePair& s) const
{
  check_state(s);
  const auto& g = *grid_;
  RadialStatePair out = s;
  for (int i = 0; i < g.N; ++i) {
    double r = g.rho[i];
    double p1 = g.apply(g.d1[i], s.psi1), pp1 = g.apply(g.d2[i], s.psi1), p2 = g.apply(g.d1[i], s.psi2);
    double lap = pp1 + (d_ - 1) / r * p1;
    out.psi1[i] = -r * p1 - 2 * s.psi1[i] + s.psi2[i];
    out.psi2[i] = lap - r * p2 - 3 * s.psi2[i] + s.psi1[i] * s.psi1[i];
  }
  return out;
}

void RadialSystem::perturbation_rhs(std::span<const double> phi1, std::span<const double> phi2,
                                    std::span<double> out1, std::span<double> out2) const
{
  const auto& g = *grid_;
  for (int i = 0; i < g.N; ++i) {
    double r = g.rho[i];
    double p1 = g.apply(g.d1[i], phi1), pp1 = g.apply(g.d2[i], phi1), p2 = g.apply(g.d1[i], phi2);
    double lap = pp1 + (d_ - 1) / r * p1;
    out1[i] = -r * p1 - 2 * phi1[i] + phi2[i];
    out2[i] = lap - r * p2 - 3 * phi2[i] + (pot_[i] + phi1[i]) * phi1[i];
  }
}

RadialStatePair RadialSystem::upsilon_data(const RadialData& f, const RadialData& g, double T, double alpha) const
{
  if (!(T >= 0.5 && T <= 1.5)) throw std::domain_error("blowup time T must lie in [1/2, 3/2]");
  if (alpha != 0 && family_ != FamilyKind::u_star) throw std::invalid_argument("alpha applies to the u-star family only");
  if (alpha != 0 && d_ != 9) throw std::invalid_argument("the correction direction h is defined for d = 9");
  std::vector<double> p1, p2;
  for (double r : grid_->rho) {
    double x = T * r;
    auto [a, b] = static_pair_at(family_, d_, x);
    double v1 = a + f(x), v2 = b + g(x);
    if (alpha != 0) {
      auto [h1, h2] = pair_from(h1_fn, x, 3.0);
      v1 += alpha * h1;
      v2 += alpha * h2;
    }
    p1.push_back(T * T * v1);
    p2.push_back(T * T * T * v2);
  }
  return state_from(std::move(p1), std::move(p2));
}

std::vector<std::string> RadialSystem::mode_labels() const
{
  if (family_ == FamilyKind::ode_kappa) return {"g"};
  if (d_ != 9) return {};
  return {"h", "g0"};
}

std::vector<double> RadialSystem::mode_rates() const
{
  if (family_ == FamilyKind::ode_kappa) return {1.0};
  if (d_ != 9) return {};
  return {3.0, 1.0};
}

std::vector<std::pair<std::vector<double>, std::vector<double>>> RadialSystem::unstable_modes() const
{
  std::vector<std::pair<std::vector<double>, std::vector<double>>> out;
  const auto& rho = grid_->rho;
  if (family_ == FamilyKind::ode_kappa) {
    out.emplace_back(std::vector<double>(rho.size(), 1.0), std::vector<double>(rho.size(), 3.0));
    return out;
  }
  if (d_ != 9) throw std::invalid_argument("u-star unstable modes are tabulated for d = 9 only");
  for (auto [fn, lam] : {std::pair{&h1_fn, 3.0}, std::pair{&g01_fn, 1.0}}) {
    std::vector<double> a, b;
    for (double r : rho) {
      auto [x, y] = pair_from(fn, r, lam);
      a.push_back(x);
      b.push_back(y);
    }
    out.emplace_back(std::move(a), std::move(b));
  }
  return out;
}

double RadialSystem::inner(std::span<const double> a1, std::span<const double> a2, std::span<const double> b1,
                           std::span<const double> b2) const
{
  const auto& g = *grid_;
  double s = 0;
  for (int i = 0; i < g.N; ++i) {
    double w = g.quad[i] * std::pow(g.rho[i], d_ - 1);
    if (w == 0) continue;
    s += w * (a1[i] * b1[i] + g.apply(g.d1[i], a1) * g.apply(g.d1[i], b1) + a2[i] * b2[i]);
  }
  return s;
}

double RadialSystem::distance(const RadialStatePair& s) const
{
  check_state(s);
  std::vector<double> p1(s1_.size()), p2(s1_.size());
  for (std::size_t i = 0; i < p1.size(); ++i) {
    p1[i] = s.psi1[i] - s1_[i];
    p2[i] = s.psi2[i] - s2_[i];
  }
  return std::sqrt(std::max(0.0, inner(p1, p2, p1, p2)));
}

ModeAmplitudes RadialSystem::mode_amplitudes(const RadialStatePair& s) const
{
  check_state(s);
  ModeAmplitudes out;
  out.labels = mode_labels();
  auto modes = unstable_modes();
  const std::size_t m = modes.size(), n = s1_.size();
  std::vector<double> p1(n), p2(n);
  for (std::size_t i = 0; i < n; ++i) {
    p1[i] = s.psi1[i] - s1_[i];
    p2[i] = s.psi2[i] - s2_[i];
  }
  std::vector<std::vector<double>> G(m, std::vector<double>(m));
  std::vector<double> b(m);
  for (std::size_t k = 0; k < m; ++k) {
    b[k] = inner(p1, p2, modes[k].first, modes[k].second);
    for (std::size_t l = 0; l < m; ++l)
      G[k][l] = inner(modes[k].first, modes[k].second, modes[l].first, modes[l].second);
  }
  // conditioning of the normalized Gram matrix
  double det = 1;
  if (m == 2) {
    double c = G[0][1] / std::sqrt(G[0][0] * G[1][1]);
    out.basis_overlap = std::abs(c);
    det = 1 - c * c;
  }
  if (det < 1e-12) throw ConditioningError("mode basis Gram matrix is singular to working precision");
  out.amp.assign(m, 0.0);
  if (m == 1) out.amp[0] = b[0] / G[0][0];
  else {
    double D = G[0][0] * G[1][1] - G[0][1] * G[1][0];
    out.amp[0] = (b[0] * G[1][1] - b[1] * G[0][1]) / D;
    out.amp[1] = (G[0][0] * b[1] - G[1][0] * b[0]) / D;
  }
  double nphi = inner(p1, p2, p1, p2);
  if (nphi > 0) {
    for (std::size_t k = 0; k < m; ++k)
      for (std::size_t i = 0; i < n; ++i) {
        p1[i] -= out.amp[k] * modes[k].first[i];
        p2[i] -= out.amp[k] * modes[k].second[i];
      }
    out.residual = std::sqrt(std::max(0.0, inner(p1, p2, p1, p2) / nphi));
  }
  return out;
}

void RadialSystem::build_left_vectors() const
{
  if (!left_.empty()) return;
  const int n = grid_->N;
  auto modes = unstable_modes();
  auto rates = mode_rates();
  // columns of the linearization from unit vectors
  std::vector<Eigen::Triplet<double>> trips;
  std::vector<double> e1(n, 0.0), e2(n, 0.0), o1(n), o2(n);
  auto pot = pot_;
  for (int j = 0; j < 2 * n; ++j) {
    auto& e = j < n ? e1 : e2;
    e[j % n] = 1;
    // linear part only: the quadratic term vanishes to first order
    const auto& g = *grid_;
    for (int i = 0; i < n; ++i) {
      double r = g.rho[i];
      double p1 = g.apply(g.d1[i], e1), pp1 = g.apply(g.d2[i], e1), p2 = g.apply(g.d1[i], e2);
      double lap = pp1 + (d_ - 1) / r * p1;
      o1[i] = -r * p1 - 2 * e1[i] + e2[i];
      o2[i] = lap - r * p2 - 3 * e2[i] + pot[i] * e1[i];
    }
    for (int i = 0; i < n; ++i) {
      if (o1[i] != 0) trips.emplace_back(j, i, o1[i]); // transposed
      if (o2[i] != 0) trips.emplace_back(j, n + i, o2[i]);
    }
    e[j % n] = 0;
  }
  Eigen::SparseMatrix<double> At(2 * n, 2 * n);
  At.setFromTriplets(trips.begin(), trips.end());
  for (std::size_t k = 0; k < modes.size(); ++k) {
    Eigen::SparseMatrix<double> M = At;
    for (int i = 0; i < 2 * n; ++i) M.coeffRef(i, i) -= rates[k] + 1e-7;
    M.makeCompressed();
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(M);
    if (lu.info() != Eigen::Success) throw ConditioningError("left eigenvector solve failed");
    Eigen::VectorXd w = Eigen::VectorXd::Ones(2 * n);
    for (int it = 0; it < 4; ++it) {
      w = lu.solve(w);
      w /= w.norm();
    }
    std::vector<double> wv(w.data(), w.data() + 2 * n);
    double s = 0;
    for (int i = 0; i < n; ++i) s += wv[i] * modes[k].first[i] + wv[n + i] * modes[k].second[i];
    if (std::abs(s) < 1e-12) throw ConditioningError("left eigenvector is orthogonal to its mode");
    left_.push_back(std::move(wv));
    left_scale_.push_back(s);
  }
}

std::vector<double> RadialSystem::spectral_amplitudes(const RadialStatePair& s) const
{
  check_state(s);
  build_left_vectors();
  const std::size_t n = s1_.size();
  std::vector<double> out;
  for (std::size_t k = 0; k < left_.size(); ++k) {
    double a = 0;
    for (std::size_t i = 0; i < n; ++i)
      a += left_[k][i] * (s.psi1[i] - s1_[i]) + left_[k][n + i] * (s.psi2[i] - s2_[i]);
    out.push_back(a / left_scale_[k]);
  }
  return out;
}

Trajectory RadialSystem::evolve(const RadialStatePair& init, const EvolveOptions& opt) const
{
  check_state(init);
  if (!(opt.tau_end > 0) || opt.tau_end > 20) throw std::invalid_argument("tau_end must lie in (0, 20]");
  if (!(opt.sample_every > 0) || !(opt.cfl > 0) || opt.cfl > 1) throw std::invalid_argument("bad step control");
  const std::size_t n = s1_.size();
  const double h = grid_->h;
  const int per_sample = std::max(1, static_cast<int>(std::ceil(opt.sample_every / (opt.cfl * h))));
  const double dt = opt.sample_every / per_sample;
  const int samples = static_cast<int>(std::lround(opt.tau_end / opt.sample_every));
  const bool with_modes = !mode_labels().empty();

  std::vector<double> p1(n), p2(n);
  for (std::size_t i = 0; i < n; ++i) {
    p1[i] = init.psi1[i] - s1_[i];
    p2[i] = init.psi2[i] - s2_[i];
  }
  Trajectory tr;
  tr.labels = mode_labels();
  double tau = init.tau;
  auto record = [&] {
    RadialStatePair s = state_from(p1, p2, tau);
    for (std::size_t i = 0; i < n; ++i) {
      s.psi1[i] += s1_[i];
      s.psi2[i] += s2_[i];
    }
    TrajectorySample smp;
    smp.tau = tau;
    smp.distance = std::sqrt(std::max(0.0, inner(p1, p2, p1, p2)));
    if (with_modes) smp.amp = mode_amplitudes(s).amp;
    for (std::size_t i = 0; i < n; ++i) smp.sup = std::max(smp.sup, std::abs(p1[i]));
    smp.min_psi1 = *std::min_element(s.psi1.begin(), s.psi1.end());
    tr.samples.push_back(std::move(smp));
    tr.final_state = std::move(s);
    tr.last_valid_tau = tau;
  };
  record();

  std::vector<double> k1a(n), k1b(n), k2a(n), k2b(n), k3a(n), k3b(n), k4a(n), k4b(n), ta(n), tb(n);
  for (int s = 0; s < samples; ++s) {
    for (int st = 0; st < per_sample; ++st) {
      perturbation_rhs(p1, p2, k1a, k1b);
      for (std::size_t i = 0; i < n; ++i) {
        ta[i] = p1[i] + 0.5 * dt * k1a[i];
        tb[i] = p2[i] + 0.5 * dt * k1b[i];
      }
      perturbation_rhs(ta, tb, k2a, k2b);
      for (std::size_t i = 0; i < n; ++i) {
        ta[i] = p1[i] + 0.5 * dt * k2a[i];
        tb[i] = p2[i] + 0.5 * dt * k2b[i];
      }
      perturbation_rhs(ta, tb, k3a, k3b);
      for (std::size_t i = 0; i < n; ++i) {
        ta[i] = p1[i] + dt * k3a[i];
        tb[i] = p2[i] + dt * k3b[i];
      }
      perturbation_rhs(ta, tb, k4a, k4b);
      bool ok = true;
      for (std::size_t i = 0; i < n; ++i) {
        ta[i] = p1[i] + dt / 6 * (k1a[i] + 2 * k2a[i] + 2 * k3a[i] + k4a[i]);
        tb[i] = p2[i] + dt / 6 * (k1b[i] + 2 * k2b[i] + 2 * k3b[i] + k4b[i]);
        if (!std::isfinite(ta[i]) || !std::isfinite(tb[i]) || std::abs(ta[i]) > opt.divergence ||
            std::abs(tb[i]) > opt.divergence)
          ok = false;
      }
      if (!ok) {
        tr.diverged = true;
        return tr;
      }
      p1.swap(ta);
      p2.swap(tb);
    }
    tau = init.tau + (s + 1) * opt.sample_every;
    record();
  }
  return tr;
}

DecayFit fit_rate(std::span<const double> tau, std::span<const double> value, double t0, double t1)
{
  if (tau.size() != value.size()) throw std::invalid_argument("fit_rate: size mismatch");
  std::vector<double> x, y;
  for (std::size_t i = 0; i < tau.size(); ++i) {
    if (tau[i] < t0 - 1e-12 || tau[i] > t1 + 1e-12) continue;
    if (!(value[i] > 0)) throw std::domain_error("fit_rate: nonpositive value in the window");
    x.push_back(tau[i]);
    y.push_back(std::log(value[i]));
  }
  if (x.size() < 10) throw std::invalid_argument("fit_rate: fewer than 10 samples in the window");
  auto fit = least_squares(x, y, {[](double) { return 1.0; }, [](double t) { return t; }});
  DecayFit out;
  out.t0 = t0;
  out.t1 = t1;
  out.amplitude = std::exp(fit.coef[0]);
  out.exponent = fit.coef[1];
  out.residual = fit.rms_residual;
  out.meaningful = out.residual < 1e-2;
  return out;
}

DecayFit fit_rate(const Trajectory& tr, double t0, double t1, int amp_index)
{
  std::vector<double> t, v;
  for (const auto& s : tr.samples) {
    t.push_back(s.tau);
    v.push_back(amp_index < 0 ? s.distance : std::abs(s.amp.at(amp_index)));
  }
  return fit_rate(t, v, t0, t1);
}

namespace {

struct Shooter {
  const RadialSystem& sys;
  const RadialData& f;
  const RadialData& g;
  const TuneOptions& opt;
  int runs = 0;

  // unstable amplitudes at tau_star, rescaled by exp(-rate tau_star)
  std::vector<double> objective(double T, double alpha, double tau_star)
  {
    auto init = sys.upsilon_data(f, g, T, alpha);
    auto rates = sys.mode_rates();
    std::vector<double> amp;
    if (tau_star <= 0) amp = opt.spectral ? sys.spectral_amplitudes(init) : sys.mode_amplitudes(init).amp;
    else {
      EvolveOptions eo;
      eo.tau_end = tau_star;
      eo.sample_every = tau_star;
      auto tr = sys.evolve(init, eo);
      ++runs;
      if (tr.diverged) throw std::runtime_error("trajectory diverged before tau*");
      amp = opt.spectral ? sys.spectral_amplitudes(tr.final_state) : sys.mode_amplitudes(tr.final_state).amp;
    }
    for (std::size_t k = 0; k < amp.size(); ++k) amp[k] *= std::exp(-rates[k] * tau_star);
    return amp;
  }
};

} // namespace

TuneResult tune(FamilyKind family, int d, const RadialData& f, const RadialData& g, const TuneOptions& opt)
{
  RadialSystem sys(family, d, opt.N);
  TuneResult res;
  res.family = family;
  res.d = d;
  const bool two = family == FamilyKind::u_star;
  if (two && d != 9) throw std::invalid_argument("u-star tuning is available for d = 9");
  Shooter sh{sys, f, g, opt};
  std::ostringstream diag;

  // continuation in the horizon; chord iteration with a finite-difference Jacobian per stage,
  // stopped once the objective no longer contracts (its floor is set by roundoff in the projection)
  std::vector<double> p{1.0, 0.0};
  const double step = 1e-7;
  bool tuned = true;
  bool trivial = sys.distance(sys.upsilon_data(f, g, 1.0, 0.0)) == 0;
  auto norm = [](const std::vector<double>& v) {
    double m = 0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
  };
  if (!trivial) {
    try {
      for (double horizon : {0.0, 0.5 * opt.tau_star, opt.tau_star}) {
        auto F = sh.objective(p[0], p[1], horizon);
        std::vector<std::vector<double>> cols(two ? 2 : 1);
        parallel_for(cols.size(), [&](std::size_t k) {
          cols[k] = sh.objective(p[0] + (k == 0 ? step : 0), p[1] + (k == 1 ? step : 0), horizon);
        });
        double j00 = (cols[0][0] - F[0]) / step, j01 = 0, j10 = 0, j11 = 1;
        if (two) {
          j10 = (cols[0][1] - F[1]) / step;
          j01 = (cols[1][0] - F[0]) / step;
          j11 = (cols[1][1] - F[1]) / step;
        }
        double D = j00 * j11 - j01 * j10;
        if (D == 0 || !std::isfinite(D)) throw std::runtime_error("singular shooting Jacobian");
        double best = norm(F);
        for (int it = 0; it < 12 && best > 0; ++it) {
          double f1 = two ? F[1] : 0;
          std::vector<double> q{p[0] - (F[0] * j11 - f1 * j01) / D, p[1] - (j00 * f1 - j10 * F[0]) / D};
          if (std::abs(q[0] - 1) > opt.delta || std::abs(q[1]) > opt.delta)
            throw std::runtime_error("parameters left the admissible box");
          auto Fq = sh.objective(q[0], q[1], horizon);
          double fq = norm(Fq);
          if (fq < best) {
            p = q;
            F = Fq;
          }
          if (!(fq < 0.5 * best)) break;
          best = fq;
        }
      }
    } catch (const std::exception& e) {
      tuned = false;
      diag << "no bracket: " << e.what() << " at T = " << p[0] << ", alpha = " << p[1] << "; ";
    }
  }
  res.T = p[0];
  res.alpha = p[1];
  res.trajectories = sh.runs;
  if (!tuned) {
    res.verdict = "no-tune";
    res.diagnostics = diag.str();
    return res;
  }

  EvolveOptions eo;
  eo.tau_end = opt.tau_end;
  eo.sample_every = 0.05;
  res.trajectory = sys.evolve(sys.upsilon_data(f, g, res.T, res.alpha), eo);
  ++res.trajectories;
  const auto& smp = res.trajectory.samples;
  res.initial_distance = smp.front().distance;
  res.final_distance = smp.back().distance;
  res.min_psi1 = smp.front().min_psi1;
  res.monotone_after_2 = true;
  double prev = -1;
  for (const auto& s : smp) {
    res.peak_distance = std::max(res.peak_distance, s.distance);
    res.min_psi1 = std::min(res.min_psi1, s.min_psi1);
    if (s.tau <= opt.bound_tau + 1e-12)
      res.max_ratio = std::max(res.max_ratio, res.initial_distance > 0 ? s.distance / res.initial_distance : 0.0);
    if (s.tau >= 2 - 1e-12) {
      if (prev >= 0 && s.distance > prev) res.monotone_after_2 = false;
      prev = s.distance;
    }
  }
  res.bounded = res.max_ratio <= 2;
  bool decays = true;
  if (trivial) res.decay = {};
  else {
    res.decay = fit_rate(res.trajectory, 2.0, opt.tau_end);
    decays = res.decay.exponent < 0 && res.final_distance < res.peak_distance;
  }
  bool ok = !res.trajectory.diverged && res.bounded && decays && res.min_psi1 > 0;
  res.verdict = ok ? "pass" : "fail";
  if (res.trajectory.diverged) diag << "diverged at tau = " << res.trajectory.last_valid_tau << "; ";
  if (!res.bounded) diag << "distance ratio " << res.max_ratio << " exceeds 2; ";
  if (!decays) diag << "terminal distance does not decay; ";
  res.diagnostics = diag.str();
  return res;
}

} // namespace blowup
