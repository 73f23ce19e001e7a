#include "blowup/checks.hpp"
#include "blowup/evolve.hpp"
#include "blowup/mode_scan.hpp"
#include "blowup/norms.hpp"
#include "blowup/profiles.hpp"
#include "blowup/report.hpp"
#include "blowup/resolvent.hpp"
#include "blowup/spectral_series.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <iostream>
#include <sstream>

using namespace blowup;
using nlohmann::json;

namespace {

enum Exit { ok = 0, failed = 1, inconclusive = 2, usage = 64 };

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

int exit_for(Verdict v) { return v == Verdict::pass ? ok : v == Verdict::fail ? failed : inconclusive; }

std::vector<std::string> split(const std::string& s, char sep)
{
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

double to_num(const std::string& s)
{
  std::size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw UsageError("not a number: '" + s + "'");
  }
  if (pos != s.size()) throw UsageError("not a number: '" + s + "'");
  return v;
}

std::vector<double> numbers(const std::string& s)
{
  std::vector<double> v;
  for (const auto& t : split(s, ',')) v.push_back(to_num(t));
  return v;
}

// "lo:hi"
std::pair<double, double> range(const std::string& s)
{
  auto p = split(s, ':');
  if (p.size() != 2) throw UsageError("expected lo:hi, got '" + s + "'");
  return {to_num(p[0]), to_num(p[1])};
}

// "0.1,0,...,0" padded with zeros to d entries; "..." is a zero run
std::vector<double> boost_angles(const std::string& s, int d)
{
  std::vector<double> a;
  if (!s.empty())
    for (const auto& t : split(s, ',')) {
      if (t == "...") continue;
      a.push_back(to_num(t));
    }
  if (static_cast<int>(a.size()) > d) throw UsageError("boost has more than d components");
  a.resize(static_cast<std::size_t>(d), 0.0);
  return a;
}

// zero | poly:c0,c1,... (sum c_k rho^k) | poly-even:c0,c1,... (sum c_k rho^(2k))
RadialData radial_function(const std::string& spec)
{
  if (spec.empty() || spec == "zero" || spec == "0") return [](double) { return 0.0; };
  auto colon = spec.find(':');
  if (colon == std::string::npos) throw UsageError("unknown function spec '" + spec + "'");
  std::string kind = spec.substr(0, colon);
  auto c = numbers(spec.substr(colon + 1));
  int stride = 0;
  if (kind == "poly") stride = 1;
  else if (kind == "poly-even") stride = 2;
  else throw UsageError("unknown function kind '" + kind + "'");
  return [c, stride](double r) {
    double x = stride == 1 ? r : r * r, acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
  };
}

void emit(const RunConfig& cfg, const std::string& anchor, json body, const std::filesystem::path& json_out = {})
{
  std::string text = render(cfg, anchor, std::move(body));
  if (!json_out.empty()) write_text(json_out, text);
  else std::cout << text;
}

// ------------------------------------------------------------------ verify-profiles

template <class S>
double max_pde_residual(FamilyKind kind, int d, const std::vector<double>& angles)
{
  std::optional<Boost<S>> boost;
  bool zero = std::all_of(angles.begin(), angles.end(), [](double a) { return a == 0; });
  if (!zero) {
    if constexpr (std::is_same_v<S, Rational>) {
      std::vector<Rational> m;
      for (double a : angles) m.emplace_back(std::tanh(a / 2)); // exact binary value of the rapidity parameter
      boost = boost_from_tanh_half(m);
    } else {
      boost = boost_from_angles<S>(angles);
    }
  }
  auto f = make_family<S>(kind, d, boost);
  double worst = 0;
  const std::vector<S> times{S(0), S(1) / S(4), S(1) / S(2)};
  for (const auto& t : times) {
    S s = S(f.T - t);
    for (auto xi : ball_test_grid<S>(d, 12)) {
      for (auto& x : xi) x = S(x * s);
      worst = std::max(worst, std::abs(to_double_any(pde_residual(f, t, std::span<const S>(xi)))));
    }
  }
  return worst;
}

int cmd_verify_profiles(RunConfig& cfg, const std::string& boost, int resolution)
{
  auto kind = parse_family_kind(cfg.family);
  auto angles = boost_angles(boost, cfg.d);
  cfg.params["boost"] = angles;
  cfg.params["resolution"] = resolution;
  double res = 0;
  switch (cfg.precision) {
  case Precision::exact: res = max_pde_residual<Rational>(kind, cfg.d, angles); break;
  case Precision::f64: res = max_pde_residual<double>(kind, cfg.d, angles); break;
  case Precision::f128: res = max_pde_residual<long double>(kind, cfg.d, angles); break;
  }
  bool res_ok = cfg.precision == Precision::exact ? res == 0 : res <= 1e-10;
  json body = {{"residual-max", res}, {"residual-tolerance", cfg.precision == Precision::exact ? 0.0 : 1e-10}};
  Verdict v = res_ok ? Verdict::pass : Verdict::fail;
  if (kind == FamilyKind::u_star) {
    auto fd = make_family<double>(kind, cfg.d, boost_from_angles<double>(angles));
    auto pos = positivity_on_ball(fd, resolution);
    json scal = json::object();
    bool scal_ok = true;
    for (int k : {1, 2}) {
      double e = sobolev_scaling_exponent(fd, k);
      double want = cfg.d / 2.0 - k;
      scal["k" + std::to_string(k)] = {{"fitted", e}, {"expected", want}};
      scal_ok = scal_ok && std::abs(e - want) <= 0.02 * std::abs(want);
    }
    body["positivity-min"] = pos.min;
    body["positivity"] = {{"argmin-r", pos.argmin_r}, {"argmin-cos", pos.argmin_cos}, {"slack", pos.slack}, {"verdict", pos.verdict}};
    body["scaling-exponents"] = scal;
    if (!scal_ok) v = Verdict::fail;
    else if (v == Verdict::pass && pos.verdict != "pass") v = Verdict::inconclusive;
  } else {
    body["positivity-min"] = nullptr; // 6 gamma^-2 has no zero
    body["scaling-exponents"] = nullptr;
  }
  auto pc = profile_constants(cfg.d);
  body["constants"] = {{"exact", pc.exact}, {"d0", static_cast<double>(pc.d0f)}, {"c1", static_cast<double>(pc.c1f)},
                       {"c2", static_cast<double>(pc.c2f)}, {"c3", static_cast<double>(pc.c3f)}};
  if (pc.exact)
    body["constants"]["rational"] = {{"d0", pc.d0.get_str()}, {"c1", pc.c1.get_str()}, {"c2", pc.c2.get_str()}, {"c3", pc.c3.get_str()}};
  body["verdict"] = to_string(v);
  emit(cfg, "profiles/pde-residual", body, cfg.out);
  return exit_for(v);
}

// ------------------------------------------------------------------ certify

int cmd_certify(RunConfig& cfg, const std::string& cls)
{
  cfg.params["ell-class"] = cls;
  if (cls != "0" && cls != "1" && cls != "ge2") throw UsageError("--ell-class must be 0, 1 or ge2");
  auto cert = certify_lemma(cls);
  json body = to_json(cert);
  body["lemma-id"] = "ell" + cls;
  emit(cfg, "spectral-series/delta-induction", body, cfg.out);
  if (!cfg.out.empty()) std::cout << "certify " << cls << ": " << to_string(cert.verdict) << "\n";
  return exit_for(cert.verdict);
}

// ------------------------------------------------------------------ scan

int cmd_scan(RunConfig& cfg, int ell, const std::string& re, const std::string& im, const std::string& grid,
             const std::string& potential)
{
  auto [rl, rh] = range(re);
  auto [il, ih] = range(im);
  auto g = split(grid, 'x');
  if (g.size() != 2) throw UsageError("--grid expects NxM");
  ScanRegion region{rl, rh, il, ih, static_cast<int>(to_num(g[0])), static_cast<int>(to_num(g[1]))};
  cfg.params["ell"] = ell;
  cfg.params["re"] = {rl, rh};
  cfg.params["im"] = {il, ih};
  cfg.params["grid"] = {region.nx, region.ny};
  cfg.params["potential"] = potential;
  auto s = eigenvalue_scan(cfg.d, ell, region, parse_potential(potential));
  bool refined = std::all_of(s.roots.begin(), s.roots.end(), [](const ScanRoot& r) { return r.residual < 1e-8; });
  int mult = 0;
  for (const auto& r : s.roots) mult += r.multiplicity;
  Verdict v = refined && mult == s.total_winding ? Verdict::pass : Verdict::inconclusive;
  json body = to_json(s);
  body["verdict"] = to_string(v);
  if (!cfg.out.empty()) {
    write_text(cfg.out, scan_csv(s));
    auto footer = cfg.out;
    footer += ".roots.json";
    emit(cfg, "mode-scan/unstable-spectrum-d9", body, footer);
    std::cout << "roots:";
    for (const auto& r : s.roots) std::cout << " " << r.lambda.real() << (r.lambda.imag() >= 0 ? "+" : "") << r.lambda.imag() << "i";
    std::cout << "\n";
  } else {
    emit(cfg, "mode-scan/unstable-spectrum-d9", body);
  }
  return exit_for(v);
}

// ------------------------------------------------------------------ kappa-spectrum

int cmd_kappa(RunConfig& cfg, int ell, double sigma)
{
  cfg.params["ell"] = ell;
  cfg.params["sigma"] = sigma;
  if (cfg.d != 7 && cfg.d != 9) throw UsageError("kappa-spectrum covers d = 7 and d = 9");
  if (sigma < -0.5) throw UsageError("sigma must be >= -1/2");
  auto ev = kappa_spectrum(cfg.d, ell, sigma);
  json coeffs = json::array();
  bool agree = true;
  for (double l : ev) {
    auto k = connection_coefficient_kappa(cfg.d, ell, cplx(l, 0));
    coeffs.push_back({{"lambda", l}, {"coefficient", std::abs(k.value)}, {"degenerate-log", k.degenerate_log}});
    agree = agree && k.value == cplx(0, 0);
  }
  json body = {{"ell", ell}, {"sigma", sigma}, {"eigenvalues", ev}, {"connection-coefficients", coeffs}};
  Verdict v = agree ? Verdict::pass : Verdict::fail;
  body["verdict"] = to_string(v);
  emit(cfg, "mode-scan/kappa-connection", body, cfg.out);
  return exit_for(v);
}

// ------------------------------------------------------------------ resolvent

int cmd_resolvent(RunConfig& cfg, double lambda, int ell, const std::string& forcing, int points)
{
  cfg.params["lambda"] = lambda;
  cfg.params["ell"] = ell;
  cfg.params["forcing"] = forcing;
  cfg.params["points"] = points;
  if (lambda != density_lambda(cfg.d))
    throw UsageError("the mode solve is available at lambda = " + std::to_string(density_lambda(cfg.d)) + " for d = " +
                     std::to_string(cfg.d));
  if (points < 10) throw UsageError("--points must be at least 10");
  std::vector<double> rho;
  for (int i = 0; i < points; ++i) rho.push_back(1e-3 + (1 - 2e-3) * i / (points - 1));
  auto m = solve_resolvent_mode(cfg.d, ell, radial_function(forcing), rho);
  Verdict v = m.max_residual <= 1e-8 ? Verdict::pass : Verdict::fail;
  json body = {{"max-residual", m.max_residual},
               {"quadrature-error", m.quadrature_error},
               {"origin-exponent", std::isfinite(m.origin_exponent) ? json(m.origin_exponent) : json(nullptr)},
               {"interval", {rho.front(), rho.back()}},
               {"verdict", to_string(v)}};
  if (!cfg.out.empty()) {
    write_text(cfg.out, mode_csv(m));
    auto side = cfg.out;
    side += ".json";
    emit(cfg, "resolvent/density-solve", body, side);
    std::cout << "max residual " << m.max_residual << ": " << to_string(v) << "\n";
  } else {
    emit(cfg, "resolvent/density-solve", body);
  }
  return exit_for(v);
}

// ------------------------------------------------------------------ witnesses

int cmd_witnesses(RunConfig& cfg)
{
  if (cfg.d != 9) throw UsageError("the multiplicity witnesses are computed for d = 9");
  auto w = multiplicity_witnesses(9);
  bool pass = w.C > 0 && w.C < 4e-8 && std::abs(w.constant_term - 864) <= 1 && std::abs(w.log_coefficient + 3456) <= 5;
  Verdict v = !w.conclusive ? Verdict::inconclusive : pass ? Verdict::pass : Verdict::fail;
  json body = to_json(w);
  body["verdict"] = to_string(v);
  emit(cfg, "resolvent/multiplicity-witnesses", body, cfg.out);
  return exit_for(v);
}

// ------------------------------------------------------------------ dissipativity

int cmd_dissipativity(RunConfig& cfg, int k, int corpus, int max_degree)
{
  cfg.params["k"] = k;
  cfg.params["corpus"] = corpus;
  cfg.params["max-degree"] = max_degree;
  if (corpus < 1) throw UsageError("--corpus must be positive");
  if (k < 3) throw UsageError("--k must be at least 3");
  auto rep = dissipativity_corpus(cfg.d, k, corpus, cfg.seed, max_degree);
  Verdict v = rep.failures.empty() ? Verdict::pass : Verdict::fail;
  json body = to_json(rep);
  body["verdict"] = to_string(v);
  emit(cfg, "norms/dissipativity", body, cfg.out);
  return exit_for(v);
}

// ------------------------------------------------------------------ evolve / tune

struct EvolveArgs {
  int N = 512;
  double T = 1, alpha = 0, tau_end = 10, sample_every = 0.05;
  std::string f = "zero", g = "zero";
};

int cmd_evolve(RunConfig& cfg, const EvolveArgs& a)
{
  cfg.params["N"] = a.N;
  cfg.params["T"] = a.T;
  cfg.params["alpha"] = a.alpha;
  cfg.params["f"] = a.f;
  cfg.params["g"] = a.g;
  cfg.params["tau-end"] = a.tau_end;
  cfg.params["sample-every"] = a.sample_every;
  RadialSystem sys(parse_family_kind(cfg.family), cfg.d, a.N);
  EvolveOptions eo;
  eo.tau_end = a.tau_end;
  eo.sample_every = a.sample_every;
  auto tr = sys.evolve(sys.upsilon_data(radial_function(a.f), radial_function(a.g), a.T, a.alpha), eo);
  const auto& last = tr.samples.back();
  json body = {{"samples", tr.samples.size()},
               {"mode-labels", tr.labels},
               {"initial-distance", tr.samples.front().distance},
               {"final-distance", last.distance},
               {"final-amplitudes", last.amp},
               {"min-psi1", last.min_psi1},
               {"diverged", tr.diverged},
               {"last-valid-tau", tr.last_valid_tau}};
  double min_psi = INFINITY;
  for (const auto& s : tr.samples) min_psi = std::min(min_psi, s.min_psi1);
  body["min-psi1-over-run"] = min_psi;
  if (tr.samples.size() >= 10 && tr.samples.front().distance > 0 && last.distance > 0) {
    double t1 = tr.samples.back().tau;
    body["distance-rate"] = to_json(fit_rate(tr, std::min(2.0, t1 / 2), t1));
  }
  body["verdict"] = tr.diverged ? "diverged" : "completed";
  if (!cfg.out.empty()) {
    write_text(cfg.out, trajectory_csv(tr));
    auto side = cfg.out;
    side += ".json";
    emit(cfg, "evolve/trajectory", body, side);
    std::cout << "evolved to tau = " << last.tau << ", distance " << last.distance << (tr.diverged ? " (diverged)" : "") << "\n";
  } else {
    emit(cfg, "evolve/trajectory", body);
  }
  return tr.diverged ? failed : ok;
}

int cmd_tune(RunConfig& cfg, const EvolveArgs& a, TuneOptions opt, const std::filesystem::path& traj)
{
  opt.N = a.N;
  opt.tau_end = a.tau_end;
  cfg.params["N"] = opt.N;
  cfg.params["f"] = a.f;
  cfg.params["g"] = a.g;
  cfg.params["tau-star"] = opt.tau_star;
  cfg.params["tau-end"] = opt.tau_end;
  cfg.params["bound-tau"] = opt.bound_tau;
  cfg.params["delta"] = opt.delta;
  auto r = tune(parse_family_kind(cfg.family), cfg.d, radial_function(a.f), radial_function(a.g), opt);
  if (!traj.empty()) write_text(traj, trajectory_csv(r.trajectory));
  emit(cfg, "evolve/tuned-stability", to_json(r), cfg.out);
  return r.verdict == "pass" ? ok : r.verdict == "fail" ? failed : inconclusive;
}

// ------------------------------------------------------------------ suite

int cmd_suite(RunConfig& cfg, const std::string& name, const std::vector<int>& only)
{
  cfg.params["suite"] = name;
  std::vector<int> ids = only.empty() ? suite_checks(name) : only;
  if (!only.empty()) cfg.params["checks"] = only;
  std::vector<CheckResult> results;
  json checks = json::array(), stats = json::array();
  auto t0 = std::chrono::steady_clock::now();
  for (int id : ids) {
    auto r = run_check(id);
    std::cout << summary_line(r) << std::endl;
    json j = to_json(r);
    stats.push_back({{"id", r.id}, {"seconds", r.seconds}, {"budget-seconds", r.budget_seconds}});
    j.erase("seconds");
    checks.push_back(std::move(j));
    results.push_back(std::move(r));
  }
  double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  Verdict v = overall(results);
  std::cout << "overall: " << to_string(v) << " (" << total << " s)\n";
  if (!cfg.out.empty()) {
    json body = {{"suite", name}, {"checks", checks}, {"verdict", to_string(v)}};
    write_text(cfg.out, render(cfg, "suite/" + name, body));
    auto side = cfg.out;
    side += ".stats.json";
    write_text(side, json({{"total-seconds", total}, {"checks", stats}}).dump(2) + "\n");
  }
  return exit_for(v);
}

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{"blowup-lab: profiles, spectral certificates, scans, resolvents, norms and similarity evolution"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string precision = "exact", out;
  app.add_option("--precision", precision, "exact | f64 | f128")->check(CLI::IsMember({"exact", "f64", "f128"}));

  auto common = [&](CLI::App* s, bool with_family) {
    s->add_option("--d", cfg.d, "dimension")->capture_default_str();
    s->add_option("--out", out, "output file");
    s->add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
    s->add_option("--precision", precision, "exact | f64 | f128")->check(CLI::IsMember({"exact", "f64", "f128"}));
    if (with_family) s->add_option("--family", cfg.family, "u-star | kappa")->capture_default_str();
  };

  auto* vp = app.add_subcommand("verify-profiles", "residuals, positivity and scaling of a profile family");
  std::string boost;
  int resolution = 100;
  common(vp, true);
  vp->add_option("--boost", boost, "comma-separated rapidities, padded with zeros");
  vp->add_option("--resolution", resolution)->capture_default_str();

  auto* cert = app.add_subcommand("certify", "exact certificates of the ratio bounds");
  std::string ell_class = "0";
  common(cert, false);
  cert->add_option("--ell-class", ell_class, "0 | 1 | ge2")->required();

  auto* scan = app.add_subcommand("scan", "connection-indicator eigenvalue scan");
  int ell = 0;
  std::string re = "0:4", im = "-2:2", grid = "200x200", potential = "u-star";
  common(scan, false);
  scan->add_option("--ell", ell)->capture_default_str();
  scan->add_option("--re", re)->capture_default_str();
  scan->add_option("--im", im)->capture_default_str();
  scan->add_option("--grid", grid)->capture_default_str();
  scan->add_option("--potential", potential, "u-star | kappa | free")->capture_default_str();

  auto* ks = app.add_subcommand("kappa-spectrum", "spectrum of the ODE-blowup linearization");
  double sigma = 0;
  common(ks, false);
  ks->add_option("--ell", ell)->capture_default_str();
  ks->add_option("--sigma", sigma)->capture_default_str();

  auto* rs = app.add_subcommand("resolvent", "mode-wise resolvent solve of the density argument");
  double lambda = 2.5;
  std::string forcing = "poly:1";
  int points = 200;
  common(rs, false);
  rs->add_option("--lambda", lambda)->capture_default_str();
  rs->add_option("--ell", ell)->capture_default_str();
  rs->add_option("--forcing", forcing, "poly:c0,c1,... | poly-even:c0,c1,...")->capture_default_str();
  rs->add_option("--points", points)->capture_default_str();

  auto* wi = app.add_subcommand("witnesses", "multiplicity witness integrals and asymptotics");
  common(wi, false);

  auto* di = app.add_subcommand("dissipativity", "exact dissipativity gaps on a random polynomial corpus");
  int k = 5, corpus = 500, max_degree = 6;
  common(di, false);
  di->add_option("--k", k)->capture_default_str();
  di->add_option("--corpus", corpus)->capture_default_str();
  di->add_option("--max-degree", max_degree)->capture_default_str();

  EvolveArgs ea;
  auto* ev = app.add_subcommand("evolve", "radial evolution in similarity coordinates");
  common(ev, true);
  ev->add_option("--N", ea.N)->capture_default_str();
  ev->add_option("--T", ea.T)->capture_default_str();
  ev->add_option("--alpha", ea.alpha)->capture_default_str();
  ev->add_option("--f", ea.f, "zero | poly:... | poly-even:...")->capture_default_str();
  ev->add_option("--g", ea.g)->capture_default_str();
  ev->add_option("--tau-end", ea.tau_end)->capture_default_str();
  ev->add_option("--sample-every", ea.sample_every)->capture_default_str();

  auto* tu = app.add_subcommand("tune", "shoot (T, alpha) so the unstable amplitudes vanish");
  TuneOptions topt;
  std::string traj;
  EvolveArgs ta;
  common(tu, true);
  tu->add_option("--N", ta.N)->capture_default_str();
  tu->add_option("--f", ta.f)->capture_default_str();
  tu->add_option("--g", ta.g)->capture_default_str();
  tu->add_option("--tau-star", topt.tau_star)->capture_default_str();
  tu->add_option("--tau-end", ta.tau_end)->capture_default_str();
  tu->add_option("--bound-tau", topt.bound_tau)->capture_default_str();
  tu->add_option("--delta", topt.delta)->capture_default_str();
  tu->add_option("--trajectory", traj, "CSV of the tuned trajectory");

  auto* su = app.add_subcommand("suite", "run a named check suite");
  std::string suite_name = "quick";
  std::vector<int> only;
  common(su, false);
  su->add_option("--name", suite_name, "quick | paper-checks | stress")->capture_default_str();
  su->add_option("--only", only, "run these check ids instead");
  auto* run = app.add_subcommand("run", "alias of suite");
  common(run, false);
  run->add_option("--suite", suite_name)->required();

  auto* pl = app.add_subcommand("plot", "print a gnuplot script for a CSV artifact");
  std::string plot_kind, csv;
  pl->add_option("--kind", plot_kind, "scan | evolve | resolvent")->required();
  pl->add_option("--csv", csv)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return usage;
  }

  try {
    cfg.precision = parse_precision(precision);
    cfg.out = out;
    CLI::App* sub = app.get_subcommands().front();
    cfg.command = sub->get_name();
    if (sub == vp) return cmd_verify_profiles(cfg, boost, resolution);
    if (sub == cert) return cmd_certify(cfg, ell_class);
    if (sub == scan) return cmd_scan(cfg, ell, re, im, grid, potential);
    if (sub == ks) return cmd_kappa(cfg, ell, sigma);
    if (sub == rs) return cmd_resolvent(cfg, lambda, ell, forcing, points);
    if (sub == wi) return cmd_witnesses(cfg);
    if (sub == di) return cmd_dissipativity(cfg, k, corpus, max_degree);
    if (sub == ev) return cmd_evolve(cfg, ea);
    if (sub == tu) return cmd_tune(cfg, ta, topt, traj);
    if (sub == su || sub == run) {
      if (suite_name != "quick" && suite_name != "paper-checks" && suite_name != "stress")
        throw UsageError("unknown suite: " + suite_name);
      return cmd_suite(cfg, suite_name, only);
    }
    if (sub == pl) {
      if (plot_kind != "scan" && plot_kind != "evolve" && plot_kind != "resolvent") throw UsageError("unknown plot kind");
      std::cout << plot_script(plot_kind, csv);
      return ok;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << json({{"error", "usage"}, {"message", e.what()}}).dump() << "\n";
    return usage;
  } catch (const std::domain_error& e) {
    std::cerr << json({{"error", "domain"}, {"message", e.what()}}).dump() << "\n";
    return usage;
  } catch (const std::exception& e) {
    std::cerr << json({{"error", "module"}, {"message", e.what()}}).dump() << "\n";
    return failed;
  }
  return usage;
}
