#include "blowup/report.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace blowup {

using nlohmann::json;

Precision parse_precision(const std::string& s)
{
  if (s == "exact") return Precision::exact;
  if (s == "f64") return Precision::f64;
  if (s == "f128") return Precision::f128;
  throw std::invalid_argument("unknown precision: " + s);
}

const char* to_string(Precision p)
{
  switch (p) {
  case Precision::exact: return "exact";
  case Precision::f64: return "f64";
  default: return "f128";
  }
}

json to_json(const RunConfig& c)
{
  json params = json::object();
  for (const auto& [k, v] : c.params) params[k] = v;
  return {{"command", c.command}, {"d", c.d},       {"family", c.family}, {"precision", to_string(c.precision)},
          {"seed", c.seed},       {"params", params}, {"out", c.out.string()}};
}

json to_json(const Poly& p)
{
  json terms = json::array();
  for (const auto& [e, c] : p.terms()) terms.push_back({e, c.get_num().get_str(), c.get_den().get_str()});
  return {{"variables", p.vars()}, {"terms", terms}};
}

json to_json(const CertificateReport& r)
{
  json j = {{"lemma-id", r.lemma_id},
            {"bounds", r.bound},
            {"tactic", r.tactic},
            {"shifted-index", r.shifts},
            {"polynomial", to_json(r.polynomial)},
            {"verdict", to_string(r.verdict)},
            {"terms", r.terms},
            {"max-coefficient-bits", r.max_coeff_bits}};
  if (!r.note.empty()) j["note"] = r.note;
  if (!r.offending.empty()) {
    json off = json::array();
    for (const auto& [e, c] : r.offending) off.push_back({e, c.get_str()});
    j["offending-monomials"] = off;
  }
  if (r.witness)
    j["root-witness"] = {{"lo", r.witness->lo.get_str()}, {"hi", r.witness->hi.get_str()}, {"approx", r.witness->approx}};
  return j;
}

json to_json(const LemmaCertificate& c)
{
  json reps = json::array();
  for (const auto& r : c.reports) reps.push_back(to_json(r));
  return {{"ell-class", c.ell_class},
          {"b", c.b.get_str()},
          {"start-index", c.start},
          {"eps-envelope", c.eps_envelope},
          {"C-envelope", c.C_envelope},
          {"induction", to_string(c.induction)},
          {"verdict", to_string(c.verdict)},
          {"certificates", reps}};
}

json to_json(const ScanResult& s)
{
  json roots = json::array();
  for (const auto& r : s.roots)
    roots.push_back({{"re", r.lambda.real()},
                     {"im", r.lambda.imag()},
                     {"multiplicity", r.multiplicity},
                     {"residual", r.residual},
                     {"newton-iterations", r.newton_iterations}});
  json j = {{"d", s.base.d},
            {"ell", s.base.ell},
            {"potential", to_string(s.base.potential)},
            {"region", {{"re", {s.region.re_lo, s.region.re_hi}}, {"im", {s.region.im_lo, s.region.im_hi}}}},
            {"grid", {s.region.nx, s.region.ny}},
            {"roots", roots},
            {"total-winding", s.total_winding},
            {"exploratory", s.exploratory}};
  j["spectral-gap"] = s.spectral_gap ? json(*s.spectral_gap) : json(nullptr);
  return j;
}

json to_json(const WitnessReport& w)
{
  return {{"C", w.C},
          {"C-error", w.C_error},
          {"C-bound", 4e-8},
          {"constant-term", w.constant_term},
          {"log-coefficient", w.log_coefficient},
          {"log-coefficient-three-term-fit", w.log_coefficient_leading_fit},
          {"fit-residual", w.fit_residual},
          {"origin-exponent-lambda1", w.exponent_l0},
          {"origin-exponent-lambda0", w.exponent_l1},
          {"conclusive", w.conclusive},
          {"diagnostics", w.diagnostics}};
}

json to_json(const CorpusReport& r)
{
  return {{"d", r.d},
          {"k", r.k},
          {"corpus", r.count},
          {"seed", r.seed},
          {"max-degree", r.max_degree},
          {"c", dissipativity_constant(r.d).get_str()},
          {"max-gap", r.max_gap.get_str()},
          {"max-gap-float", r.max_gap.get_d()},
          {"ratio-range", {r.ratio_min, r.ratio_max}},
          {"failures", r.failures},
          {"exploratory", r.exploratory}};
}

json to_json(const DecayFit& f)
{
  return {{"window", {f.t0, f.t1}},
          {"exponent", f.exponent},
          {"amplitude", f.amplitude},
          {"residual", f.residual},
          {"meaningful", f.meaningful}};
}

json to_json(const TuneResult& r)
{
  return {{"family", to_string(r.family)},
          {"d", r.d},
          {"T*", r.T},
          {"alpha*", r.alpha},
          {"decay-exponent", r.decay.exponent},
          {"decay-fit", to_json(r.decay)},
          {"initial-distance", r.initial_distance},
          {"peak-distance", r.peak_distance},
          {"final-distance", r.final_distance},
          {"max-ratio", r.max_ratio},
          {"bounded", r.bounded},
          {"monotone-after-2", r.monotone_after_2},
          {"min-psi1", r.min_psi1},
          {"trajectories", r.trajectories},
          {"diagnostics", r.diagnostics},
          {"verdict", r.verdict}};
}

std::string render(const RunConfig& cfg, const std::string& anchor, json body)
{
  body["config"] = to_json(cfg);
  body["anchor"] = anchor;
  return body.dump(2) + "\n";
}

void write_text(const std::filesystem::path& p, const std::string& text)
{
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream f(p);
  if (!f) throw std::runtime_error("cannot write " + p.string());
  f << text;
}

namespace {

std::ostringstream csv_stream()
{
  std::ostringstream os;
  os << std::setprecision(17);
  return os;
}

} // namespace

std::string scan_csv(const ScanResult& s)
{
  auto os = csv_stream();
  os << "re,im,abs_indicator\n";
  for (std::size_t j = 0; j < s.im.size(); ++j)
    for (std::size_t i = 0; i < s.re.size(); ++i)
      os << s.re[i] << ',' << s.im[j] << ',' << s.abs_indicator[j * s.re.size() + i] << '\n';
  return os.str();
}

std::string trajectory_csv(const Trajectory& tr)
{
  auto os = csv_stream();
  os << "tau,distance";
  // the kappa family has a single unstable mode; its column is amp_g
  bool one = tr.labels.size() == 1;
  os << ",amp_h,amp_g,sup,min_psi1\n";
  for (const auto& s : tr.samples) {
    double h = 0, g = 0;
    if (one) g = s.amp.empty() ? 0 : s.amp[0];
    else {
      if (!s.amp.empty()) h = s.amp[0];
      if (s.amp.size() > 1) g = s.amp[1];
    }
    os << s.tau << ',' << s.distance << ',' << h << ',' << g << ',' << s.sup << ',' << s.min_psi1 << '\n';
  }
  return os.str();
}

std::string mode_csv(const RadialModeFunction& m)
{
  auto os = csv_stream();
  os << "rho,u,residual\n";
  for (std::size_t i = 0; i < m.rho.size(); ++i) os << m.rho[i] << ',' << m.u[i].v << ',' << m.residual[i] << '\n';
  return os.str();
}

std::string plot_script(const std::string& kind, const std::string& csv)
{
  std::ostringstream os;
  os << "set datafile separator ','\nset key autotitle columnhead\n";
  if (kind == "scan") {
    os << "set view map\nset logscale cb\nsplot '" << csv << "' using 1:2:3 with points palette pt 5 ps 0.5\n";
  } else if (kind == "evolve") {
    os << "set logscale y\nset xlabel 'tau'\nplot '" << csv << "' using 1:2 with lines, '' using 1:(abs($3)) with lines, "
       << "'' using 1:(abs($4)) with lines\n";
  } else if (kind == "resolvent") {
    os << "set xlabel 'rho'\nset y2tics\nset logscale y2\nplot '" << csv << "' using 1:2 with lines, '' using 1:3 axes x1y2 with lines\n";
  } else {
    throw std::invalid_argument("no plot template for " + kind);
  }
  os << "pause -1\n";
  return os.str();
}

} // namespace blowup
