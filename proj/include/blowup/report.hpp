#pragma once

#include "blowup/certify.hpp"
#include "blowup/checks.hpp"
#include "blowup/evolve.hpp"
#include "blowup/mode_scan.hpp"
#include "blowup/norms.hpp"
#include "blowup/resolvent.hpp"
#include "blowup/spectral_series.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>

namespace blowup {

enum class Precision { exact, f64, f128 };
Precision parse_precision(const std::string& s);
const char* to_string(Precision p);

struct RunConfig {
  std::string command;
  int d = 9;
  std::string family = "u-star";
  Precision precision = Precision::exact;
  std::uint64_t seed = 42;
  std::map<std::string, nlohmann::json> params; // command-specific options, as given
  std::filesystem::path out;
};

nlohmann::json to_json(const RunConfig& c);

nlohmann::json to_json(const Poly& p);
nlohmann::json to_json(const CertificateReport& r);
nlohmann::json to_json(const LemmaCertificate& c);
nlohmann::json to_json(const ScanResult& s);
nlohmann::json to_json(const WitnessReport& w);
nlohmann::json to_json(const CorpusReport& r);
nlohmann::json to_json(const TuneResult& r);
nlohmann::json to_json(const DecayFit& f);

// JSON document {config, anchor, result...}; dumps with a trailing newline, deterministic key order
std::string render(const RunConfig& cfg, const std::string& anchor, nlohmann::json body);
void write_text(const std::filesystem::path& p, const std::string& text);

std::string scan_csv(const ScanResult& s);
std::string trajectory_csv(const Trajectory& tr);
std::string mode_csv(const RadialModeFunction& m);

// gnuplot script plotting a CSV written by this tool
std::string plot_script(const std::string& kind, const std::string& csv);

} // namespace blowup
