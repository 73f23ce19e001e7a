#pragma once

#include "blowup/certify.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace blowup {

struct CheckResult {
  int id = 0;
  std::string name;
  std::string anchor;      // stable identifier of the claim being checked
  Verdict verdict = Verdict::fail;
  bool exploratory = false;
  double seconds = 0;
  double budget_seconds = 0;
  std::string detail;      // one-line summary of the measured quantities
  nlohmann::json data;
};

struct CheckInfo {
  int id;
  const char* name;
  const char* anchor;
  double budget_seconds;
};

const std::vector<CheckInfo>& check_catalog();

// runs acceptance check 1..12; exceptions inside a check become a fail verdict with the message
CheckResult run_check(int id);

// check ids of a named suite: quick, paper-checks, stress
std::vector<int> suite_checks(const std::string& name);

// overall verdict: fail if any non-exploratory check fails, else inconclusive if any is, else pass
Verdict overall(const std::vector<CheckResult>& results);

nlohmann::json to_json(const CheckResult& r);

// "[PASS] 5 spectrum-recovery (12.3 s / 300 s): ..."
std::string summary_line(const CheckResult& r);

} // namespace blowup
