#pragma once

#include <functional>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

namespace orthospec::app {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  /// One-line human summary of the measured values.
  std::string summary;
  /// Measured values for the report. Never contains timings.
  nlohmann::json metrics = nlohmann::json::object();
  double seconds = 0.0;
};

struct AcceptanceOptions {
  unsigned threads = 1;
  /// Where the determinism criterion writes its artifacts.
  std::string scratch_dir = "accept_scratch";
  /// Restrict to these criterion ids; all when empty.
  std::vector<int> only;
};

/// Runs the acceptance criteria in order, calling `on_result` after each.
std::vector<CriterionResult> run_acceptance(
    const AcceptanceOptions& options,
    const std::function<void(const CriterionResult&)>& on_result = {});

/// "[PASS] 3 enumeration exhaustiveness: ... (12.4 s)".
std::string format_result_line(const CriterionResult& result);

/// Deterministic JSON report (no timings).
nlohmann::json acceptance_report(const std::vector<CriterionResult>& results);

}  // namespace orthospec::app
