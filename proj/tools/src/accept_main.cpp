// Acceptance suite driver: one PASS/FAIL line per criterion.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "orthospec/app/acceptance.hpp"
#include "orthospec/app/config.hpp"

int main(int argc, char** argv) {
  CLI::App app{"orthospec acceptance suite"};
  orthospec::app::AcceptanceOptions options;
  std::string report_path;
  app.add_option("-j,--threads", options.threads, "worker threads");
  app.add_option("--only", options.only, "criterion ids to run");
  app.add_option("--scratch", options.scratch_dir, "scratch directory");
  app.add_option("--report", report_path, "write the JSON report here");
  CLI11_PARSE(app, argc, argv);

  const auto results = orthospec::app::run_acceptance(
      options, [](const orthospec::app::CriterionResult& r) {
        std::cout << orthospec::app::format_result_line(r) << std::endl;
      });
  bool all = true;
  for (const auto& r : results) all = all && r.passed;
  std::cout << (all ? "ALL PASS" : "FAILURES") << " (" << results.size()
            << " criteria)" << std::endl;

  if (!report_path.empty()) {
    auto report = orthospec::app::acceptance_report(results);
    report["version"] = orthospec::app::tool_version();
    std::ofstream(report_path, std::ios::binary) << report.dump(2) << "\n";
  }
  return all ? 0 : 1;
}
