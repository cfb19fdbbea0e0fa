#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "orthospec/app/config.hpp"

namespace orthospec::app {

enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitDomain = 2,
  kExitInconclusive = 3,
  kExitBudget = 4,
};

/// Names accepted by run_command, in display order.
const std::vector<std::string>& command_names();

/// Runs one command, writing artifacts under config.out and a short
/// summary to `text`. Errors are reported as error.json plus an exit code;
/// nothing is thrown.
int run_command(const std::string& command, const RunConfig& config,
                std::ostream& text);

/// Writes error.json for a failure that happened before a command could
/// run (e.g. an unreadable config).
void write_error(const std::string& out_dir, const std::string& command,
                 const std::string& kind, const std::string& message,
                 int exit_code);

}  // namespace orthospec::app
