#pragma once

#include <string>
#include <vector>

#include "meq/config.hpp"
#include "meq/report.hpp"

namespace meq {

/// gen, dfest, scan, ue-test, product-check, spectrum, factor, fullgroup,
/// accept, defaults.
const std::vector<std::string>& subcommands();

/// Runs one diagnostic and returns its report. Tables and traces go to the
/// `csv` path when it is set. Library errors propagate (see exit_code_for).
Report run_report(const std::string& subcommand, const RunConfig& config);

struct RunOutcome {
  std::string output;
  int exit_code = 0;
};

/// run_report serialized, or the defaults listing; exit code 5 when an
/// acceptance check does not pass.
RunOutcome run(const std::string& subcommand, const RunConfig& config);

}  // namespace meq
