#pragma once

#include <functional>
#include <string>
#include <vector>

#include "meq/config.hpp"
#include "meq/report.hpp"

namespace meq {

struct Criterion {
  std::string id;
  std::string name;
  std::function<Check(const RunConfig&)> run;
};

/// The thirteen acceptance criteria with their fixed parameters. Only the
/// seed and accept.* keys of the config are read.
const std::vector<Criterion>& acceptance_criteria();

/// Runs every criterion (or those whose id is listed in `only`). A
/// criterion that throws is recorded as failed with the error text.
Report acceptance_suite(const RunConfig& config, const std::vector<std::string>& only = {});

}  // namespace meq
