#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "meq/config.hpp"

namespace meq {

using Json = nlohmann::ordered_json;

enum class CheckStatus { passed, failed, inconclusive };
const char* to_string(CheckStatus status);

struct Check {
  std::string id;
  std::string name;
  CheckStatus status = CheckStatus::failed;
  std::string detail;
  /// Measured values and the parameters they were measured with.
  Json values = Json::object();

  bool passed() const { return status == CheckStatus::passed; }
};

/// {version, config, results[], checks[]}. Wall time is not part of the
/// report so that equal (config, seed) give equal bytes.
class Report {
 public:
  explicit Report(const RunConfig& config);

  void add_result(const std::string& operation, Json parameters, Json value);
  void add_check(Check check);

  const std::vector<Check>& checks() const { return checks_; }
  bool all_passed() const;

  Json to_json() const;
  /// Pretty-printed, doubles with 17 significant digits, trailing newline.
  std::string serialize() const;

 private:
  Json config_;
  Json results_ = Json::array();
  std::vector<Check> checks_;
};

/// Compact or indented JSON text with doubles printed as %.17g.
std::string dump_json(const Json& j, int indent = 2);

/// Double as %.17g (the CSV and report number format).
std::string format_number(double v);

}  // namespace meq
