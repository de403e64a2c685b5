#include "meq/report.hpp"

#include <cmath>
#include <cstdio>

namespace meq {

const char* to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::passed: return "pass";
    case CheckStatus::failed: return "fail";
    case CheckStatus::inconclusive: return "inconclusive";
  }
  return "fail";
}

std::string format_number(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

void emit(const Json& j, int indent, int level, std::string& out) {
  const auto newline = [&](int lvl) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * lvl), ' ');
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(level + 1);
        out += Json(it.key()).dump();
        out += indent < 0 ? ":" : ": ";
        emit(it.value(), indent, level + 1, out);
      }
      newline(level);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += ',';
        first = false;
        newline(level + 1);
        emit(v, indent, level + 1, out);
      }
      newline(level);
      out += ']';
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      out += std::isfinite(v) ? format_number(v) : "null";
      return;
    }
    default: out += j.dump();
  }
}

}  // namespace

std::string dump_json(const Json& j, int indent) {
  std::string out;
  emit(j, indent, 0, out);
  return out;
}

Report::Report(const RunConfig& config) : config_(config.to_json()) {}

void Report::add_result(const std::string& operation, Json parameters, Json value) {
  Json r = Json::object();
  r["operation"] = operation;
  r["parameters"] = std::move(parameters);
  r["value"] = std::move(value);
  results_.push_back(std::move(r));
}

void Report::add_check(Check check) { checks_.push_back(std::move(check)); }

bool Report::all_passed() const {
  for (const auto& c : checks_)
    if (!c.passed()) return false;
  return true;
}

Json Report::to_json() const {
  Json j = Json::object();
  j["version"] = MEQ_VERSION;
  j["config"] = config_;
  j["results"] = results_;
  Json checks = Json::array();
  for (const auto& c : checks_) {
    Json e = Json::object();
    e["id"] = c.id;
    e["name"] = c.name;
    e["status"] = to_string(c.status);
    e["passed"] = c.passed();
    e["detail"] = c.detail;
    e["values"] = c.values;
    checks.push_back(std::move(e));
  }
  j["checks"] = std::move(checks);
  return j;
}

std::string Report::serialize() const { return dump_json(to_json()) + "\n"; }

}  // namespace meq
