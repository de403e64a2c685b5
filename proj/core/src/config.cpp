#include "meq/config.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "meq/errors.hpp"

namespace meq {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

void validate(const RunConfig::Entry& e, const std::string& value) {
  using K = RunConfig::Kind;
  switch (e.kind) {
    case K::integer: parse_int(value, e.key); break;
    case K::unsigned_integer: parse_uint(value, e.key); break;
    case K::real: parse_double(value, e.key); break;
    case K::range: parse_range(value, e.key); break;
    case K::text: break;
  }
}

}  // namespace

std::int64_t parse_int(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  errno = 0;
  char* end = nullptr;
  const long long v = std::strtoll(t.c_str(), &end, 10);
  if (t.empty() || *end != '\0' || errno == ERANGE)
    throw InvalidParameter("'" + what + "' expects an integer, got '" + text + "'");
  return v;
}

std::uint64_t parse_uint(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  errno = 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(t.c_str(), &end, 10);
  if (t.empty() || t[0] == '-' || *end != '\0' || errno == ERANGE)
    throw InvalidParameter("'" + what + "' expects a non-negative integer, got '" + text + "'");
  return v;
}

double parse_double(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || *end != '\0' || errno == ERANGE)
    throw InvalidParameter("'" + what + "' expects a number, got '" + text + "'");
  return v;
}

std::pair<std::int64_t, std::int64_t> parse_range(const std::string& text, const std::string& what) {
  const auto dots = text.find("..");
  if (dots == std::string::npos)
    throw InvalidParameter("'" + what + "' expects a range a..b, got '" + text + "'");
  const std::int64_t a = parse_int(text.substr(0, dots), what);
  const std::int64_t b = parse_int(text.substr(dots + 2), what);
  if (a > b) throw InvalidParameter("'" + what + "' range " + text + " is empty");
  return {a, b};
}

RunConfig RunConfig::defaults() {
  using K = Kind;
  RunConfig c;
  c.entries_ = {
      {"seed", K::unsigned_integer, "1", "master seed; every random draw derives from it"},
      {"system", K::text, "sturmian",
       "cantor-substitution | thue-morse | sturmian | toeplitz-ex5 | odometer | rotation | skew-product | "
       "period-doubling"},
      {"alpha", K::text, "golden", "rotation number: golden | silver | p/q | cf:a1,a2,..."},
      {"theta1", K::real, "0.1", "phase of the first point (sturmian, rotation, skew-product fiber)"},
      {"theta2", K::real, "0.11", "phase of the second point"},
      {"convention", K::text, "left", "sturmian coding arc: left = [0,alpha), right = (0,alpha]"},
      {"offset1", K::integer, "0", "shift of the first point (substitution systems), or its integer (odometer)"},
      {"offset2", K::integer, "1", "shift of the second point, or its integer"},
      {"hole1", K::integer, "-1", "integer hole path of the first toeplitz-ex5 point"},
      {"hole2", K::integer, "-1", "integer hole path of the second toeplitz-ex5 point"},
      {"fills", K::text, "01", "toeplitz fill symbols by level"},
      {"limit", K::text, "0", "value at an unfilled toeplitz hole: 0, 1 or none"},
      {"base1", K::text, "golden", "skew-product base point of the first orbit"},
      {"base2", K::text, "silver", "skew-product base point of the second orbit"},
      {"depth", K::integer, "32", "odometer depth and factor resolution depth"},
      {"coding_depth", K::integer, "1000", "coordinates the sturmian factor reads on each side"},
      {"window", K::range, "-8..8", "coordinates printed by gen"},
      {"family", K::text, "dyadic", "averaging windows: dyadic = [0,2^n), centered = [-2^(n-1),2^(n-1))"},
      {"tail", K::range, "10..14", "family indices n the limsup is taken over"},
      {"budget", K::integer, "-1", "Weyl translate budget; -1 = largest window length in the tail"},
      {"estimator", K::text, "weyl", "besicovitch | weyl | observable | dn"},
      {"observable", K::text, "hamming", "hamming | indicator | sign | character"},
      {"dn_level", K::integer, "10", "n of the finite estimator D^n"},
      {"deltas", K::range, "4..10", "scan radii 2^-a .. 2^-b"},
      {"pairs", K::integer, "20", "pairs per scan radius"},
      {"points", K::integer, "6", "sample points for ue-test"},
      {"tol", K::real, "0.02", "spread / matching tolerance"},
      {"N", K::integer, "65536", "orbit length for Weyl sums and product averages"},
      {"M", K::integer, "4096", "spectrum grid size"},
      {"threshold", K::real, "0", "spectrum peak threshold; 0 = 5 x median"},
      {"seed_level", K::integer, "0", "evaluate dyadic frequencies j/2^m, m <= level, directly"},
      {"sample_size", K::integer, "1000", "points sampled for fiber statistics"},
      {"element", K::text, "depth:1;0=0,1=2", "full-group element literal"},
      {"element2", K::text, "depth:0;*=1", "second element for composition"},
      {"theta", K::integer, "1", "odometer integer the full-group element is applied to"},
      {"csv", K::text, "", "optional CSV output path for tables and traces"},
      {"accept.toeplitz_tail_max", K::integer, "16", "upper tail index of the Toeplitz bound criterion"},
  };
  return c;
}

RunConfig::Entry& RunConfig::find(const std::string& key) {
  auto it = std::find_if(entries_.begin(), entries_.end(), [&](const Entry& e) { return e.key == key; });
  if (it == entries_.end()) throw InvalidParameter("unknown config key '" + key + "'");
  return *it;
}

const RunConfig::Entry& RunConfig::find(const std::string& key) const {
  return const_cast<RunConfig*>(this)->find(key);
}

bool RunConfig::has(const std::string& key) const {
  return std::any_of(entries_.begin(), entries_.end(), [&](const Entry& e) { return e.key == key; });
}

void RunConfig::set(const std::string& key, const std::string& value) {
  Entry& e = find(key);
  validate(e, value);
  e.value = value;
}

void RunConfig::set_assignment(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw InvalidParameter("expected key=value, got '" + assignment + "'");
  set(trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

void RunConfig::load_text(const std::string& text, const std::string& origin) {
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    try {
      set_assignment(line);
    } catch (const InvalidParameter& e) {
      throw InvalidParameter(origin + ":" + std::to_string(number) + ": " + e.what());
    }
  }
}

void RunConfig::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParameter("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  load_text(buf.str(), path);
}

const std::string& RunConfig::get(const std::string& key) const { return find(key).value; }
std::int64_t RunConfig::get_int(const std::string& key) const { return parse_int(get(key), key); }
std::uint64_t RunConfig::get_uint(const std::string& key) const { return parse_uint(get(key), key); }
double RunConfig::get_double(const std::string& key) const { return parse_double(get(key), key); }
std::pair<std::int64_t, std::int64_t> RunConfig::get_range(const std::string& key) const {
  return parse_range(get(key), key);
}

std::string RunConfig::to_text() const {
  std::size_t width = 0;
  for (const auto& e : entries_) width = std::max(width, e.key.size() + 3 + e.value.size());
  std::string out;
  for (const auto& e : entries_) {
    std::string line = e.key + " = " + e.value;
    line.resize(width + 2, ' ');
    out += line + "# " + e.help + "\n";
  }
  return out;
}

nlohmann::ordered_json RunConfig::to_json() const {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& e : entries_) j[e.key] = e.value;
  return j;
}

}  // namespace meq
