#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace meq {

/// Flat key = value configuration. Every key has a default; setting an
/// unknown key or an unparsable value throws InvalidParameter.
class RunConfig {
 public:
  enum class Kind { text, integer, unsigned_integer, real, range };
  struct Entry {
    std::string key;
    Kind kind = Kind::text;
    std::string value;
    std::string help;
  };

  /// All keys at their defaults, in a fixed order.
  static RunConfig defaults();

  void set(const std::string& key, const std::string& value);
  /// "key=value".
  void set_assignment(const std::string& assignment);
  /// Lines "key = value"; '#' starts a comment.
  void load_text(const std::string& text, const std::string& origin = "<config>");
  void load_file(const std::string& path);

  bool has(const std::string& key) const;
  const std::string& get(const std::string& key) const;
  std::int64_t get_int(const std::string& key) const;
  std::uint64_t get_uint(const std::string& key) const;
  double get_double(const std::string& key) const;
  /// "a..b" as a closed integer range.
  std::pair<std::int64_t, std::int64_t> get_range(const std::string& key) const;

  std::uint64_t seed() const { return get_uint("seed"); }

  const std::vector<Entry>& entries() const { return entries_; }
  /// The `defaults` listing: one "key = value  # help" line per key.
  std::string to_text() const;
  nlohmann::ordered_json to_json() const;

 private:
  Entry& find(const std::string& key);
  const Entry& find(const std::string& key) const;
  std::vector<Entry> entries_;
};

std::int64_t parse_int(const std::string& text, const std::string& what);
std::uint64_t parse_uint(const std::string& text, const std::string& what);
double parse_double(const std::string& text, const std::string& what);
/// "a..b" (a <= b).
std::pair<std::int64_t, std::int64_t> parse_range(const std::string& text, const std::string& what);

}  // namespace meq
