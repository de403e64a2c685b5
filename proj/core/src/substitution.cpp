#include "meq/substitution.hpp"

#include <algorithm>
#include <memory>

#include "meq/errors.hpp"

namespace meq {

SubstitutionRule SubstitutionRule::cantor() { return {{{0, 1, 0}, {1, 1, 1}}, "cantor"}; }

SubstitutionRule SubstitutionRule::thue_morse() { return {{{0, 1}, {1, 0}}, "thue-morse"}; }

SubstitutionRule SubstitutionRule::period_doubling() {
  return {{{1, 1}, {1, 0}}, "period-doubling"};
}

void SubstitutionRule::validate() const {
  if (images.size() < 2) throw InvalidParameter("substitution needs an alphabet of size >= 2");
  for (const auto& img : images) {
    if (img.empty()) throw InvalidParameter("substitution image is empty");
    for (Symbol s : img)
      if (s >= images.size()) throw InvalidParameter("substitution image leaves the alphabet");
  }
}

bool SubstitutionRule::is_primitive() const {
  validate();
  const std::size_t a = images.size();
  std::vector<std::vector<bool>> base(a, std::vector<bool>(a, false));
  for (std::size_t i = 0; i < a; ++i)
    for (Symbol s : images[i]) base[i][s] = true;
  // Wielandt: a primitive a x a matrix has M^k > 0 for k = (a-1)^2 + 1.
  auto power = base;
  const std::size_t bound = (a - 1) * (a - 1) + 1;
  for (std::size_t k = 1;; ++k) {
    bool positive = true;
    for (const auto& row : power)
      positive = positive && std::all_of(row.begin(), row.end(), [](bool b) { return b; });
    if (positive) return true;
    if (k >= bound) return false;
    std::vector<std::vector<bool>> next(a, std::vector<bool>(a, false));
    for (std::size_t i = 0; i < a; ++i)
      for (std::size_t m = 0; m < a; ++m)
        if (power[i][m])
          for (std::size_t j = 0; j < a; ++j) next[i][j] = next[i][j] || base[m][j];
    power = std::move(next);
  }
}

SubstitutionRule SubstitutionRule::power(int p) const {
  if (p < 1) throw InvalidParameter("substitution power must be >= 1");
  SubstitutionRule out{{}, name + "^" + std::to_string(p)};
  for (std::size_t a = 0; a < images.size(); ++a)
    out.images.push_back(iterate({static_cast<Symbol>(a)}, p));
  return out;
}

std::vector<Symbol> SubstitutionRule::iterate(std::vector<Symbol> word, int times) const {
  validate();
  for (int t = 0; t < times; ++t) {
    std::vector<Symbol> next;
    for (Symbol s : word) next.insert(next.end(), images[s].begin(), images[s].end());
    word = std::move(next);
  }
  return word;
}

namespace {

constexpr std::int64_t kLengthCap = std::int64_t{1} << 62;

// Level tables for recursive descent: lengths[n][a] = |R^n(a)|, saturated.
struct DescentTables {
  SubstitutionRule rule;
  std::vector<std::vector<std::int64_t>> lengths;

  Symbol right(std::int64_t k, Symbol seed) const {
    std::size_t level = 0;
    while (lengths[level][seed] <= k) ++level;
    Symbol cur = seed;
    for (; level > 0; --level) {
      for (Symbol c : rule.images[cur]) {
        const std::int64_t len = lengths[level - 1][c];
        if (k < len) {
          cur = c;
          break;
        }
        k -= len;
      }
    }
    return cur;
  }

  // j counts from the right end: j = 0 is coordinate -1.
  Symbol left(std::int64_t j, Symbol seed) const {
    std::size_t level = 0;
    while (lengths[level][seed] <= j) ++level;
    Symbol cur = seed;
    for (; level > 0; --level) {
      const auto& img = rule.images[cur];
      for (auto it = img.rbegin(); it != img.rend(); ++it) {
        const std::int64_t len = lengths[level - 1][*it];
        if (j < len) {
          cur = *it;
          break;
        }
        j -= len;
      }
    }
    return cur;
  }
};

std::shared_ptr<const DescentTables> build_tables(SubstitutionRule rule, Symbol seed,
                                                  std::optional<Symbol> left) {
  auto tables = std::make_shared<DescentTables>();
  const std::size_t a = rule.images.size();
  tables->lengths.push_back(std::vector<std::int64_t>(a, 1));
  auto reached = [&] {
    const auto& last = tables->lengths.back();
    return last[seed] > SymbolicPoint::kUnbounded && (!left || last[*left] > SymbolicPoint::kUnbounded);
  };
  while (!reached()) {
    const auto& prev = tables->lengths.back();
    std::vector<std::int64_t> next(a, 0);
    for (std::size_t s = 0; s < a; ++s) {
      std::int64_t total = 0;
      for (Symbol c : rule.images[s]) total = std::min(kLengthCap, total + prev[c]);
      next[s] = total;
    }
    tables->lengths.push_back(std::move(next));
    if (tables->lengths.size() > 200) throw InvalidParameter("substitution does not grow from seed");
  }
  tables->rule = std::move(rule);
  return tables;
}

}  // namespace

SymbolicPoint substitution_fixed_point(const SubstitutionRule& rule, Symbol seed,
                                       std::optional<Symbol> left_seed) {
  rule.validate();
  const int a = rule.alphabet_size();
  if (seed >= a || (left_seed && *left_seed >= a)) throw InvalidParameter("seed outside alphabet");

  std::optional<SubstitutionRule> chosen;
  for (int p = 1; p <= 2 * a && !chosen; ++p) {
    SubstitutionRule r = rule.power(p);
    const auto& right_img = r.images[seed];
    bool ok = right_img.front() == seed && right_img.size() > 1;
    if (left_seed) {
      const auto& left_img = r.images[*left_seed];
      ok = ok && left_img.back() == *left_seed && left_img.size() > 1;
    }
    if (ok) chosen = std::move(r);
  }
  if (!chosen)
    throw InvalidParameter("seed " + std::to_string(seed) + " is not extendable under " + rule.name);

  auto tables = build_tables(std::move(*chosen), seed, left_seed);
  std::string provenance = rule.name + "-fixed(" +
                           (left_seed ? std::to_string(*left_seed) + "." : std::string(".")) +
                           std::to_string(seed) + ")";
  const std::int64_t lo = left_seed ? -SymbolicPoint::kUnbounded : 0;
  const Symbol right_seed = seed;
  const Symbol left = left_seed.value_or(0);
  return SymbolicPoint(
      a,
      [tables, right_seed, left](std::int64_t k) {
        return k >= 0 ? tables->right(k, right_seed) : tables->left(-k - 1, left);
      },
      lo, SymbolicPoint::kUnbounded, std::move(provenance));
}

}  // namespace meq
