#include <algorithm>
#include <bit>

#include "meq/errors.hpp"
#include "meq/systems.hpp"

namespace meq {

namespace {

void check_residues(std::span<const std::int64_t> residues) {
  if (residues.empty()) throw InvalidParameter("hole path needs at least one residue");
  if (residues.size() > 62) throw InvalidParameter("at most 62 hole residues are supported");
  std::int64_t prev = 0;
  for (std::size_t i = 0; i < residues.size(); ++i) {
    const std::int64_t mod = std::int64_t{1} << (i + 1);
    const std::int64_t k = residues[i];
    if (k < 0 || k >= mod)
      throw InvalidParameter("hole residue k_" + std::to_string(i + 1) + " outside [0, 2^" +
                             std::to_string(i + 1) + ")");
    if (k % (mod / 2) != prev)
      throw InvalidParameter("hole residues are not nested at level " + std::to_string(i + 1));
    prev = k;
  }
}

int alphabet_for(std::span<const Symbol> fills, std::optional<Symbol> limit) {
  if (fills.empty()) throw InvalidParameter("Toeplitz fills must be nonempty");
  Symbol top = *std::max_element(fills.begin(), fills.end());
  if (limit) top = std::max(top, *limit);
  return std::max(2, int{top} + 1);
}

std::string fills_string(std::span<const Symbol> fills) {
  std::string s;
  for (Symbol f : fills) s += static_cast<char>('0' + f);
  return s;
}

}  // namespace

OdometerPoint hole_path_from_residues(std::span<const std::int64_t> residues, const OdometerPoint& tail) {
  check_residues(residues);
  const int d = static_cast<int>(residues.size());
  const auto k = static_cast<std::uint64_t>(residues.back());
  if (const auto n = tail.integer()) {
    const std::uint64_t mask = (std::uint64_t{1} << d) - 1;
    return OdometerPoint::from_integer(
        static_cast<std::int64_t>((static_cast<std::uint64_t>(*n) & ~mask) | k),
        std::max(tail.depth(), d));
  }
  return OdometerPoint::from_digits(
      [&](int i) { return i < d ? ((k >> i) & 1) != 0 : tail.digit(i); }, std::max(tail.depth(), d));
}

OdometerPoint hole_path_from_residues(std::span<const std::int64_t> residues) {
  check_residues(residues);
  const auto k = static_cast<std::uint64_t>(residues.back());
  return OdometerPoint::from_digits([&](int i) { return ((k >> i) & 1) != 0; },
                                    static_cast<int>(residues.size()));
}

SymbolicPoint toeplitz_point(const ToeplitzParams& params) {
  const int alphabet = alphabet_for(params.fills, params.limit_value);
  const OdometerPoint h = params.hole_path;
  const int depth = h.depth();
  const bool integral = h.integer().has_value();
  const std::uint64_t low = h.low_bits(std::min(64, depth));
  const int low_count = std::min(64, depth);
  const std::vector<Symbol> fills = params.fills;
  const std::optional<Symbol> limit = params.limit_value;

  auto oracle = [h, depth, integral, low, low_count, fills, limit](std::int64_t j) -> Symbol {
    const auto uj = static_cast<std::uint64_t>(j);
    std::uint64_t diff = uj ^ low;
    if (low_count < 64) diff &= (std::uint64_t{1} << low_count) - 1;
    std::int64_t level = -1;
    if (diff != 0) {
      level = std::countr_zero(diff);
    } else if (integral) {
      // Both are sign-extended integers agreeing on 64 bits: j is the hole.
      if (!limit) throw OracleExhausted(j, "Toeplitz position on the hole path is never filled");
      return *limit;
    } else {
      const bool sign = j < 0;
      for (int i = 64; i < depth; ++i)
        if (h.digit(i) != sign) {
          level = i;
          break;
        }
      if (level < 0) throw OracleExhausted(j, "Toeplitz level beyond the declared hole path depth");
    }
    return fills[static_cast<std::size_t>(level) % fills.size()];
  };

  auto meta = std::make_shared<ToeplitzMeta>();
  meta->params = params;
  std::string provenance = "toeplitz(hole=" + h.to_string() + ",fills=" + fills_string(params.fills) + ")";
  return SymbolicPoint(alphabet, std::move(oracle), -SymbolicPoint::kUnbounded, SymbolicPoint::kUnbounded,
                       std::move(provenance), std::move(meta));
}

SymbolicPoint toeplitz_point(std::span<const std::int64_t> residues, std::span<const Symbol> fills,
                             std::optional<Symbol> limit_value) {
  ToeplitzParams params;
  params.hole_path = hole_path_from_residues(residues);
  params.fills.assign(fills.begin(), fills.end());
  params.limit_value = limit_value;
  return toeplitz_point(params);
}

SymbolicPoint canonical_toeplitz_point(std::optional<Symbol> limit_value) {
  ToeplitzParams params;
  params.limit_value = limit_value;
  return toeplitz_point(params);
}

OdometerPoint random_hole_path(std::uint64_t seed, int depth) { return random_odometer_point(seed, depth); }

SystemHandle toeplitz_system(std::vector<Symbol> fills) {
  alphabet_for(fills, std::nullopt);
  SystemHandle sys;
  sys.label = "toeplitz";
  sys.act = [](const GroupElement& g, const Point& p) -> Point {
    if (g.dim != 1) throw InvalidParameter("this system is a Z-action; got a Z^2 element");
    return Point(p.as<SymbolicPoint>().shifted(g[0]));
  };
  sys.metric = [](const Point& p, const Point& q, std::int64_t horizon) {
    return cantor_metric(p.as<SymbolicPoint>(), q.as<SymbolicPoint>(), horizon);
  };
  sys.sampler = [fills = std::move(fills)](std::uint64_t seed) -> Point {
    ToeplitzParams params;
    params.hole_path = random_hole_path(seed);
    params.fills = fills;
    return toeplitz_point(params);
  };
  sys.metric_kind = MetricKind::cantor;
  sys.shift_action = true;
  return sys;
}

}  // namespace meq
