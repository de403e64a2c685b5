#include "meq/factors.hpp"

#include <algorithm>
#include <cmath>

#include "detail.hpp"
#include "meq/errors.hpp"
#include "meq/metrics.hpp"
#include "meq/parallel.hpp"

namespace meq {

// ------------------------------------------------------------- Sturmian

namespace {

using U128 = unsigned __int128;
constexpr U128 kTurn = U128{1} << 64;

struct Interval {
  U128 lo, hi;  // closed, relative to the base phase
};

// Closed arc [start, start + length] on the circle, relative to `base`, as
// at most two linear pieces of [0, 2^64).
std::vector<Interval> unroll(std::uint64_t start, U128 length, std::uint64_t base) {
  const U128 s = static_cast<std::uint64_t>(start - base);
  if (length >= kTurn - 1) return {{0, kTurn - 1}};
  if (s + length < kTurn) return {{s, s + length}};
  return {{s, kTurn - 1}, {0, s + length - kTurn}};
}

std::vector<Interval> intersect(const std::vector<Interval>& a, const std::vector<Interval>& b) {
  std::vector<Interval> out;
  for (const auto& x : a)
    for (const auto& y : b) {
      const U128 lo = std::max(x.lo, y.lo), hi = std::min(x.hi, y.hi);
      if (lo <= hi) out.push_back({lo, hi});
    }
  return out;
}

}  // namespace

SturmianPhase sturmian_to_rotation_factor(const SymbolicPoint& x, const RotationNumber& alpha, int depth) {
  if (depth < 0) throw InvalidParameter("factor depth must be >= 0");
  const std::uint64_t a = alpha.phase.bits();
  if (a == 0) throw InvalidParameter("alpha must be nonzero");
  // Arc for coordinate n, widened by the |n| + 2 ulps that n * alpha may be off.
  auto arc = [&](std::int64_t n) -> std::pair<std::uint64_t, U128> {
    const std::uint64_t shift = 0 - a * static_cast<std::uint64_t>(n);
    const auto w = static_cast<std::uint64_t>(std::llabs(n) + 2);
    if (x.at(n) == 1) return {shift - w, U128{a} + 2 * w};
    return {shift + a - w, (kTurn - a) + 2 * w};
  };
  const auto [s0, l0] = arc(0);
  const std::uint64_t base = s0;
  std::vector<Interval> set = unroll(s0, l0, base);
  for (std::int64_t n = 1; n <= depth && !set.empty(); ++n) {
    for (std::int64_t m : {n, -n}) {
      const auto [s, l] = arc(m);
      set = intersect(set, unroll(s, l, base));
      if (set.empty()) break;
    }
  }
  if (set.empty())
    throw NotASturmianPoint("coding constraints of " + x.describe() + " have empty intersection for alpha " +
                            alpha.label);
  U128 lo = set.front().lo, hi = set.front().hi;
  for (const auto& iv : set) {
    lo = std::min(lo, iv.lo);
    hi = std::max(hi, iv.hi);
  }
  SturmianPhase phase;
  phase.center = CirclePoint::from_bits(base + static_cast<std::uint64_t>((lo + hi) / 2));
  phase.radius = std::ldexp(static_cast<double>(hi - lo) / 2.0 + 1.0, -64);
  return phase;
}

// ------------------------------------------------------------- Toeplitz

std::vector<std::int64_t> periodic_residues(const SymbolicPoint& x, int n) {
  if (n < 0 || n > 26) throw InvalidParameter("periodicity scan level must lie in [0, 26]");
  const std::int64_t P = std::int64_t{1} << n;
  // An unfilled position (the hole of a canonical point) makes its class non-periodic.
  std::vector<int> sym(static_cast<std::size_t>(4 * P));
  for (std::int64_t i = 0; i < 4 * P; ++i) {
    try {
      sym[static_cast<std::size_t>(i)] = x.at(i - 2 * P);
    } catch (const OracleExhausted&) {
      sym[static_cast<std::size_t>(i)] = -1;
    }
  }
  std::vector<std::int64_t> out;
  for (std::int64_t r = 0; r < P; ++r) {
    const int first = sym[static_cast<std::size_t>(r)];
    bool constant = first >= 0;
    for (std::int64_t m = 1; m < 4 && constant; ++m) constant = sym[static_cast<std::size_t>(r + m * P)] == first;
    // Index i of the buffer is position i - 2P, which is == i (mod P).
    if (constant) out.push_back(r);
  }
  return out;
}

std::vector<std::int64_t> toeplitz_hole_residues(const SymbolicPoint& x, int depth) {
  if (depth < 1 || depth > 62) throw InvalidParameter("hole residue depth must lie in [1, 62]");
  std::vector<std::int64_t> residues;
  if (const auto* meta = dynamic_cast<const ToeplitzMeta*>(x.meta())) {
    const OdometerPoint hole = meta->params.hole_path.plus(-x.offset());
    if (!hole.integer() && hole.depth() < depth)
      throw ResolutionTooCoarse("hole path declared to depth " + std::to_string(hole.depth()) + " < " +
                                std::to_string(depth));
    const std::uint64_t bits = hole.low_bits(depth);
    for (int n = 1; n <= depth; ++n)
      residues.push_back(static_cast<std::int64_t>(bits & ((std::uint64_t{1} << n) - 1)));
    return residues;
  }
  for (int n = 1; n <= depth; ++n) {
    const std::int64_t P = std::int64_t{1} << n;
    const auto per = periodic_residues(x, n);
    if (static_cast<std::int64_t>(per.size()) != P - 1)
      throw NotInFamily("level " + std::to_string(n) + " of " + x.describe() + " has " +
                        std::to_string(P - static_cast<std::int64_t>(per.size())) + " non-periodic residues");
    std::int64_t k = P - 1;
    for (std::int64_t r = 0; r < static_cast<std::int64_t>(per.size()); ++r)
      if (per[static_cast<std::size_t>(r)] != r) {
        k = r;
        break;
      }
    if (!residues.empty() && k % (P / 2) != residues.back())
      throw NotInFamily("hole residues of " + x.describe() + " are not nested at level " + std::to_string(n));
    residues.push_back(k);
  }
  return residues;
}

OdometerPoint toeplitz_to_odometer_factor(const SymbolicPoint& x, int depth) {
  if (depth < 1) throw InvalidParameter("factor depth must be >= 1");
  if (const auto* meta = dynamic_cast<const ToeplitzMeta*>(x.meta())) {
    const OdometerPoint hole = meta->params.hole_path.plus(-x.offset());
    if (!hole.integer() && hole.depth() < depth)
      throw ResolutionTooCoarse("hole path declared to depth " + std::to_string(hole.depth()) + " < " +
                                std::to_string(depth));
    return hole.negated().truncated(depth);
  }
  const auto residues = toeplitz_hole_residues(x, depth);
  return hole_path_from_residues(residues).negated();
}

// ------------------------------------------------------------ Thue-Morse

SymbolicPoint thue_morse_block_code(const SymbolicPoint& x) {
  const auto [lo, hi] = x.window();
  return SymbolicPoint(
      2, [x](std::int64_t k) -> Symbol { return x.at(k) ^ x.at(k + 1); }, lo, hi - 1,
      "block(" + x.describe() + ")");
}

// ----------------------------------------------------------- factor maps

FactorMap sturmian_factor(const RotationNumber& alpha, int depth) {
  FactorMap f;
  f.label = "sturmian->rotation";
  f.source = sturmian_system(alpha);
  f.target = rotation_system(alpha);
  f.resolution = 3.0 / std::max(depth, 1);
  f.apply = [alpha, depth](const Point& p) -> Point {
    return Point(sturmian_to_rotation_factor(p.as<SymbolicPoint>(), alpha, depth).center);
  };
  f.fiber_candidates = [alpha, depth](const Point& p) -> std::vector<Point> {
    const CirclePoint c = sturmian_to_rotation_factor(p.as<SymbolicPoint>(), alpha, depth).center;
    return {p, Point(sturmian_point(alpha, c, ArcConvention::left_closed, false)),
            Point(sturmian_point(alpha, c, ArcConvention::right_closed, false))};
  };
  return f;
}

FactorMap toeplitz_factor(int depth, std::vector<Symbol> fills) {
  FactorMap f;
  f.label = "toeplitz->odometer";
  f.source = toeplitz_system(std::move(fills));
  f.target = odometer_system(depth);
  f.resolution = std::ldexp(1.0, -(depth + 1));
  f.apply = [depth](const Point& p) -> Point { return Point(toeplitz_to_odometer_factor(p.as<SymbolicPoint>(), depth)); };
  f.fiber_candidates = [](const Point& p) -> std::vector<Point> { return {p}; };
  return f;
}

FactorMap thue_morse_factor(std::int64_t horizon) {
  FactorMap f;
  f.label = "thue-morse->period-doubling";
  f.source = thue_morse_system();
  f.target = period_doubling_system();
  f.resolution = std::ldexp(1.0, -static_cast<int>(horizon + 1));
  f.apply = [](const Point& p) -> Point { return Point(thue_morse_block_code(p.as<SymbolicPoint>())); };
  f.fiber_candidates = [](const Point& p) -> std::vector<Point> {
    return {p, Point(p.as<SymbolicPoint>().complemented())};
  };
  return f;
}

FactorMap odometer_identity_factor(int depth) {
  FactorMap f;
  f.label = "odometer->odometer";
  f.source = odometer_system(depth);
  f.target = f.source;
  f.resolution = std::ldexp(1.0, -(depth + 1));
  f.apply = [](const Point& p) { return p; };
  f.fiber_candidates = [](const Point& p) -> std::vector<Point> { return {p}; };
  return f;
}

// --------------------------------------------------------------- fibers

FiberReport fiber_statistics(const FactorMap& factor, const std::function<Point(std::uint64_t)>& source_sampler,
                             double tolerance, std::size_t sample_size, std::uint64_t seed) {
  if (sample_size == 0) throw InvalidParameter("fiber statistics need a positive sample size");
  if (!(factor.resolution < tolerance))
    throw ResolutionTooCoarse("factor resolution " + std::to_string(factor.resolution) +
                              " is not below the matching tolerance " + std::to_string(tolerance));
  constexpr std::int64_t kHorizon = 64;
  std::vector<std::size_t> sizes(sample_size);
  std::vector<std::string> targets(sample_size);
  parallel_for(sample_size, [&](std::size_t i) {
    const Point x = source_sampler(Rng::derive(seed, i));
    const Point tx = factor.apply(x);
    const std::vector<Point> candidates = factor.fiber_candidates ? factor.fiber_candidates(x) : std::vector<Point>{x};
    std::vector<Point> fiber;
    for (const auto& c : candidates) {
      if (factor.target.metric(factor.apply(c), tx, kHorizon).value() > tolerance) continue;
      const bool seen = std::any_of(fiber.begin(), fiber.end(), [&](const Point& m) {
        const MetricValue d = factor.source.metric(c, m, kHorizon);
        return d.flagged || d.units == 0;
      });
      if (!seen) fiber.push_back(c);
    }
    sizes[i] = fiber.size();
    targets[i] = tx.is<SymbolicPoint>() ? tx.as<SymbolicPoint>().describe() : tx.describe();
  });
  FiberReport report;
  report.factor = factor.label;
  report.sample_size = sample_size;
  report.tolerance = tolerance;
  std::size_t singletons = 0;
  for (std::size_t i = 0; i < sample_size; ++i) {
    ++report.histogram[sizes[i]];
    if (sizes[i] == 1) ++singletons;
    if (i < 16) report.examples.emplace_back(targets[i], sizes[i]);
  }
  report.regularity = static_cast<double>(singletons) / static_cast<double>(sample_size);
  return report;
}

double equivariance_defect(const FactorMap& factor, std::size_t count, std::int64_t max_g, std::uint64_t seed) {
  std::vector<double> defects(count, 0.0);
  parallel_for(count, [&](std::size_t i) {
    Rng rng(Rng::derive(seed, i));
    const Point x = factor.source.sample(rng.next());
    const std::int64_t g = rng.between(-max_g, max_g);
    const Point lhs = factor.apply(factor.source.act_n(g, x));
    const Point rhs = factor.target.act_n(g, factor.apply(x));
    defects[i] = factor.target.metric(lhs, rhs, 64).value();
  });
  return defects.empty() ? 0.0 : *std::max_element(defects.begin(), defects.end());
}

}  // namespace meq
