#include "meq/scan.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <string_view>
#include <unordered_map>

#include "detail.hpp"
#include "meq/errors.hpp"
#include "meq/metrics.hpp"
#include "meq/parallel.hpp"

namespace meq {

namespace {

// Smallest r with 2^-r <= delta: agreement on [-r, r] forces d < delta.
int radius_for(double delta) {
  if (!(delta > 0) || delta > 1) throw InvalidParameter("delta must lie in (0, 1]");
  int r = 0;
  while (std::ldexp(1.0, -r) > delta) ++r;
  return r;
}

// Circle offset delta * u, u in [1/2, 1), as 64-bit phase; random sign.
CirclePoint circle_offset(double delta, Rng& rng) {
  const double t = delta * (0.5 + 0.5 * rng.uniform());
  CirclePoint off = CirclePoint::from_double(std::min(t, 0.5));
  return rng.below(2) == 0 ? off : -off;
}

}  // namespace

PairSampler sturmian_pair_sampler(const RotationNumber& alpha, int max_tries) {
  return [alpha, max_tries](double delta, std::uint64_t seed) -> std::pair<Point, Point> {
    const int r = radius_for(delta);
    Rng rng(seed);
    for (int attempt = 0; attempt < max_tries; ++attempt) {
      const CirclePoint theta = CirclePoint::from_bits(rng.next());
      const CirclePoint other = theta + circle_offset(delta, rng);
      try {
        SymbolicPoint x = sturmian_point(alpha, theta);
        SymbolicPoint y = sturmian_point(alpha, other);
        if (cantor_metric(x, y, r + 1).value() < delta) return {Point(x), Point(y)};
      } catch (const BoundaryAmbiguity&) {
        // Phase too close to an arc endpoint; draw again.
      }
    }
    throw SamplerExhausted("no Sturmian pair below delta " + std::to_string(delta) + " after " +
                           std::to_string(max_tries) + " tries");
  };
}

PairSampler thue_morse_pair_sampler(std::int64_t segment) {
  if (segment < 16) throw InvalidParameter("Thue-Morse search segment too short");
  struct Cache {
    SymbolicPoint x = thue_morse_two_sided_point();
    std::int64_t base = 0;
    std::string chars;
    std::mutex mutex;
    std::map<int, std::vector<std::vector<std::int64_t>>> groups;
  };
  auto cache = std::make_shared<Cache>();
  cache->base = -segment / 2;
  const auto sym = detail::fetch_symbols(cache->x, cache->base, segment);
  cache->chars.reserve(sym.size());
  for (Symbol s : sym) cache->chars.push_back(static_cast<char>('0' + s));

  return [cache](double delta, std::uint64_t seed) -> std::pair<Point, Point> {
    const int r = radius_for(delta);
    const std::vector<std::vector<std::int64_t>>* groups = nullptr;
    {
      std::lock_guard lock(cache->mutex);
      auto it = cache->groups.find(r);
      if (it == cache->groups.end()) {
        const auto width = static_cast<std::size_t>(2 * r + 1);
        const std::string_view all(cache->chars);
        std::unordered_map<std::string_view, std::vector<std::int64_t>> by_word;
        for (std::size_t c = static_cast<std::size_t>(r); c + static_cast<std::size_t>(r) < all.size(); ++c)
          by_word[all.substr(c - static_cast<std::size_t>(r), width)].push_back(static_cast<std::int64_t>(c));
        std::vector<std::vector<std::int64_t>> repeated;
        for (auto& [word, members] : by_word)
          if (members.size() >= 2) repeated.push_back(std::move(members));
        std::sort(repeated.begin(), repeated.end());
        it = cache->groups.emplace(r, std::move(repeated)).first;
      }
      groups = &it->second;
    }
    if (groups->empty())
      throw SamplerExhausted("no repeated Thue-Morse word of radius " + std::to_string(r) + " in the segment");
    Rng rng(seed);
    const auto& members = (*groups)[rng.below(groups->size())];
    const std::size_t a = rng.below(members.size());
    std::size_t b = rng.below(members.size() - 1);
    if (b >= a) ++b;
    return {Point(cache->x.shifted(cache->base + members[a])), Point(cache->x.shifted(cache->base + members[b]))};
  };
}

PairSampler odometer_pair_sampler(int depth) {
  return [depth](double delta, std::uint64_t seed) -> std::pair<Point, Point> {
    int r = radius_for(delta);
    if (std::ldexp(1.0, -r) >= delta) ++r;
    if (r > 61 || r >= depth)
      throw SamplerExhausted("odometer scale 2^-" + std::to_string(r) + " is beyond the point depth");
    Rng rng(seed);
    const OdometerPoint a = random_odometer_point(Rng::derive(seed, 1), depth);
    const int spare = std::min(20, 62 - r);
    const std::int64_t odd = 2 * static_cast<std::int64_t>(rng.below(std::uint64_t{1} << (spare - 1))) + 1;
    return {Point(a), Point(a.plus(odd << r))};
  };
}

PairSampler rotation_pair_sampler() {
  return [](double delta, std::uint64_t seed) -> std::pair<Point, Point> {
    if (!(delta > 0)) throw InvalidParameter("delta must be positive");
    Rng rng(seed);
    const CirclePoint a = CirclePoint::from_bits(rng.next());
    return {Point(a), Point(a + circle_offset(delta, rng))};
  };
}

PairSampler toeplitz_pair_sampler(std::vector<Symbol> fills, int max_tries) {
  return [fills = std::move(fills), max_tries](double delta, std::uint64_t seed) -> std::pair<Point, Point> {
    const int r = radius_for(delta);
    const int shared = std::bit_width(static_cast<std::uint64_t>(2 * r + 1)) + 8;
    const int depth = std::max(128, shared + 64);
    Rng rng(seed);
    for (int attempt = 0; attempt < max_tries; ++attempt) {
      const OdometerPoint h = random_hole_path(rng.next(), depth);
      const OdometerPoint tail = random_hole_path(rng.next(), depth);
      const OdometerPoint h2 =
          OdometerPoint::from_digits([&](int i) { return i < shared ? h.digit(i) : tail.digit(i); }, depth);
      ToeplitzParams p1, p2;
      p1.hole_path = h;
      p2.hole_path = h2;
      p1.fills = p2.fills = fills;
      SymbolicPoint x = toeplitz_point(p1), y = toeplitz_point(p2);
      if (cantor_metric(x, y, r + 1).value() < delta) return {Point(x), Point(y)};
    }
    throw SamplerExhausted("no Toeplitz pair below delta " + std::to_string(delta));
  };
}

std::string ModulusTable::to_csv() const {
  std::ostringstream out;
  out.precision(17);
  out << "delta,pairs,max_D,mean_D,flagged_fraction\n";
  for (const auto& row : rows)
    out << row.delta << "," << row.pairs << "," << row.max_D << "," << row.mean_D << "," << row.flagged_fraction
        << "\n";
  return out.str();
}

ModulusTable mean_equi_scan(const SystemHandle& sys, const PairSampler& sampler, const std::vector<double>& deltas,
                            const ScanParams& params) {
  if (deltas.empty()) throw InvalidParameter("scan needs at least one delta");
  for (std::size_t i = 1; i < deltas.size(); ++i)
    if (!(deltas[i] < deltas[i - 1])) throw InvalidParameter("scan deltas must be strictly decreasing");
  if (params.pairs_per_delta < 1) throw InvalidParameter("pairs_per_delta must be >= 1");
  check_tail(params.family, params.tail);

  ModulusTable table;
  table.estimator = params.observable ? "observable:" + params.observable->label : std::string("weyl");
  for (std::size_t d = 0; d < deltas.size(); ++d) {
    const double delta = deltas[d];
    const int r = radius_for(delta);
    ModulusRow row;
    row.delta = delta;
    double sum = 0, flagged = 0;
    for (int k = 0; k < params.pairs_per_delta; ++k) {
      const std::uint64_t seed = Rng::derive(Rng::derive(params.seed, d), static_cast<std::uint64_t>(k));
      const auto [x, y] = sampler(delta, seed);
      if (!(sys.metric(x, y, r + 1).value() < delta))
        throw SamplerExhausted("sampled pair is not within delta " + std::to_string(delta));
      const PseudometricEstimate est =
          params.observable ? observable_pseudometric(sys, *params.observable, x, y, params.family, params.tail,
                                                      params.translate_budget)
                            : weyl_pseudometric(sys, x, y, params.family, params.tail, params.translate_budget);
      row.max_D = k == 0 ? est.value : std::max(row.max_D, est.value);
      sum += est.value;
      flagged += est.flagged_fraction;
      ++row.pairs;
    }
    row.mean_D = sum / static_cast<double>(row.pairs);
    row.flagged_fraction = flagged / static_cast<double>(row.pairs);
    table.rows.push_back(row);
  }
  return table;
}

ProductCheckResult product_pointwise_ue_check(const SystemHandle& sys,
                                              const std::vector<std::pair<Point, Point>>& pairs,
                                              const std::vector<Observable>& observables,
                                              const FoelnerFamily& family, Tail tail, double tol, int orbit_starts,
                                              int measure_depth) {
  if (pairs.empty()) throw InvalidParameter("product check needs at least one pair");
  if (orbit_starts < 2) throw InvalidParameter("product check needs at least 2 orbit start points");
  check_tail(family, tail);
  const SystemHandle product = product_system(sys, sys);
  const Window& last = family[static_cast<std::size_t>(tail.n_max)];

  ProductCheckResult result;
  std::vector<Point> firsts;
  for (const auto& [p, q] : pairs) {
    const Point start = make_product(p, q);
    std::vector<Point> starts;
    for (int k = 0; k < orbit_starts; ++k) {
      const std::int64_t s = k * last.length;
      const GroupElement g = sys.group_dim == 1 ? GroupElement::z(s) : GroupElement::z2(s, 0);
      starts.push_back(product.act(g, start));
    }
    firsts.push_back(start);
    result.pairs.push_back({p.describe() + " | " + q.describe(),
                            unique_ergodicity_test(product, observables, starts, family, tail, tol)});
  }

  const std::int64_t H = 64;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (std::size_t j = i + 1; j < pairs.size(); ++j) {
      ContinuityEntry e;
      e.i = i;
      e.j = j;
      e.input_distance = std::max(sys.metric(pairs[i].first, pairs[j].first, H).value(),
                                  sys.metric(pairs[i].second, pairs[j].second, H).value());
      if (detail::is_symbolic_tree(firsts[i]) && sys.group_dim == 1) {
        e.measure_distance =
            weakstar_distance(empirical_cylinder_measure(product.act(last.start, firsts[i]), measure_depth, last.length),
                              empirical_cylinder_measure(product.act(last.start, firsts[j]), measure_depth, last.length));
      } else {
        const auto& a = result.pairs[i].ue.observables;
        const auto& b = result.pairs[j].ue.observables;
        for (std::size_t k = 0; k < a.size(); ++k)
          e.measure_distance = std::max(e.measure_distance, std::abs(a[k].limit_estimate - b[k].limit_estimate));
      }
      result.continuity.push_back(e);
    }
  }
  return result;
}

}  // namespace meq
