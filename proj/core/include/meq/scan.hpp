#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "meq/ergodic.hpp"
#include "meq/pseudometric.hpp"
#include "meq/systems.hpp"

namespace meq {

/// Returns a pair with d(x, y) < delta, or throws SamplerExhausted.
using PairSampler = std::function<std::pair<Point, Point>(double delta, std::uint64_t seed)>;

/// Codings of phases theta and theta +- t, t = delta * u with u in [1/2, 1);
/// pairs whose Cantor distance is not below delta are redrawn up to
/// max_tries times.
PairSampler sturmian_pair_sampler(const RotationNumber& alpha, int max_tries = 256);

/// Brute-force search in one orbit segment of the two-sided Thue-Morse
/// point: for delta = 2^-k, positions i != j whose central words of radius
/// k agree give the pair (sigma^i x, sigma^j x).
PairSampler thue_morse_pair_sampler(std::int64_t segment = std::int64_t{1} << 15);

/// b = a + 2^r * odd with 2^-r < delta (distance exactly 2^-r).
PairSampler odometer_pair_sampler(int depth = OdometerPoint::kDefaultDepth);

/// Phases at circle distance delta * u, u in [1/2, 1).
PairSampler rotation_pair_sampler();

/// Toeplitz points whose hole paths share a prefix long enough that both
/// points agree on the central radius the scale requires.
PairSampler toeplitz_pair_sampler(std::vector<Symbol> fills = {0, 1}, int max_tries = 256);

struct ModulusRow {
  double delta = 0;
  std::int64_t pairs = 0;
  double max_D = 0;
  double mean_D = 0;
  double flagged_fraction = 0;
};

struct ModulusTable {
  std::string estimator;
  std::vector<ModulusRow> rows;

  /// Columns delta, pairs, max_D, mean_D, flagged_fraction.
  std::string to_csv() const;
};

struct ScanParams {
  FoelnerFamily family;
  Tail tail;
  std::int64_t translate_budget = -1;
  int pairs_per_delta = 20;
  /// Integrand: the system metric (Weyl estimate) when empty, otherwise D_f.
  std::optional<Observable> observable;
  std::uint64_t seed = 0;
};

/// For each delta (strictly decreasing), samples pairs_per_delta pairs with
/// d(x, y) < delta and records the max and mean Weyl-type estimate. Emits
/// data only; no verdict.
ModulusTable mean_equi_scan(const SystemHandle& sys, const PairSampler& sampler, const std::vector<double>& deltas,
                            const ScanParams& params);

// ---------------------------------------------------- product pointwise UE

struct PairVerdict {
  std::string label;
  UniqueErgodicityResult ue;
};

struct ContinuityEntry {
  std::size_t i = 0;
  std::size_t j = 0;
  /// max of the component distances of the two input pairs.
  double input_distance = 0;
  /// weak-* distance of empirical cylinder measures for symbolic pairs,
  /// otherwise the largest difference of observable limit estimates.
  double measure_distance = 0;
};

struct ProductCheckResult {
  std::vector<PairVerdict> pairs;
  std::vector<ContinuityEntry> continuity;
};

/// Runs unique_ergodicity_test on the orbit of each pair under the diagonal
/// action, starting from `orbit_starts` points (x, y), g(x, y), ... spaced
/// by the largest tail window, then compares the pairs' measure estimates.
ProductCheckResult product_pointwise_ue_check(const SystemHandle& sys,
                                              const std::vector<std::pair<Point, Point>>& pairs,
                                              const std::vector<Observable>& observables,
                                              const FoelnerFamily& family, Tail tail, double tol,
                                              int orbit_starts = 2, int measure_depth = 2);

}  // namespace meq
