#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "meq/ergodic.hpp"
#include "meq/points.hpp"
#include "meq/systems.hpp"

namespace meq {

/// S_N = (1/N) sum_{n < N} f(n x) exp(-2 pi i alpha n).
struct WeylSumResult {
  double alpha = 0;
  Complex value;
  double modulus = 0;
  double phase = 0;
  std::int64_t N = 0;
  std::string observable;
  std::string start;
};

/// Phases n alpha are exact 64-bit fixed point; the exponential is advanced
/// by multiplication and re-anchored at every chunk start.
WeylSumResult weyl_sum(const SystemHandle& sys, const Observable& f, const Point& x, CirclePoint alpha,
                       std::int64_t N);

/// Orbit values f(n x), n in [0, N).
std::vector<Complex> orbit_values(const SystemHandle& sys, const Observable& f, const Point& x, std::int64_t N);

/// Weyl sum of precomputed orbit values.
Complex weyl_sum_of(const std::vector<Complex>& values, CirclePoint alpha);

struct SpectrumPeak {
  /// Refined location and modulus.
  double alpha = 0;
  double modulus = 0;
  /// Grid point j/M the peak was found at (nearest grid point for seeds).
  double grid_alpha = 0;
  double grid_modulus = 0;
  bool seeded = false;
};

struct SpectrumScan {
  std::int64_t M = 0;
  std::int64_t N = 0;
  double threshold = 0;
  double median = 0;
  std::vector<double> moduli;  // |S_N(j/M)|, j in [0, M)
  std::vector<double> phases;  // arg S_N(j/M)
  std::vector<SpectrumPeak> peaks;

  /// Columns alpha, modulus, phase over the grid.
  std::string to_csv() const;
};

struct ScanOptions {
  std::int64_t M = std::int64_t{1} << 12;
  std::int64_t N = std::int64_t{1} << 16;
  /// <= 0 selects 5 x the median grid modulus.
  double threshold = 0;
  /// Extra candidate frequencies evaluated directly (e.g. dyadic rationals
  /// for odometer extensions).
  std::vector<CirclePoint> seeds;
  /// Number of grid peaks refined by direct sums.
  int refine = 8;
};

/// Grid moduli via one folded FFT of length M, local maxima above the
/// threshold refined by direct sums on [j/M - 1/M, j/M + 1/M].
SpectrumScan eigenvalue_scan(const SystemHandle& sys, const Observable& f, const Point& x, const ScanOptions& options);

/// Dyadic rationals j / 2^m, m <= max_level.
std::vector<CirclePoint> dyadic_seeds(int max_level);

struct ContinuityRow {
  double distance = 0;
  double difference = 0;
};

/// For each pair, (d(x, y), |phi(x) - phi(y)|) with phi the Weyl sum at
/// alpha over N steps. Rows sorted by decreasing distance.
std::vector<ContinuityRow> eigenfunction_continuity_check(const SystemHandle& sys, const Observable& f,
                                                          CirclePoint alpha,
                                                          const std::vector<std::pair<Point, Point>>& pairs,
                                                          std::int64_t N);

}  // namespace meq
