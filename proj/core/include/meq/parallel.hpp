#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>

namespace meq {

/// Number of worker threads used by estimators. Results never depend on it:
/// work is split into chunks whose boundaries are fixed by the problem size,
/// each chunk writes its own output slot, and reductions run in index order.
void set_worker_count(int workers);
int worker_count();

inline constexpr std::size_t kChunk = 4096;

/// Calls body(begin, end) for consecutive chunks of [0, n) of size kChunk.
void parallel_chunks(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

/// Calls body(i) for i in [0, n), spread over workers.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

/// Seeded 64-bit generator with portable range reduction (the standard
/// distributions are implementation-defined, which would break report
/// determinism across toolchains).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(mix(seed)) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, bound); bound > 0.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t v;
    do {
      v = engine_();
    } while (v >= limit);
    return v % bound;
  }

  /// Uniform integer on [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
    return span == 0 ? static_cast<std::int64_t>(engine_())
                     : lo + static_cast<std::int64_t>(below(span));
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Derives an independent stream for sub-task `index`.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t index) {
    return mix(seed ^ mix(index + 0x9e3779b97f4a7c15ULL));
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::mt19937_64 engine_;
};

}  // namespace meq
