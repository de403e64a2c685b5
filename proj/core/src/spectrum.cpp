#include "meq/spectrum.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <sstream>

#include "detail.hpp"
#include "meq/errors.hpp"
#include "meq/metrics.hpp"
#include "meq/parallel.hpp"

namespace meq {

std::vector<Complex> orbit_values(const SystemHandle& sys, const Observable& f, const Point& x, std::int64_t N) {
  if (N < 1) throw InvalidParameter("Weyl sums need N >= 1");
  if (sys.group_dim != 1) throw InvalidParameter("Weyl sums are defined for Z-actions");
  std::vector<Complex> values(static_cast<std::size_t>(N));
  if (sys.shift_action && f.symbol_fn && x.is<SymbolicPoint>()) {
    const auto sym = detail::fetch_symbols(x.as<SymbolicPoint>(), 0, N);
    for (std::size_t n = 0; n < values.size(); ++n) values[n] = f.symbol_fn(sym[n]);
  } else {
    parallel_chunks(values.size(), [&](std::size_t b, std::size_t e) {
      for (std::size_t n = b; n < e; ++n) values[n] = f.eval(sys.act_n(static_cast<std::int64_t>(n), x));
    });
  }
  return values;
}

Complex weyl_sum_of(const std::vector<Complex>& values, CirclePoint alpha) {
  const Complex step = detail::unit_phase(0 - alpha.bits());
  const std::size_t chunks = (values.size() + kChunk - 1) / kChunk;
  std::vector<Complex> partial(chunks);
  parallel_chunks(values.size(), [&](std::size_t b, std::size_t e) {
    Complex w = detail::unit_phase(0 - alpha.times(static_cast<std::int64_t>(b)).bits());
    Complex s = 0;
    for (std::size_t n = b; n < e; ++n) {
      s += values[n] * w;
      w *= step;
    }
    partial[b / kChunk] = s;
  });
  Complex total = 0;
  for (const auto& s : partial) total += s;
  return total / static_cast<double>(values.size());
}

WeylSumResult weyl_sum(const SystemHandle& sys, const Observable& f, const Point& x, CirclePoint alpha,
                       std::int64_t N) {
  WeylSumResult r;
  r.alpha = alpha.value();
  r.value = weyl_sum_of(orbit_values(sys, f, x, N), alpha);
  r.modulus = std::abs(r.value);
  r.phase = std::arg(r.value);
  r.N = N;
  r.observable = f.label;
  r.start = x.describe();
  return r;
}

std::string SpectrumScan::to_csv() const {
  std::ostringstream out;
  out.precision(17);
  out << "alpha,modulus,phase\n";
  for (std::size_t j = 0; j < moduli.size(); ++j)
    out << static_cast<double>(j) / static_cast<double>(M) << "," << moduli[j] << "," << phases[j] << "\n";
  return out.str();
}

std::vector<CirclePoint> dyadic_seeds(int max_level) {
  if (max_level < 0 || max_level > 20) throw InvalidParameter("dyadic seed level must lie in [0, 20]");
  std::vector<CirclePoint> seeds;
  const std::int64_t q = std::int64_t{1} << max_level;
  for (std::int64_t j = 0; j < q; ++j) seeds.push_back(CirclePoint::from_rational(j, q));
  return seeds;
}

namespace {

std::mutex g_fftw_plan_mutex;

// Unnormalized forward DFT of `in` (length M).
std::vector<Complex> forward_dft(const std::vector<Complex>& in) {
  const int M = static_cast<int>(in.size());
  auto* buf = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * in.size()));
  if (!buf) throw std::bad_alloc();
  fftw_plan plan;
  {
    std::lock_guard lock(g_fftw_plan_mutex);
    plan = fftw_plan_dft_1d(M, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
  }
  for (std::size_t j = 0; j < in.size(); ++j) {
    buf[j][0] = in[j].real();
    buf[j][1] = in[j].imag();
  }
  fftw_execute(plan);
  std::vector<Complex> out(in.size());
  for (std::size_t j = 0; j < in.size(); ++j) out[j] = {buf[j][0], buf[j][1]};
  {
    std::lock_guard lock(g_fftw_plan_mutex);
    fftw_destroy_plan(plan);
  }
  fftw_free(buf);
  return out;
}

// Direct-sum search for the largest modulus on [center - width, center + width].
std::pair<CirclePoint, double> refine_peak(const std::vector<Complex>& values, CirclePoint center,
                                           std::uint64_t width) {
  CirclePoint best = center;
  double best_mod = std::abs(weyl_sum_of(values, center));
  constexpr int kPoints = 9;
  for (int level = 0; level < 6 && width > 0; ++level) {
    const std::uint64_t step = width / (kPoints / 2);
    if (step == 0) break;
    const CirclePoint c = best;
    for (int i = -kPoints / 2; i <= kPoints / 2; ++i) {
      if (i == 0) continue;
      const CirclePoint a = c + CirclePoint::from_bits(step).times(i);
      const double m = std::abs(weyl_sum_of(values, a));
      if (m > best_mod) {
        best_mod = m;
        best = a;
      }
    }
    width = step;
  }
  return {best, best_mod};
}

}  // namespace

SpectrumScan eigenvalue_scan(const SystemHandle& sys, const Observable& f, const Point& x, const ScanOptions& opt) {
  if (opt.M < 2 || opt.M > (std::int64_t{1} << 24)) throw InvalidParameter("grid size M must lie in [2, 2^24]");
  const std::vector<Complex> values = orbit_values(sys, f, x, opt.N);

  std::vector<Complex> folded(static_cast<std::size_t>(opt.M));
  for (std::size_t n = 0; n < values.size(); ++n) folded[n % folded.size()] += values[n];
  std::vector<Complex> grid = forward_dft(folded);

  SpectrumScan scan;
  scan.M = opt.M;
  scan.N = opt.N;
  scan.moduli.resize(grid.size());
  scan.phases.resize(grid.size());
  const double inv_n = 1.0 / static_cast<double>(opt.N);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    grid[j] *= inv_n;
    scan.moduli[j] = std::abs(grid[j]);
    scan.phases[j] = std::arg(grid[j]);
  }
  std::vector<double> sorted = scan.moduli;
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(sorted.size() / 2), sorted.end());
  scan.median = sorted[sorted.size() / 2];
  scan.threshold = opt.threshold > 0 ? opt.threshold : 5.0 * scan.median;

  const std::size_t M = grid.size();
  std::vector<std::size_t> maxima;
  for (std::size_t j = 0; j < M; ++j) {
    const double m = scan.moduli[j];
    if (m < scan.threshold) continue;
    if (m > scan.moduli[(j + M - 1) % M] && m >= scan.moduli[(j + 1) % M]) maxima.push_back(j);
  }
  std::stable_sort(maxima.begin(), maxima.end(),
                   [&](std::size_t a, std::size_t b) { return scan.moduli[a] > scan.moduli[b]; });
  if (maxima.size() > 64) maxima.resize(64);

  const std::uint64_t cell = static_cast<std::uint64_t>((static_cast<unsigned __int128>(1) << 64) /
                                                        static_cast<unsigned __int128>(opt.M));
  for (std::size_t k = 0; k < maxima.size(); ++k) {
    const std::size_t j = maxima[k];
    SpectrumPeak p;
    p.grid_alpha = static_cast<double>(j) / static_cast<double>(M);
    p.grid_modulus = scan.moduli[j];
    if (static_cast<int>(k) < opt.refine) {
      const auto [a, m] = refine_peak(values, CirclePoint::from_rational(static_cast<std::int64_t>(j), opt.M), cell);
      p.alpha = a.value();
      p.modulus = m;
    } else {
      p.alpha = p.grid_alpha;
      p.modulus = p.grid_modulus;
    }
    scan.peaks.push_back(p);
  }
  for (const CirclePoint s : opt.seeds) {
    const double m = std::abs(weyl_sum_of(values, s));
    if (m < scan.threshold) continue;
    SpectrumPeak p;
    p.alpha = s.value();
    p.modulus = m;
    const auto j = static_cast<std::size_t>(std::llround(s.value() * static_cast<double>(M))) % M;
    p.grid_alpha = static_cast<double>(j) / static_cast<double>(M);
    p.grid_modulus = scan.moduli[j];
    p.seeded = true;
    scan.peaks.push_back(p);
  }
  return scan;
}

std::vector<ContinuityRow> eigenfunction_continuity_check(const SystemHandle& sys, const Observable& f,
                                                          CirclePoint alpha,
                                                          const std::vector<std::pair<Point, Point>>& pairs,
                                                          std::int64_t N) {
  std::vector<ContinuityRow> rows;
  for (const auto& [x, y] : pairs) {
    ContinuityRow row;
    row.distance = sys.metric(x, y, 64).value();
    row.difference = std::abs(weyl_sum(sys, f, x, alpha, N).value - weyl_sum(sys, f, y, alpha, N).value);
    rows.push_back(row);
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const ContinuityRow& a, const ContinuityRow& b) { return a.distance > b.distance; });
  return rows;
}

}  // namespace meq
