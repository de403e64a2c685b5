#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "meq/group.hpp"
#include "meq/points.hpp"
#include "meq/systems.hpp"

namespace meq {

using Complex = std::complex<double>;

/// Index range [n_min, n_max] of a Foelner family over which limsup and
/// liminf are approximated by max and min.
struct Tail {
  int n_min = 0;
  int n_max = 0;
};

/// Throws InvalidParameter unless 0 <= n_min <= n_max < family.size().
void check_tail(const FoelnerFamily& family, Tail tail);

/// Bounded observable. `bound` is declared, not inspected.
struct Observable {
  std::function<Complex(const Point&)> eval;
  double bound = 1.0;
  std::string label;
  /// Set when the value only depends on x_0 of a symbolic point; lets
  /// estimators read coordinates directly instead of building shifted points.
  std::function<Complex(Symbol)> symbol_fn;
  /// Pair integrand 1[x_0 != y_0] replaces |f(x) - f(y)| in D_f.
  bool disagreement = false;

  Complex operator()(const Point& p) const { return eval(p); }

  static Observable constant(Complex c);
  /// 1[x_0 = s].
  static Observable symbol_indicator(Symbol s);
  /// x_0 as a number.
  static Observable symbol_value();
  /// (-1)^{x_0}.
  static Observable sign();
  /// x_0 - mean.
  static Observable centered_symbol(double mean);
  /// Disagreement indicator; as an observable it evaluates to x_0.
  static Observable hamming();
  /// 1[(x_0, y_0) = (a, b)] on a product of symbolic points.
  static Observable product_symbol_indicator(Symbol a, Symbol b);
  /// 1[theta in [a, b)] on the circle (the arc may wrap).
  static Observable arc_indicator(CirclePoint a, CirclePoint b);
  /// exp(2 pi i sum_j c_j theta_j), theta_j the circle coordinates of a
  /// (possibly nested) product point read left to right.
  static Observable circle_character(std::vector<std::int64_t> coefficients);
  /// 1[digit i of the odometer point is 1].
  static Observable digit_indicator(int i);
  /// a f + b g.
  static Observable linear(const Observable& f, Complex a, const Observable& g, Complex b);
};

/// (1/|F|) sum_{t in F} f(t x). Partial sums are taken over fixed chunks
/// and combined in index order.
Complex birkhoff_average(const SystemHandle& sys, const Observable& f, const Point& x,
                         const Window& window);

struct TraceEntry {
  int n = 0;
  Window window;
  Complex value;
};

struct AverageTrace {
  std::string observable;
  Tail tail;
  std::vector<TraceEntry> values;
  /// Max and min of the real parts over the tail.
  double limsup_est = 0;
  double liminf_est = 0;
  /// Largest |A_n - A_m| over the tail.
  double spread = 0;

  /// Columns n, window_start, window_len, value_re, value_im.
  std::string to_csv() const;
};

AverageTrace average_trace(const SystemHandle& sys, const Observable& f, const Point& x,
                           const FoelnerFamily& family, Tail tail);

/// Counts of centered words x_{t-k} ... x_{t+k} for t = 0..N-1. Word keys
/// hold one character '0' + symbol per coordinate.
struct EmpiricalMeasure {
  int depth = 0;
  std::int64_t horizon = 0;
  std::map<std::string, std::int64_t> counts;

  double frequency(const std::string& word) const;
  /// Depth-j table obtained by dropping the outer k - j coordinates.
  EmpiricalMeasure marginal(int j) const;
};

/// x may be symbolic or a product of symbolic points (product symbols are
/// a * |B| + b).
EmpiricalMeasure empirical_cylinder_measure(const Point& x, int depth, std::int64_t horizon);

/// sum_{j=0}^{k} 2^-(j+1) * sum_w |m1_j(w) - m2_j(w)|. Throws DepthMismatch.
double weakstar_distance(const EmpiricalMeasure& m1, const EmpiricalMeasure& m2);

enum class Verdict { unique, not_unique, inconclusive };
const char* to_string(Verdict v);

struct ObservableSummary {
  std::string label;
  /// Mean over points of the average on the largest tail window.
  Complex limit_estimate;
  double spread = 0;
};

struct UniqueErgodicityResult {
  Verdict verdict = Verdict::inconclusive;
  double max_spread = 0;
  double tol = 0;
  Tail tail;
  std::vector<ObservableSummary> observables;
  /// traces[i * points + p] for observable i and point p.
  std::vector<AverageTrace> traces;
};

/// unique: every observable's tail averages over all points lie within tol
/// of each other. not_unique: two points whose own traces are within tol
/// have final averages more than 3 tol apart. Otherwise inconclusive.
UniqueErgodicityResult unique_ergodicity_test(const SystemHandle& sys,
                                              const std::vector<Observable>& observables,
                                              const std::vector<Point>& points,
                                              const FoelnerFamily& family, Tail tail, double tol);

/// `count` points drawn from the system sampler with derived seeds.
std::vector<Point> sample_points(const SystemHandle& sys, std::size_t count, std::uint64_t seed);

struct GenericPointResult {
  bool generic = false;
  double distance = 0;
  std::int64_t horizon = 0;
};

/// Compares the empirical measure of x along the window family[n_max]
/// with `reference` at the reference depth.
GenericPointResult generic_point_check(const SystemHandle& sys, const Point& x,
                                       const EmpiricalMeasure& reference,
                                       const FoelnerFamily& family, Tail tail, double tol);

}  // namespace meq
