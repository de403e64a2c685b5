#include "meq/ergodic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "detail.hpp"
#include "meq/errors.hpp"
#include "meq/parallel.hpp"

namespace meq {

void check_tail(const FoelnerFamily& family, Tail tail) {
  if (tail.n_min < 0 || tail.n_min > tail.n_max)
    throw InvalidParameter("tail [" + std::to_string(tail.n_min) + ", " + std::to_string(tail.n_max) +
                           "] is empty or negative");
  if (static_cast<std::size_t>(tail.n_max) >= family.size())
    throw InvalidParameter("tail end " + std::to_string(tail.n_max) + " exceeds the family size " +
                           std::to_string(family.size()));
}

// ------------------------------------------------------------ observables

Observable Observable::constant(Complex c) {
  Observable f;
  f.eval = [c](const Point&) { return c; };
  f.symbol_fn = [c](Symbol) { return c; };
  f.bound = std::abs(c);
  std::ostringstream label;
  label << "const(" << c.real();
  if (c.imag() != 0) label << "," << c.imag();
  label << ")";
  f.label = label.str();
  return f;
}

Observable Observable::symbol_indicator(Symbol s) {
  Observable f;
  f.symbol_fn = [s](Symbol a) { return Complex(a == s ? 1.0 : 0.0); };
  f.eval = [fn = f.symbol_fn](const Point& p) { return fn(p.as<SymbolicPoint>().at(0)); };
  f.label = "1[x0=" + std::to_string(s) + "]";
  return f;
}

Observable Observable::symbol_value() {
  Observable f;
  f.symbol_fn = [](Symbol a) { return Complex(a); };
  f.eval = [fn = f.symbol_fn](const Point& p) { return fn(p.as<SymbolicPoint>().at(0)); };
  f.bound = 255;
  f.label = "x0";
  return f;
}

Observable Observable::sign() {
  Observable f;
  f.symbol_fn = [](Symbol a) { return Complex(a % 2 == 0 ? 1.0 : -1.0); };
  f.eval = [fn = f.symbol_fn](const Point& p) { return fn(p.as<SymbolicPoint>().at(0)); };
  f.label = "(-1)^x0";
  return f;
}

Observable Observable::centered_symbol(double mean) {
  Observable f;
  f.symbol_fn = [mean](Symbol a) { return Complex(a - mean); };
  f.eval = [fn = f.symbol_fn](const Point& p) { return fn(p.as<SymbolicPoint>().at(0)); };
  f.bound = std::max(std::abs(mean), std::abs(1 - mean));
  std::ostringstream label;
  label << "x0-" << mean;
  f.label = label.str();
  return f;
}

Observable Observable::hamming() {
  Observable f = symbol_value();
  f.bound = 1;
  f.disagreement = true;
  f.label = "hamming";
  return f;
}

Observable Observable::product_symbol_indicator(Symbol a, Symbol b) {
  Observable f;
  f.eval = [a, b](const Point& p) {
    const auto& pp = p.as<ProductPoint>();
    const bool hit = pp.left().as<SymbolicPoint>().at(0) == a && pp.right().as<SymbolicPoint>().at(0) == b;
    return Complex(hit ? 1.0 : 0.0);
  };
  f.label = "1[x0=" + std::to_string(a) + ",y0=" + std::to_string(b) + "]";
  return f;
}

Observable Observable::arc_indicator(CirclePoint a, CirclePoint b) {
  Observable f;
  const std::uint64_t len = (b - a).bits();
  f.eval = [a, len](const Point& p) {
    return Complex((p.as<CirclePoint>() - a).bits() < len ? 1.0 : 0.0);
  };
  std::ostringstream label;
  label << "1[theta in [" << a.value() << "," << b.value() << "))";
  f.label = label.str();
  return f;
}

Observable Observable::circle_character(std::vector<std::int64_t> coefficients) {
  if (coefficients.empty()) throw InvalidParameter("circle character needs coefficients");
  Observable f;
  std::string label = "exp(2pi i(";
  for (std::size_t j = 0; j < coefficients.size(); ++j) {
    if (j > 0) label += ",";
    label += std::to_string(coefficients[j]);
  }
  f.label = label + ").theta)";
  f.eval = [c = std::move(coefficients)](const Point& p) {
    std::vector<CirclePoint> coords;
    detail::circle_coordinates(p, coords);
    if (coords.size() != c.size())
      throw InvalidParameter("circle character has " + std::to_string(c.size()) + " coefficients for " +
                             std::to_string(coords.size()) + " circle coordinates");
    std::uint64_t phase = 0;
    for (std::size_t j = 0; j < c.size(); ++j) phase += coords[j].times(c[j]).bits();
    return detail::unit_phase(phase);
  };
  return f;
}

Observable Observable::digit_indicator(int i) {
  Observable f;
  f.eval = [i](const Point& p) { return Complex(p.as<OdometerPoint>().digit(i) ? 1.0 : 0.0); };
  f.label = "1[digit" + std::to_string(i) + "=1]";
  return f;
}

Observable Observable::linear(const Observable& f, Complex a, const Observable& g, Complex b) {
  Observable h;
  h.eval = [fe = f.eval, ge = g.eval, a, b](const Point& p) { return a * fe(p) + b * ge(p); };
  if (f.symbol_fn && g.symbol_fn)
    h.symbol_fn = [fs = f.symbol_fn, gs = g.symbol_fn, a, b](Symbol s) { return a * fs(s) + b * gs(s); };
  h.bound = std::abs(a) * f.bound + std::abs(b) * g.bound;
  h.label = "lin(" + f.label + "," + g.label + ")";
  return h;
}

// ------------------------------------------------------------ averages

Complex birkhoff_average(const SystemHandle& sys, const Observable& f, const Point& x, const Window& window) {
  if (window.dim() != sys.group_dim) throw InvalidParameter("window dimension does not match the group");
  const auto n = static_cast<std::size_t>(window.size());
  Complex sum;
  if (sys.group_dim == 1 && sys.shift_action && f.symbol_fn && x.is<SymbolicPoint>()) {
    const SymbolicPoint& xs = x.as<SymbolicPoint>();
    const std::int64_t start = window.start[0];
    sum = detail::chunked_sum(n, [&](std::size_t i) {
      return f.symbol_fn(xs.at(start + static_cast<std::int64_t>(i)));
    });
  } else {
    sum = detail::chunked_sum(n, [&](std::size_t i) {
      return f.eval(sys.act(window.element(static_cast<std::int64_t>(i)), x));
    });
  }
  return sum / static_cast<double>(window.size());
}

namespace {

double diameter(const std::vector<Complex>& values) {
  double d = 0;
  for (std::size_t i = 0; i < values.size(); ++i)
    for (std::size_t j = i + 1; j < values.size(); ++j) d = std::max(d, std::abs(values[i] - values[j]));
  return d;
}

}  // namespace

std::string AverageTrace::to_csv() const {
  std::ostringstream out;
  out.precision(17);
  out << "n,window_start,window_len,value_re,value_im\n";
  for (const auto& e : values)
    out << e.n << "," << to_string(e.window.start) << "," << e.window.length << "," << e.value.real() << ","
        << e.value.imag() << "\n";
  return out.str();
}

AverageTrace average_trace(const SystemHandle& sys, const Observable& f, const Point& x,
                           const FoelnerFamily& family, Tail tail) {
  check_tail(family, tail);
  AverageTrace trace;
  trace.observable = f.label;
  trace.tail = tail;
  std::vector<Complex> values;
  for (int n = tail.n_min; n <= tail.n_max; ++n) {
    const Window& w = family[static_cast<std::size_t>(n)];
    const Complex v = birkhoff_average(sys, f, x, w);
    trace.values.push_back({n, w, v});
    values.push_back(v);
  }
  trace.limsup_est = trace.liminf_est = values.front().real();
  for (const auto& v : values) {
    trace.limsup_est = std::max(trace.limsup_est, v.real());
    trace.liminf_est = std::min(trace.liminf_est, v.real());
  }
  trace.spread = diameter(values);
  return trace;
}

// ------------------------------------------------------- empirical measures

double EmpiricalMeasure::frequency(const std::string& word) const {
  const auto it = counts.find(word);
  return it == counts.end() || horizon == 0 ? 0.0
                                            : static_cast<double>(it->second) / static_cast<double>(horizon);
}

EmpiricalMeasure EmpiricalMeasure::marginal(int j) const {
  if (j < 0 || j > depth) throw DepthMismatch("marginal depth outside [0, " + std::to_string(depth) + "]");
  EmpiricalMeasure m;
  m.depth = j;
  m.horizon = horizon;
  const auto cut = static_cast<std::size_t>(depth - j);
  for (const auto& [word, c] : counts) m.counts[word.substr(cut, word.size() - 2 * cut)] += c;
  return m;
}

EmpiricalMeasure empirical_cylinder_measure(const Point& x, int depth, std::int64_t horizon) {
  if (depth < 0) throw InvalidParameter("cylinder depth must be >= 0");
  if (horizon < 1) throw InvalidParameter("empirical measure horizon must be >= 1");
  const detail::SymbolView view = detail::symbol_view(x);
  const std::vector<Symbol> sym = detail::fetch_symbols(view, -depth, horizon + 2 * depth);
  EmpiricalMeasure m;
  m.depth = depth;
  m.horizon = horizon;
  const auto width = static_cast<std::size_t>(2 * depth + 1);
  std::string word(width, '0');
  for (std::int64_t t = 0; t < horizon; ++t) {
    for (std::size_t i = 0; i < width; ++i) word[i] = static_cast<char>('0' + sym[static_cast<std::size_t>(t) + i]);
    ++m.counts[word];
  }
  return m;
}

double weakstar_distance(const EmpiricalMeasure& m1, const EmpiricalMeasure& m2) {
  if (m1.depth != m2.depth)
    throw DepthMismatch("empirical measures of depth " + std::to_string(m1.depth) + " and " +
                        std::to_string(m2.depth));
  double total = 0;
  for (int j = 0; j <= m1.depth; ++j) {
    const EmpiricalMeasure a = m1.marginal(j);
    const EmpiricalMeasure b = m2.marginal(j);
    double tv = 0;
    for (const auto& [w, c] : a.counts) tv += std::abs(a.frequency(w) - b.frequency(w));
    for (const auto& [w, c] : b.counts)
      if (!a.counts.contains(w)) tv += b.frequency(w);
    total += std::ldexp(tv, -(j + 1));
  }
  return total;
}

// ------------------------------------------------------------- verdicts

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::unique: return "unique";
    case Verdict::not_unique: return "not-unique";
    default: return "inconclusive";
  }
}

std::vector<Point> sample_points(const SystemHandle& sys, std::size_t count, std::uint64_t seed) {
  std::vector<Point> points;
  points.reserve(count);
  for (std::size_t i = 0; i < count; ++i) points.push_back(sys.sample(Rng::derive(seed, i)));
  return points;
}

UniqueErgodicityResult unique_ergodicity_test(const SystemHandle& sys, const std::vector<Observable>& observables,
                                              const std::vector<Point>& points, const FoelnerFamily& family,
                                              Tail tail, double tol) {
  if (points.size() < 2) throw InvalidParameter("unique ergodicity test needs at least 2 points");
  if (observables.empty()) throw InvalidParameter("unique ergodicity test needs an observable");
  if (!(tol > 0)) throw InvalidParameter("tolerance must be positive");
  check_tail(family, tail);

  UniqueErgodicityResult result;
  result.tol = tol;
  result.tail = tail;
  bool separated = false;
  for (const auto& f : observables) {
    std::vector<Complex> all, finals;
    std::vector<double> own_spread;
    for (const auto& p : points) {
      AverageTrace tr = average_trace(sys, f, p, family, tail);
      for (const auto& e : tr.values) all.push_back(e.value);
      finals.push_back(tr.values.back().value);
      own_spread.push_back(tr.spread);
      result.traces.push_back(std::move(tr));
    }
    ObservableSummary summary;
    summary.label = f.label;
    for (const auto& v : finals) summary.limit_estimate += v;
    summary.limit_estimate /= static_cast<double>(finals.size());
    summary.spread = diameter(all);
    result.max_spread = std::max(result.max_spread, summary.spread);
    for (std::size_t i = 0; i < finals.size(); ++i)
      for (std::size_t j = i + 1; j < finals.size(); ++j)
        if (own_spread[i] <= tol && own_spread[j] <= tol && std::abs(finals[i] - finals[j]) > 3 * tol)
          separated = true;
    result.observables.push_back(std::move(summary));
  }
  result.verdict = result.max_spread <= tol ? Verdict::unique
                   : separated              ? Verdict::not_unique
                                            : Verdict::inconclusive;
  return result;
}

GenericPointResult generic_point_check(const SystemHandle& sys, const Point& x, const EmpiricalMeasure& reference,
                                       const FoelnerFamily& family, Tail tail, double tol) {
  check_tail(family, tail);
  if (!sys.shift_action || sys.group_dim != 1)
    throw InvalidParameter("generic point check needs a shift action of Z");
  const Window& w = family[static_cast<std::size_t>(tail.n_max)];
  const Point start = sys.act(w.start, x);
  GenericPointResult r;
  r.horizon = w.length;
  r.distance = weakstar_distance(empirical_cylinder_measure(start, reference.depth, w.length), reference);
  r.generic = r.distance <= tol;
  return r;
}

}  // namespace meq
