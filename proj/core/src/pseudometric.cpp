#include "meq/pseudometric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "detail.hpp"
#include "meq/errors.hpp"
#include "meq/metrics.hpp"
#include "meq/parallel.hpp"

namespace meq {

const char* to_string(EstimatorKind kind) {
  switch (kind) {
    case EstimatorKind::besicovitch: return "besicovitch";
    case EstimatorKind::weyl: return "weyl";
    case EstimatorKind::observable: return "observable";
    default: return "dn";
  }
}

namespace {

constexpr std::int64_t kFar = std::numeric_limits<std::int64_t>::max() / 4;

// Integrand values on t in [t_lo, t_lo + T) with prefix sums for O(1)
// window sums.
struct Series {
  std::vector<Units> prefix;
  std::vector<std::int64_t> flag_prefix;
  Units flag_value = 0;

  void build(const std::vector<Units>& vals, const std::vector<std::uint8_t>& flags) {
    prefix.assign(vals.size() + 1, 0);
    flag_prefix.assign(vals.size() + 1, 0);
    for (std::size_t i = 0; i < vals.size(); ++i) {
      prefix[i + 1] = prefix[i] + vals[i];
      flag_prefix[i + 1] = flag_prefix[i] + flags[i];
    }
  }
};

bool shift_symbolic(const SystemHandle& sys, const Point& x, const Point& y) {
  return sys.shift_action && sys.group_dim == 1 && x.is<SymbolicPoint>() && y.is<SymbolicPoint>();
}

// Distance from each t in [t_lo, t_lo + T) to the nearest coordinate where
// x and y differ, looking at most `reach` away; kFar if none.
std::vector<std::int64_t> nearest_disagreement(const SymbolicPoint& x, const SymbolicPoint& y, std::int64_t t_lo,
                                               std::int64_t T, std::int64_t reach) {
  const std::int64_t lo = t_lo - reach;
  const std::int64_t count = T + 2 * reach;
  const auto xs = detail::fetch_symbols(x, lo, count);
  const auto ys = detail::fetch_symbols(y, lo, count);
  const auto R = static_cast<std::size_t>(count);
  std::vector<std::int64_t> last(R), next(R);
  std::int64_t seen = -kFar;
  for (std::size_t k = 0; k < R; ++k) {
    if (xs[k] != ys[k]) seen = static_cast<std::int64_t>(k);
    last[k] = seen;
  }
  seen = kFar;
  for (std::size_t k = R; k-- > 0;) {
    if (xs[k] != ys[k]) seen = static_cast<std::int64_t>(k);
    next[k] = seen;
  }
  std::vector<std::int64_t> m(static_cast<std::size_t>(T));
  for (std::int64_t t = 0; t < T; ++t) {
    const auto k = static_cast<std::size_t>(t + reach);
    const std::int64_t kk = t + reach;
    m[static_cast<std::size_t>(t)] = std::min(kk - last[k], next[k] - kk);
  }
  return m;
}

std::map<std::int64_t, Series> metric_series(const SystemHandle& sys, const Point& x, const Point& y,
                                             std::int64_t t_lo, std::int64_t T,
                                             const std::vector<std::int64_t>& horizons) {
  std::map<std::int64_t, Series> out;
  const auto n = static_cast<std::size_t>(T);
  if (shift_symbolic(sys, x, y)) {
    const std::int64_t reach = *std::max_element(horizons.begin(), horizons.end());
    const auto m = nearest_disagreement(x.as<SymbolicPoint>(), y.as<SymbolicPoint>(), t_lo, T, reach);
    for (std::int64_t H : horizons) {
      if (out.contains(H)) continue;
      std::vector<Units> vals(n);
      std::vector<std::uint8_t> flags(n);
      for (std::size_t i = 0; i < n; ++i) {
        const bool hit = m[i] <= H;
        vals[i] = hit ? units_pow2(m[i]) : units_pow2(H + 1);
        flags[i] = hit ? 0 : 1;
      }
      out[H].build(vals, flags);
      out[H].flag_value = units_pow2(H + 1);
    }
    return out;
  }
  for (std::int64_t H : horizons) {
    if (out.contains(H)) continue;
    std::vector<Units> vals(n);
    std::vector<std::uint8_t> flags(n);
    parallel_chunks(n, [&](std::size_t b, std::size_t e) {
      for (std::size_t i = b; i < e; ++i) {
        const std::int64_t t = t_lo + static_cast<std::int64_t>(i);
        const MetricValue v = sys.metric(sys.act_n(t, x), sys.act_n(t, y), H);
        vals[i] = v.units;
        flags[i] = v.flagged ? 1 : 0;
      }
    });
    out[H].build(vals, flags);
    out[H].flag_value = units_pow2(H + 1);
  }
  return out;
}

Units observable_term(const Observable& f, const Point& a, const Point& b) {
  if (f.disagreement) {
    const auto va = detail::symbol_view(a);
    const auto vb = detail::symbol_view(b);
    return va.at(0) != vb.at(0) ? kUnitOne : 0;
  }
  return units_from_double(std::abs(f.eval(a) - f.eval(b)));
}

Series observable_series(const SystemHandle& sys, const Observable& f, const Point& x, const Point& y,
                         std::int64_t t_lo, std::int64_t T) {
  const auto n = static_cast<std::size_t>(T);
  std::vector<Units> vals(n);
  std::vector<std::uint8_t> flags(n, 0);
  if (shift_symbolic(sys, x, y) && (f.disagreement || f.symbol_fn)) {
    const auto xs = detail::fetch_symbols(x.as<SymbolicPoint>(), t_lo, T);
    const auto ys = detail::fetch_symbols(y.as<SymbolicPoint>(), t_lo, T);
    if (f.disagreement) {
      for (std::size_t i = 0; i < n; ++i) vals[i] = xs[i] != ys[i] ? kUnitOne : 0;
    } else {
      for (std::size_t i = 0; i < n; ++i)
        vals[i] = xs[i] == ys[i] ? 0 : units_from_double(std::abs(f.symbol_fn(xs[i]) - f.symbol_fn(ys[i])));
    }
  } else {
    parallel_chunks(n, [&](std::size_t b, std::size_t e) {
      for (std::size_t i = b; i < e; ++i) {
        const std::int64_t t = t_lo + static_cast<std::int64_t>(i);
        vals[i] = observable_term(f, sys.act_n(t, x), sys.act_n(t, y));
      }
    });
  }
  Series s;
  s.build(vals, flags);
  return s;
}

std::string provenance_of(const SystemHandle& sys, const Point& x, const Point& y) {
  return sys.label + ": " + x.describe() + " vs " + y.describe();
}

PseudometricEstimate estimate_z(const SystemHandle& sys, const Observable* f, const Point& x, const Point& y,
                                const FoelnerFamily& family, Tail tail, std::int64_t S, EstimatorKind kind) {
  std::int64_t t_lo = std::numeric_limits<std::int64_t>::max();
  std::int64_t t_hi = std::numeric_limits<std::int64_t>::min();
  std::vector<std::int64_t> horizons;
  for (int n = tail.n_min; n <= tail.n_max; ++n) {
    const Window& w = family[static_cast<std::size_t>(n)];
    t_lo = std::min(t_lo, w.start[0]);
    t_hi = std::max(t_hi, w.start[0] + w.length);
    horizons.push_back(sys.horizon_tracks_window ? std::min(w.length, sys.horizon_cap) : sys.horizon_cap);
  }
  t_hi += S;
  const std::int64_t T = t_hi - t_lo;

  std::map<std::int64_t, Series> by_horizon;
  if (f) by_horizon[0] = observable_series(sys, *f, x, y, t_lo, T);
  else by_horizon = metric_series(sys, x, y, t_lo, T, horizons);

  PseudometricEstimate est;
  est.kind = kind;
  est.tail = tail;
  est.translate_budget = S;
  est.provenance = provenance_of(sys, x, y);
  est.value = -1;
  std::int64_t flagged = 0, terms = 0;
  for (int n = tail.n_min; n <= tail.n_max; ++n) {
    const Window& w = family[static_cast<std::size_t>(n)];
    const Series& series = by_horizon.at(f ? 0 : horizons[static_cast<std::size_t>(n - tail.n_min)]);
    if (series.flag_prefix.back() > 0) est.flag_slack = std::max(est.flag_slack, units_to_double(series.flag_value));
    const double len = static_cast<double>(w.length);
    for (std::int64_t s = 0; s <= S; ++s) {
      const auto b = static_cast<std::size_t>(w.start[0] + s - t_lo);
      const auto e = b + static_cast<std::size_t>(w.length);
      const double v = units_to_double(series.prefix[e] - series.prefix[b]) / len;
      if (v > est.value) {
        est.value = v;
        est.argmax_n = n;
        est.argmax_shift = GroupElement::z(s);
      }
      flagged += series.flag_prefix[e] - series.flag_prefix[b];
      terms += w.length;
    }
  }
  est.agreement_flagged = flagged > 0;
  est.flagged_fraction = terms > 0 ? static_cast<double>(flagged) / static_cast<double>(terms) : 0.0;
  if (!est.agreement_flagged) est.flag_slack = 0;
  return est;
}

PseudometricEstimate estimate_z2(const SystemHandle& sys, const Observable* f, const Point& x, const Point& y,
                                 const FoelnerFamily& family, Tail tail, std::int64_t S, EstimatorKind kind) {
  std::vector<GroupElement> shifts;
  if (S == 0) {
    shifts.push_back(GroupElement::z2(0, 0));
  } else {
    for (int i = 0; i <= 4; ++i)
      for (int j = 0; j <= 4; ++j) shifts.push_back(GroupElement::z2(S * i / 4, S * j / 4));
  }
  PseudometricEstimate est;
  est.kind = kind;
  est.tail = tail;
  est.translate_budget = S;
  est.provenance = provenance_of(sys, x, y);
  est.value = -1;
  std::int64_t flagged = 0, terms = 0;
  for (int n = tail.n_min; n <= tail.n_max; ++n) {
    const Window& base = family[static_cast<std::size_t>(n)];
    const std::int64_t H = sys.horizon_tracks_window ? std::min(base.length, sys.horizon_cap) : sys.horizon_cap;
    for (const auto& s : shifts) {
      const Window w = base.translated(s);
      const auto size = static_cast<std::size_t>(w.size());
      const std::size_t chunks = (size + kChunk - 1) / kChunk;
      std::vector<Units> partial(chunks, 0);
      std::vector<std::int64_t> partial_flags(chunks, 0);
      parallel_chunks(size, [&](std::size_t b, std::size_t e) {
        Units sum = 0;
        std::int64_t fl = 0;
        for (std::size_t i = b; i < e; ++i) {
          const GroupElement g = w.element(static_cast<std::int64_t>(i));
          const Point gx = sys.act(g, x), gy = sys.act(g, y);
          if (f) {
            sum += observable_term(*f, gx, gy);
          } else {
            const MetricValue v = sys.metric(gx, gy, H);
            sum += v.units;
            fl += v.flagged ? 1 : 0;
          }
        }
        partial[b / kChunk] = sum;
        partial_flags[b / kChunk] = fl;
      });
      Units total = 0;
      std::int64_t total_flags = 0;
      for (std::size_t c = 0; c < chunks; ++c) {
        total += partial[c];
        total_flags += partial_flags[c];
      }
      const double v = units_to_double(total) / static_cast<double>(w.size());
      if (v > est.value) {
        est.value = v;
        est.argmax_n = n;
        est.argmax_shift = s;
      }
      if (total_flags > 0) est.flag_slack = std::max(est.flag_slack, units_to_double(units_pow2(H + 1)));
      flagged += total_flags;
      terms += w.size();
    }
  }
  est.agreement_flagged = flagged > 0;
  est.flagged_fraction = terms > 0 ? static_cast<double>(flagged) / static_cast<double>(terms) : 0.0;
  return est;
}

PseudometricEstimate run(const SystemHandle& sys, const Observable* f, const Point& x, const Point& y,
                         const FoelnerFamily& family, Tail tail, std::int64_t S, EstimatorKind kind) {
  check_tail(family, tail);
  if (family.dim() != sys.group_dim) throw InvalidParameter("family dimension does not match the group");
  if (S < 0) {
    S = 0;
    for (int n = tail.n_min; n <= tail.n_max; ++n) S = std::max(S, family[static_cast<std::size_t>(n)].length);
  }
  return sys.group_dim == 1 ? estimate_z(sys, f, x, y, family, tail, S, kind)
                            : estimate_z2(sys, f, x, y, family, tail, S, kind);
}

}  // namespace

PseudometricEstimate besicovitch_pseudometric(const SystemHandle& sys, const Point& x, const Point& y,
                                              const FoelnerFamily& family, Tail tail) {
  return run(sys, nullptr, x, y, family, tail, 0, EstimatorKind::besicovitch);
}

PseudometricEstimate weyl_pseudometric(const SystemHandle& sys, const Point& x, const Point& y,
                                       const FoelnerFamily& family, Tail tail, std::int64_t translate_budget) {
  return run(sys, nullptr, x, y, family, tail, translate_budget, EstimatorKind::weyl);
}

PseudometricEstimate observable_pseudometric(const SystemHandle& sys, const Observable& f, const Point& x,
                                             const Point& y, const FoelnerFamily& family, Tail tail,
                                             std::int64_t translate_budget) {
  return run(sys, &f, x, y, family, tail, translate_budget, EstimatorKind::observable);
}

PseudometricEstimate dn_pseudometric(const SymbolicPoint& x, const SymbolicPoint& y, int n) {
  if (n < 0 || n > 40) throw InvalidParameter("D^n needs 0 <= n <= 40");
  const std::int64_t len = std::int64_t{1} << n;
  const std::int64_t H = std::max<std::int64_t>(len, 100);
  const auto m = nearest_disagreement(x, y, 0, len, H);
  Units sum = 0;
  std::int64_t flagged = 0;
  for (std::int64_t d : m) {
    if (d <= H) {
      sum += units_pow2(d);
    } else {
      sum += units_pow2(H + 1);
      ++flagged;
    }
  }
  PseudometricEstimate est;
  est.kind = EstimatorKind::dn;
  est.tail = {n, n};
  est.value = units_to_double(sum) / static_cast<double>(len);
  est.argmax_n = n;
  est.agreement_flagged = flagged > 0;
  est.flagged_fraction = static_cast<double>(flagged) / static_cast<double>(len);
  est.flag_slack = flagged > 0 ? units_to_double(units_pow2(H + 1)) : 0.0;
  est.provenance = x.describe() + " vs " + y.describe();
  return est;
}

InvarianceResult invariance_check(const SystemHandle& sys, const Point& x, const Point& y, const GroupElement& g,
                                  const FoelnerFamily& family, Tail tail, std::int64_t translate_budget) {
  check_tail(family, tail);
  InvarianceResult r;
  r.base = weyl_pseudometric(sys, x, y, family, tail, translate_budget);
  r.moved = weyl_pseudometric(sys, sys.act(g, x), sys.act(g, y), family, tail, translate_budget);
  r.discrepancy = std::abs(r.moved.value - r.base.value);
  r.bound = 2.0 * static_cast<double>(g.norm1()) * sys.diameter /
            static_cast<double>(family[static_cast<std::size_t>(tail.n_min)].length);
  return r;
}

}  // namespace meq
