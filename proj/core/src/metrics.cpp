#include "meq/metrics.hpp"

#include <algorithm>
#include <bit>

#include "meq/errors.hpp"

namespace meq {

MetricValue cantor_metric(const SymbolicPoint& x, const SymbolicPoint& y, std::int64_t horizon) {
  if (horizon < 1) throw InvalidParameter("Cantor metric horizon must be >= 1");
  if (x.at(0) != y.at(0)) return {units_pow2(0), false};
  for (std::int64_t m = 1; m <= horizon; ++m) {
    if (x.at(m) != y.at(m) || x.at(-m) != y.at(-m)) return {units_pow2(m), false};
  }
  return {units_pow2(horizon + 1), true};
}

MetricValue circle_metric(CirclePoint a, CirclePoint b) {
  const std::uint64_t diff = a.bits() - b.bits();
  const std::uint64_t dist = std::min(diff, 0 - diff);
  return {static_cast<Units>(dist) << (kUnitBits - 64), false};
}

MetricValue odometer_metric(const OdometerPoint& a, const OdometerPoint& b, int depth) {
  if (depth < 1) throw InvalidParameter("odometer metric depth must be >= 1");
  int i = 0;
  while (i < depth) {
    const int block = std::min(64, depth - i);
    std::uint64_t xa = 0, xb = 0;
    if (i == 0) {
      xa = a.low_bits(block);
      xb = b.low_bits(block);
    } else {
      for (int j = 0; j < block; ++j) {
        xa |= static_cast<std::uint64_t>(a.digit(i + j)) << j;
        xb |= static_cast<std::uint64_t>(b.digit(i + j)) << j;
      }
    }
    if (const std::uint64_t x = xa ^ xb; x != 0) return {units_pow2(i + std::countr_zero(x)), false};
    i += block;
  }
  return {units_pow2(std::int64_t{depth} + 1), true};
}

const char* to_string(ProductMode mode) { return mode == ProductMode::max ? "max" : "sum"; }

MetricValue product_metric(const ProductPoint& p, const ProductPoint& q, ProductMode mode,
                           std::int64_t horizon) {
  const MetricValue l = point_metric(p.left(), q.left(), horizon, mode);
  const MetricValue r = point_metric(p.right(), q.right(), horizon, mode);
  const Units units = mode == ProductMode::max ? std::max(l.units, r.units) : l.units + r.units;
  return {units, l.flagged || r.flagged};
}

MetricValue point_metric(const Point& p, const Point& q, std::int64_t horizon, ProductMode mode) {
  if (p.variant().index() != q.variant().index())
    throw MismatchedKinds("cannot compare a " + p.kind_name() + " point with a " + q.kind_name() +
                          " point");
  if (p.is<SymbolicPoint>()) return cantor_metric(p.as<SymbolicPoint>(), q.as<SymbolicPoint>(), horizon);
  if (p.is<CirclePoint>()) return circle_metric(p.as<CirclePoint>(), q.as<CirclePoint>());
  if (p.is<OdometerPoint>()) {
    const auto& a = p.as<OdometerPoint>();
    const auto& b = q.as<OdometerPoint>();
    const std::int64_t cap = std::min<std::int64_t>(a.depth(), b.depth());
    return odometer_metric(a, b, static_cast<int>(std::clamp<std::int64_t>(horizon, 1, cap)));
  }
  return product_metric(p.as<ProductPoint>(), q.as<ProductPoint>(), mode, horizon);
}

int hamming_observable(const SymbolicPoint& x, const SymbolicPoint& y) {
  return x.at(0) != y.at(0) ? 1 : 0;
}

}  // namespace meq
