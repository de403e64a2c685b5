#pragma once

#include <cstdint>

#include "meq/points.hpp"

namespace meq {

/// d(x, y) = 2^-m with m the smallest |k| <= horizon where x_k != y_k. If
/// the points agree on [-horizon, horizon] the result is the flagged
/// surrogate 2^-(horizon+1).
MetricValue cantor_metric(const SymbolicPoint& x, const SymbolicPoint& y, std::int64_t horizon);

/// Arc-length distance min(|a-b|, 1-|a-b|), exact at 64 fractional bits.
MetricValue circle_metric(CirclePoint a, CirclePoint b);

/// 2^-m with m the first differing digit below `depth`; flagged
/// 2^-(depth+1) if none. Translation by any integer preserves it.
MetricValue odometer_metric(const OdometerPoint& a, const OdometerPoint& b, int depth);

enum class ProductMode { max, sum };
const char* to_string(ProductMode mode);

/// Combines component distances of two product points. Components are
/// measured with their natural metric (Cantor, circle, odometer) at
/// `horizon`; mismatched component kinds raise MismatchedKinds.
MetricValue product_metric(const ProductPoint& p, const ProductPoint& q, ProductMode mode,
                           std::int64_t horizon);

/// Natural metric for any pair of points of the same kind.
MetricValue point_metric(const Point& p, const Point& q, std::int64_t horizon,
                         ProductMode mode = ProductMode::max);

/// 1 iff x_0 != y_0.
int hamming_observable(const SymbolicPoint& x, const SymbolicPoint& y);

}  // namespace meq
