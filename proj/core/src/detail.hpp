#pragma once

// Internal helpers shared by the estimator sources.

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "meq/points.hpp"

namespace meq::detail {

/// Coordinate access for a symbolic point or a (nested) product of symbolic
/// points; product symbols are a * |B| + b.
struct SymbolView {
  std::function<Symbol(std::int64_t)> at;
  int alphabet = 2;
};

bool is_symbolic_tree(const Point& p);
SymbolView symbol_view(const Point& p);

/// Symbols at lo, lo + 1, ..., lo + count - 1, fetched in parallel chunks.
std::vector<Symbol> fetch_symbols(const SymbolView& view, std::int64_t lo, std::int64_t count);
std::vector<Symbol> fetch_symbols(const SymbolicPoint& x, std::int64_t lo, std::int64_t count);

/// Circle coordinates of a (nested) product, left to right. Throws
/// MismatchedKinds on non-circle leaves.
void circle_coordinates(const Point& p, std::vector<CirclePoint>& out);

/// exp(2 pi i phase) for a 64-bit fixed-point phase.
std::complex<double> unit_phase(std::uint64_t bits);

/// Sum of term(i) for i in [0, n) over fixed chunks, reduced in chunk order.
std::complex<double> chunked_sum(std::size_t n, const std::function<std::complex<double>(std::size_t)>& term);

}  // namespace meq::detail
