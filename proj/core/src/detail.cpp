#include "detail.hpp"

#include <numbers>

#include "meq/errors.hpp"
#include "meq/parallel.hpp"

namespace meq::detail {

bool is_symbolic_tree(const Point& p) {
  if (p.is<SymbolicPoint>()) return true;
  if (!p.is<ProductPoint>()) return false;
  const auto& pp = p.as<ProductPoint>();
  return is_symbolic_tree(pp.left()) && is_symbolic_tree(pp.right());
}

SymbolView symbol_view(const Point& p) {
  if (p.is<SymbolicPoint>()) {
    const SymbolicPoint x = p.as<SymbolicPoint>();
    return {[x](std::int64_t k) { return x.at(k); }, x.alphabet_size()};
  }
  if (!p.is<ProductPoint>())
    throw MismatchedKinds("expected a symbolic point or a product of symbolic points, got a " +
                          p.kind_name() + " point");
  const auto& pp = p.as<ProductPoint>();
  SymbolView l = symbol_view(pp.left());
  SymbolView r = symbol_view(pp.right());
  if (l.alphabet * r.alphabet > 64) throw InvalidParameter("product alphabet too large");
  const int rb = r.alphabet;
  return {[l = std::move(l.at), r = std::move(r.at), rb](std::int64_t k) {
            return static_cast<Symbol>(l(k) * rb + r(k));
          },
          l.alphabet * r.alphabet};
}

std::vector<Symbol> fetch_symbols(const SymbolView& view, std::int64_t lo, std::int64_t count) {
  if (count < 0) throw InvalidParameter("negative symbol count");
  std::vector<Symbol> out(static_cast<std::size_t>(count));
  parallel_chunks(out.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) out[i] = view.at(lo + static_cast<std::int64_t>(i));
  });
  return out;
}

std::vector<Symbol> fetch_symbols(const SymbolicPoint& x, std::int64_t lo, std::int64_t count) {
  return fetch_symbols(SymbolView{[&x](std::int64_t k) { return x.at(k); }, x.alphabet_size()}, lo, count);
}

void circle_coordinates(const Point& p, std::vector<CirclePoint>& out) {
  if (p.is<CirclePoint>()) {
    out.push_back(p.as<CirclePoint>());
    return;
  }
  if (!p.is<ProductPoint>()) throw MismatchedKinds("expected circle coordinates, got a " + p.kind_name() + " point");
  circle_coordinates(p.as<ProductPoint>().left(), out);
  circle_coordinates(p.as<ProductPoint>().right(), out);
}

std::complex<double> unit_phase(std::uint64_t bits) {
  // Signed reading keeps small negative phases precise.
  const double turns = static_cast<double>(static_cast<std::int64_t>(bits)) * 0x1.0p-64;
  return std::polar(1.0, 2.0 * std::numbers::pi * turns);
}

std::complex<double> chunked_sum(std::size_t n, const std::function<std::complex<double>(std::size_t)>& term) {
  const std::size_t chunks = (n + kChunk - 1) / kChunk;
  std::vector<std::complex<double>> partial(chunks);
  parallel_chunks(n, [&](std::size_t b, std::size_t e) {
    std::complex<double> s = 0;
    for (std::size_t i = b; i < e; ++i) s += term(i);
    partial[b / kChunk] = s;
  });
  std::complex<double> total = 0;
  for (const auto& s : partial) total += s;
  return total;
}

}  // namespace meq::detail
