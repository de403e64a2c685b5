#include "meq/group.hpp"

#include <cstdlib>
#include <numeric>

#include "meq/errors.hpp"

namespace meq {

namespace {

void require_same_dim(const GroupElement& a, const GroupElement& b) {
  if (a.dim != b.dim) throw InvalidParameter("group elements of different dimension");
}

}  // namespace

std::int64_t GroupElement::norm1() const { return std::llabs(coords[0]) + std::llabs(coords[1]); }

GroupElement operator+(const GroupElement& a, const GroupElement& b) {
  require_same_dim(a, b);
  return {{a.coords[0] + b.coords[0], a.coords[1] + b.coords[1]}, a.dim};
}

GroupElement operator-(const GroupElement& a, const GroupElement& b) {
  require_same_dim(a, b);
  return {{a.coords[0] - b.coords[0], a.coords[1] - b.coords[1]}, a.dim};
}

GroupElement operator-(const GroupElement& a) { return {{-a.coords[0], -a.coords[1]}, a.dim}; }

std::string to_string(const GroupElement& g) {
  if (g.dim == 1) return std::to_string(g.coords[0]);
  return "(" + std::to_string(g.coords[0]) + "," + std::to_string(g.coords[1]) + ")";
}

Ratio Ratio::reduced(std::int64_t num, std::int64_t den) {
  if (den <= 0) throw InvalidParameter("ratio with nonpositive denominator");
  const std::int64_t g = std::gcd(num, den);
  return g == 0 ? Ratio{0, 1} : Ratio{num / g, den / g};
}

bool Window::contains(const GroupElement& g) const {
  if (g.dim != dim()) return false;
  for (int i = 0; i < dim(); ++i) {
    const std::int64_t off = g[i] - start[i];
    if (off < 0 || off >= length) return false;
  }
  return true;
}

GroupElement Window::element(std::int64_t i) const {
  if (dim() == 1) return GroupElement::z(start[0] + i);
  return GroupElement::z2(start[0] + i % length, start[1] + i / length);
}

FoelnerFamily make_interval_foelner(std::span<const std::int64_t> lengths,
                                    std::span<const std::int64_t> starts) {
  if (lengths.empty()) throw InvalidParameter("Foelner family needs at least one window");
  if (lengths.size() != starts.size())
    throw InvalidParameter("Foelner family: lengths and starts differ in size");
  FoelnerFamily family;
  family.windows.reserve(lengths.size());
  for (std::size_t n = 0; n < lengths.size(); ++n) {
    if (lengths[n] < 1)
      throw InvalidParameter("Foelner window " + std::to_string(n) + " has length " +
                             std::to_string(lengths[n]));
    family.windows.push_back({GroupElement::z(starts[n]), lengths[n]});
  }
  return family;
}

FoelnerFamily make_box_foelner(std::span<const std::int64_t> lengths,
                               std::span<const GroupElement> starts) {
  if (lengths.empty()) throw InvalidParameter("Foelner family needs at least one window");
  if (lengths.size() != starts.size())
    throw InvalidParameter("Foelner family: lengths and starts differ in size");
  FoelnerFamily family;
  for (std::size_t n = 0; n < lengths.size(); ++n) {
    if (lengths[n] < 1) throw InvalidParameter("Foelner box with side < 1");
    if (starts[n].dim != 2) throw InvalidParameter("box family needs Z^2 start points");
    family.windows.push_back({starts[n], lengths[n]});
  }
  return family;
}

FoelnerFamily dyadic_family(int max_level, int dim) {
  if (max_level < 0 || max_level > 40) throw InvalidParameter("dyadic level out of range");
  if (dim != 1 && dim != 2) throw InvalidParameter("group dimension must be 1 or 2");
  if (dim == 2 && max_level > 20) throw InvalidParameter("Z^2 dyadic level out of range");
  FoelnerFamily family;
  for (int n = 0; n <= max_level; ++n)
    family.windows.push_back({GroupElement::identity(dim), std::int64_t{1} << n});
  return family;
}

Ratio foelner_defect(const Window& window, const GroupElement& g) {
  if (window.length < 1) throw InvalidParameter("empty window");
  if (g.dim != window.dim()) throw InvalidParameter("defect: dimension mismatch");
  // |gF ∩ F| is a product of per-axis overlaps for intervals and boxes.
  std::int64_t overlap = 1;
  for (int i = 0; i < window.dim(); ++i) {
    const std::int64_t shift = std::llabs(g[i]);
    overlap *= shift >= window.length ? 0 : window.length - shift;
  }
  return Ratio::reduced(2 * (window.size() - overlap), window.size());
}

FoelnerFamily translate_foelner(const FoelnerFamily& family, const GroupElement& s) {
  FoelnerFamily out;
  out.windows.reserve(family.size());
  for (const auto& w : family.windows) out.windows.push_back(w.translated(s));
  return out;
}

}  // namespace meq
