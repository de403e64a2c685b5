#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace meq {

/// Element of Z (dim 1) or Z^2 (dim 2). Group laws are plain integer
/// arithmetic on the coordinates.
struct GroupElement {
  std::array<std::int64_t, 2> coords{0, 0};
  int dim = 1;

  static GroupElement z(std::int64_t n) { return {{n, 0}, 1}; }
  static GroupElement z2(std::int64_t a, std::int64_t b) { return {{a, b}, 2}; }
  static GroupElement identity(int dim) { return {{0, 0}, dim}; }

  std::int64_t operator[](int i) const { return coords[static_cast<std::size_t>(i)]; }
  bool is_identity() const { return coords[0] == 0 && coords[1] == 0; }
  /// Sum of absolute coordinates.
  std::int64_t norm1() const;

  friend GroupElement operator+(const GroupElement& a, const GroupElement& b);
  friend GroupElement operator-(const GroupElement& a, const GroupElement& b);
  friend GroupElement operator-(const GroupElement& a);
  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

std::string to_string(const GroupElement& g);

/// Exact nonnegative rational in lowest terms.
struct Ratio {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Ratio reduced(std::int64_t num, std::int64_t den);
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Ratio&, const Ratio&) = default;
};

/// Finite window: the interval [start, start + length) in Z or the box
/// [start, start + length)^2 in Z^2. Its Haar measure is its cardinality.
struct Window {
  GroupElement start;
  std::int64_t length = 1;

  int dim() const { return start.dim; }
  std::int64_t size() const { return dim() == 1 ? length : length * length; }
  bool contains(const GroupElement& g) const;
  /// i-th element in row-major order, i in [0, size()).
  GroupElement element(std::int64_t i) const;
  Window translated(const GroupElement& s) const { return {start + s, length}; }
  friend bool operator==(const Window&, const Window&) = default;
};

/// Indexed family n -> F_n of windows.
struct FoelnerFamily {
  std::vector<Window> windows;

  int dim() const { return windows.empty() ? 1 : windows.front().dim(); }
  std::size_t size() const { return windows.size(); }
  const Window& operator[](std::size_t n) const { return windows.at(n); }
  friend bool operator==(const FoelnerFamily&, const FoelnerFamily&) = default;
};

/// F_n = [starts_n, starts_n + lengths_n). Throws InvalidParameter on empty
/// input, mismatched sizes or a length < 1.
FoelnerFamily make_interval_foelner(std::span<const std::int64_t> lengths,
                                    std::span<const std::int64_t> starts);

/// Boxes [start_n, start_n + lengths_n)^2 in Z^2.
FoelnerFamily make_box_foelner(std::span<const std::int64_t> lengths,
                               std::span<const GroupElement> starts);

/// Canonical family F_n = [0, 2^n) (or [0, 2^n)^2), n = 0..max_level.
FoelnerFamily dyadic_family(int max_level, int dim = 1);

/// |gF symmetric-difference F| / |F|, exact.
Ratio foelner_defect(const Window& window, const GroupElement& g);

FoelnerFamily translate_foelner(const FoelnerFamily& family, const GroupElement& s);

}  // namespace meq
