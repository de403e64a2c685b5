#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "meq/factors.hpp"
#include "meq/points.hpp"

namespace meq {

/// theta -> theta + t[theta mod 2^depth] on the dyadic odometer. Cylinder
/// index c = theta_0 + 2 theta_1 + ... + 2^(depth-1) theta_(depth-1).
/// Elements are kept canonical: the depth is reduced while both halves of
/// the translation table agree, so equality is structural.
class FullGroupElement {
 public:
  int depth() const { return depth_; }
  const std::vector<std::int64_t>& translations() const { return translations_; }
  std::int64_t translation(std::uint64_t cylinder) const { return translations_.at(cylinder); }

  friend bool operator==(const FullGroupElement&, const FullGroupElement&) = default;

 private:
  friend FullGroupElement make_element(int depth, std::vector<std::int64_t> translations);
  FullGroupElement(int depth, std::vector<std::int64_t> t) : depth_(depth), translations_(std::move(t)) {}
  int depth_ = 0;
  std::vector<std::int64_t> translations_;
};

/// Validates and canonicalizes. The map is a bijection of the odometer iff
/// c -> c + t[c] permutes Z/2^depth; this is checked at refinement depth
/// depth + (bit length of max |t|) + 2 (capped at 2^22 residues; the
/// permutation test at any depth >= `depth` is equivalent). Throws
/// InvalidElement otherwise.
FullGroupElement make_element(int depth, std::vector<std::int64_t> translations);

/// The odometer map theta -> theta + n.
FullGroupElement translation_element(std::int64_t n);
/// Depth 1: theta_0 = 0 -> theta, theta_0 = 1 -> theta + 2.
FullGroupElement element_s();

/// Throws OracleExhausted if theta is not resolved to the element depth.
OdometerPoint apply_element(const FullGroupElement& e, const OdometerPoint& theta);

/// e1 o e2, built at depth max(d1, d2) and canonicalized.
FullGroupElement compose(const FullGroupElement& e1, const FullGroupElement& e2);
FullGroupElement inverse(const FullGroupElement& e);

struct IsometryResult {
  bool isometric = false;
  double max_distortion = 0;
  std::size_t pairs = 0;
};

/// Max |d(ea, eb) - d(a, b)| over `count` sampled pairs at odometer depth
/// `depth`; pairs are drawn at all distance scales.
IsometryResult isometry_check(const FullGroupElement& e, std::size_t count, std::uint64_t seed,
                              int depth = OdometerPoint::kDefaultDepth);

/// s x = sigma^{t(cyl(h(x)))} x for the factor h onto the odometer. Throws
/// ResolutionTooCoarse if h(x) is not resolved to the element depth.
SymbolicPoint act_on_extension(const FullGroupElement& e, const SymbolicPoint& x, const FactorMap& factor);

/// "depth:n;cyl=trans,..." with cylinders written theta_0 theta_1 ... and
/// "*" for the single depth-0 cylinder, e.g. "depth:1;0=0,1=2".
FullGroupElement parse_element(const std::string& literal);
std::string to_literal(const FullGroupElement& e);

}  // namespace meq
