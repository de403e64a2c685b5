#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "meq/points.hpp"
#include "meq/systems.hpp"

namespace meq {

/// Equivariant map from `source` onto `target`. `resolution` bounds the
/// target-metric error of apply(); `fiber_candidates` lists source points
/// that may share the fiber of x (x itself included).
struct FactorMap {
  std::string label;
  std::function<Point(const Point&)> apply;
  SystemHandle source;
  SystemHandle target;
  double resolution = 0;
  std::function<std::vector<Point>(const Point&)> fiber_candidates;
};

struct SturmianPhase {
  CirclePoint center;
  /// Half-width of the constraint intersection.
  double radius = 0;
};

/// Intersects the arcs {theta : 1[theta + n alpha in [0, alpha)] = x_n} for
/// |n| <= depth (closed arcs, so both codings of a boundary phase fit).
/// Throws NotASturmianPoint on an empty intersection.
SturmianPhase sturmian_to_rotation_factor(const SymbolicPoint& x, const RotationNumber& alpha, int depth);

/// Odometer coordinate h(x) = -(hole path of x), so that h(sigma x) = h(x) + 1.
/// Constructed points are read from their parameters; other points are
/// scanned for the unique non-periodic residue mod 2^n on
/// [-2^(n+1), 2^(n+1)), n = 1..depth. Throws NotInFamily when a level has no
/// unique residue.
OdometerPoint toeplitz_to_odometer_factor(const SymbolicPoint& x, int depth);

/// Hole residues k_1..k_depth of x, read or detected as above.
std::vector<std::int64_t> toeplitz_hole_residues(const SymbolicPoint& x, int depth);

/// Residues r in [0, 2^n) such that x is constant on r + 2^n Z within
/// [-2^(n+1), 2^(n+1)).
std::vector<std::int64_t> periodic_residues(const SymbolicPoint& x, int n);

/// y_n = x_n xor x_{n+1}.
SymbolicPoint thue_morse_block_code(const SymbolicPoint& x);

FactorMap sturmian_factor(const RotationNumber& alpha, int depth = 1000);
FactorMap toeplitz_factor(int depth = 32, std::vector<Symbol> fills = {0, 1});
FactorMap thue_morse_factor(std::int64_t horizon = 64);
FactorMap odometer_identity_factor(int depth = OdometerPoint::kDefaultDepth);

struct FiberReport {
  std::string factor;
  std::size_t sample_size = 0;
  double tolerance = 0;
  /// fiber size -> number of sampled points.
  std::map<std::size_t, std::size_t> histogram;
  /// Fraction of sampled points with a singleton fiber.
  double regularity = 0;
  /// (target description, fiber size) for the first sampled points.
  std::vector<std::pair<std::string, std::size_t>> examples;
};

/// For each sampled source point, counts the distinct fiber candidates whose
/// images lie within `tolerance` of its image. Distinctness uses the source
/// metric at horizon 64. Throws ResolutionTooCoarse unless the factor
/// resolution is below the tolerance.
FiberReport fiber_statistics(const FactorMap& factor, const std::function<Point(std::uint64_t)>& source_sampler,
                             double tolerance, std::size_t sample_size, std::uint64_t seed);

/// Largest target distance between apply(g x) and g apply(x) over `count`
/// sampled x and g uniform in [-max_g, max_g].
double equivariance_defect(const FactorMap& factor, std::size_t count, std::int64_t max_g, std::uint64_t seed);

}  // namespace meq
