#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "meq/group.hpp"
#include "meq/metrics.hpp"
#include "meq/points.hpp"
#include "meq/substitution.hpp"

namespace meq {

enum class MetricKind { cantor, circle, odometer, product };

/// A group action bundled with a compatible metric and a seeded sampler.
struct SystemHandle {
  std::string label;
  int group_dim = 1;
  std::function<Point(const GroupElement&, const Point&)> act;
  /// metric(p, q, horizon); the horizon bounds how far a lazy comparison
  /// may look (coordinates for symbolic points, digits for odometers).
  std::function<MetricValue(const Point&, const Point&, std::int64_t)> metric;
  std::function<Point(std::uint64_t)> sampler;

  MetricKind metric_kind = MetricKind::cantor;
  /// act is the left shift on symbolic points (enables bulk sweeps).
  bool shift_action = false;
  /// Horizons above this give identical metric values.
  std::int64_t horizon_cap = std::numeric_limits<std::int64_t>::max();
  /// Averaged estimators use horizon min(L_n, horizon_cap) for a window of
  /// length L_n when set, and horizon_cap alone otherwise.
  bool horizon_tracks_window = true;
  double diameter = 1.0;

  Point act_n(std::int64_t n, const Point& p) const { return act(GroupElement::z(n), p); }
  Point sample(std::uint64_t seed) const { return sampler(seed); }
};

// ------------------------------------------------------------ subshifts

struct SubshiftParams {
  Symbol seed = 0;
  std::optional<Symbol> left_seed;
  std::string label;
  /// Sampled points are shifts of the fixed point by offsets in
  /// [-sample_radius, sample_radius], or multiples of `sample_stride` when
  /// it is nonzero.
  std::int64_t sample_radius = std::int64_t{1} << 20;
  std::int64_t sample_stride = 0;
  /// Further points of the subshift the sampler may return (e.g. the
  /// constant-1 point of the Cantor subshift).
  std::vector<SymbolicPoint> extra_points;
};

/// Left-shift action on the orbit closure of a substitution fixed point.
SystemHandle subshift_system(const SubstitutionRule& rule, SubshiftParams params);

/// Catalog subshifts with their documented two-sided extensions:
/// Cantor ...111.010111010... (left tail constant 1), Thue-Morse 1.0 under
/// the squared rule, period-doubling 0.1 under the squared rule.
SystemHandle cantor_substitution_system();
SystemHandle thue_morse_system();
SystemHandle period_doubling_system();
SymbolicPoint cantor_two_sided_point();
SymbolicPoint thue_morse_two_sided_point(Symbol left = 1, Symbol right = 0);
SymbolicPoint period_doubling_two_sided_point();

// ------------------------------------------------------------- Sturmian

/// Which endpoint of the coding arc is closed: [0, alpha) or (0, alpha].
enum class ArcConvention { left_closed, right_closed };

/// x_n = 1 iff {theta + n alpha} lies in the coding arc. With `guard`, a
/// phase within (|n| + 2) storage ulps of an arc endpoint raises
/// BoundaryAmbiguity (the approximation error of n * alpha).
SymbolicPoint sturmian_point(const RotationNumber& alpha, CirclePoint theta,
                             ArcConvention convention = ArcConvention::left_closed,
                             bool guard = true);

struct SturmianMeta : SymbolicPoint::Meta {
  RotationNumber alpha;
  CirclePoint theta;
  ArcConvention convention = ArcConvention::left_closed;
};

SystemHandle sturmian_system(const RotationNumber& alpha);

// ------------------------------------------------------------- Toeplitz

/// Toeplitz point with hole residues k_n = hole_path mod 2^n. Level n >= 1
/// fills the positions j == k_{n-1} (mod 2^(n-1)) with j != k_n (mod 2^n)
/// by fills[(n-1) % size]. A position equal to the hole path itself (only
/// possible when the path is an integer) is never filled and takes
/// `limit_value`.
struct ToeplitzParams {
  OdometerPoint hole_path = OdometerPoint::from_integer(-1);
  std::vector<Symbol> fills{0, 1};
  std::optional<Symbol> limit_value;
};

struct ToeplitzMeta : SymbolicPoint::Meta {
  ToeplitzParams params;
};

/// Hole path whose residues are k_1..k_D followed by the digits of `tail`
/// from index D on. Throws InvalidParameter unless 0 <= k_n < 2^n and
/// k_{n+1} == k_n (mod 2^n).
OdometerPoint hole_path_from_residues(std::span<const std::int64_t> residues,
                                      const OdometerPoint& tail);
/// Same, with the path declared only to depth D: deeper levels are unknown.
OdometerPoint hole_path_from_residues(std::span<const std::int64_t> residues);

SymbolicPoint toeplitz_point(const ToeplitzParams& params);
SymbolicPoint toeplitz_point(std::span<const std::int64_t> residues, std::span<const Symbol> fills,
                             std::optional<Symbol> limit_value = std::nullopt);

/// k_n = 2^n - 1 (the path -1) with alternating fills 0, 1, 0, ...
SymbolicPoint canonical_toeplitz_point(std::optional<Symbol> limit_value = std::nullopt);

/// Generic random hole path with `depth` digits.
OdometerPoint random_hole_path(std::uint64_t seed, int depth = 128);

SystemHandle toeplitz_system(std::vector<Symbol> fills = {0, 1});

// ------------------------------------------------------ circle and odometer

SystemHandle odometer_system(int depth = OdometerPoint::kDefaultDepth);
OdometerPoint random_odometer_point(std::uint64_t seed, int depth = OdometerPoint::kDefaultDepth);

SystemHandle rotation_system(const RotationNumber& alpha);

/// (x, theta) -> (x, theta + x) on base_points x S^1. Points are
/// ProductPoint(circle x, circle theta).
SystemHandle skew_product_system(std::vector<CirclePoint> base_points);

/// Diagonal action g(x, y) = (gx, gy). Throws InvalidParameter if the group
/// dimensions differ.
SystemHandle product_system(const SystemHandle& a, const SystemHandle& b,
                            ProductMode mode = ProductMode::max);

/// Z^2 acting on the 2-torus by (m, n).(s, t) = (s + m a, t + n b).
SystemHandle torus_rotation_system(const RotationNumber& a, const RotationNumber& b);

}  // namespace meq
