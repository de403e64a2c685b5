#pragma once

#include <cstdint>
#include <string>

#include "meq/ergodic.hpp"
#include "meq/group.hpp"
#include "meq/points.hpp"
#include "meq/systems.hpp"

namespace meq {

enum class EstimatorKind { besicovitch, weyl, observable, dn };
const char* to_string(EstimatorKind kind);

/// Averaged-distance estimate
///   max_{n in tail, s in translates} (1/|F_n + s|) sum_{t in F_n + s} d(tx, ty)
/// where d is the system metric at horizon min(L_n, horizon_cap), or the
/// observable integrand |f(tx) - f(ty)|.
struct PseudometricEstimate {
  double value = 0;
  EstimatorKind kind = EstimatorKind::besicovitch;
  Tail tail;
  std::int64_t translate_budget = 0;
  /// Some metric term hit its horizon without finding a disagreement.
  bool agreement_flagged = false;
  double flagged_fraction = 0;
  /// Largest surrogate value a flagged term may carry.
  double flag_slack = 0;
  int argmax_n = 0;
  GroupElement argmax_shift;
  std::string provenance;
};

/// D_F along `family` over the tail (no translates).
PseudometricEstimate besicovitch_pseudometric(const SystemHandle& sys, const Point& x, const Point& y,
                                              const FoelnerFamily& family, Tail tail);

/// Sup over translated windows F_n + s, s in [0, S] (in Z^2, s on the grid
/// {0, S/4, ..., S}^2). S < 0 selects the largest window length in the tail.
PseudometricEstimate weyl_pseudometric(const SystemHandle& sys, const Point& x, const Point& y,
                                       const FoelnerFamily& family, Tail tail,
                                       std::int64_t translate_budget = -1);

/// D_f with integrand |f(tx) - f(ty)|, or 1[(tx)_0 != (ty)_0] for
/// Observable::hamming(). translate_budget as for weyl_pseudometric; 0
/// gives the untranslated family.
PseudometricEstimate observable_pseudometric(const SystemHandle& sys, const Observable& f, const Point& x,
                                             const Point& y, const FoelnerFamily& family, Tail tail,
                                             std::int64_t translate_budget = -1);

/// D^n(x, y) = 2^-n sum_{l < 2^n} d(sigma^l x, sigma^l y), Cantor metric at
/// horizon max(2^n, 100).
PseudometricEstimate dn_pseudometric(const SymbolicPoint& x, const SymbolicPoint& y, int n);

struct InvarianceResult {
  double discrepancy = 0;
  /// 2 |g| diam / L_{n_min}.
  double bound = 0;
  PseudometricEstimate base;
  PseudometricEstimate moved;
};

/// |weyl(gx, gy) - weyl(x, y)| with identical parameters.
InvarianceResult invariance_check(const SystemHandle& sys, const Point& x, const Point& y, const GroupElement& g,
                                  const FoelnerFamily& family, Tail tail, std::int64_t translate_budget = -1);

}  // namespace meq
