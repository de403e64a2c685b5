#pragma once

#include <string>
#include <utility>
#include <vector>

#include "meq/config.hpp"
#include "meq/ergodic.hpp"
#include "meq/scan.hpp"
#include "meq/systems.hpp"

namespace meq {

/// golden | silver | p/q | cf:a1,a2,... (continued fraction [0; a1, a2, ...]).
RotationNumber parse_rotation(const std::string& label);

/// Fill symbols from a digit string such as "01".
std::vector<Symbol> parse_fills(const std::string& digits);

const std::vector<std::string>& system_labels();

/// The system named by the `system` key with its parameters.
SystemHandle make_system(const RunConfig& config);

/// The two configured points (theta1/theta2, offset1/offset2, hole1/hole2,
/// base1/base2 depending on the system).
std::pair<Point, Point> configured_points(const RunConfig& config);

/// The `observable` key interpreted for the configured system.
Observable make_observable(const RunConfig& config);

/// Family windows up to the tail maximum, and the tail.
FoelnerFamily make_family(const RunConfig& config);
Tail make_tail(const RunConfig& config);

PairSampler make_pair_sampler(const RunConfig& config);

}  // namespace meq
