#pragma once

#include "meq/ergodic.hpp"
#include "meq/factors.hpp"
#include "meq/fullgroup.hpp"
#include "meq/pseudometric.hpp"
#include "meq/report.hpp"
#include "meq/scan.hpp"
#include "meq/spectrum.hpp"

namespace meq {

Json to_json(Complex z);
Json to_json(Tail tail);
Json to_json(const PseudometricEstimate& e);
Json to_json(const ModulusTable& t);
Json to_json(const UniqueErgodicityResult& r);
Json to_json(const ProductCheckResult& r);
Json to_json(const WeylSumResult& r);
/// Peaks and summary statistics; the grid itself goes to CSV.
Json to_json(const SpectrumScan& s);
Json to_json(const FiberReport& r);
Json to_json(const IsometryResult& r);

}  // namespace meq
