#pragma once

// Threshold-sweep kernels. sweep_serial is the reference; sweep_parallel
// distributes thresholds over OpenMP threads and performs exactly the same
// per-threshold computation, so the two are bit-identical.

#include "dcurve/core_metrics.hpp"

#include <span>
#include <vector>

namespace dcurve {

std::vector<ThresholdTally> sweep_serial(const PredictionSet& data,
                                         std::span<const double> thresholds);

std::vector<ThresholdTally> sweep_parallel(const PredictionSet& data,
                                           std::span<const double> thresholds);

} // namespace dcurve
