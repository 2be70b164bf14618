#include "dcurve/kernels.hpp"

#include <cstddef>

namespace dcurve {

std::vector<ThresholdTally> sweep_serial(const PredictionSet& data,
                                         std::span<const double> thresholds) {
    for (double t : thresholds) require_threshold(t);
    std::vector<ThresholdTally> out;
    out.reserve(thresholds.size());
    for (double t : thresholds) out.push_back(tally_threshold(data.records(), t));
    return out;
}

std::vector<ThresholdTally> sweep_parallel(const PredictionSet& data,
                                           std::span<const double> thresholds) {
    for (double t : thresholds) require_threshold(t);
    std::vector<ThresholdTally> out(thresholds.size());
    const auto records = data.records();
    const auto count = static_cast<std::ptrdiff_t>(thresholds.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t k = 0; k < count; ++k) {
        out[static_cast<std::size_t>(k)] =
            tally_threshold(records, thresholds[static_cast<std::size_t>(k)]);
    }
    return out;
}

} // namespace dcurve
