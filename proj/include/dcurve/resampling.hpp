#pragma once

#include "dcurve/core_metrics.hpp"
#include "dcurve/curves.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace dcurve {

enum class BandMethod { percentile };

struct BandSpec {
    std::size_t replicates = 1000;
    std::uint64_t seed = 0;
    double level = 0.95;
    BandMethod method = BandMethod::percentile;

    bool operator==(const BandSpec&) const = default;
};

struct BandPoint {
    double t = 0.5;
    double nb_lower = 0.0;
    double nb_upper = 0.0;
    std::optional<double> ppv_lower;  // absent when every replicate had s_t = 0
    std::optional<double> ppv_upper;
    std::size_t nb_replicates = 0;
    std::size_t ppv_replicates = 0;   // replicates with s_t > 0
    std::size_t ppv_excluded = 0;

    bool operator==(const BandPoint&) const = default;
};

struct CurveBand {
    std::vector<BandPoint> points;

    bool operator==(const CurveBand&) const = default;
};

// Nearest-rank quantile of an ascending sample: element ceil(p * size), 1-based,
// clamped to [1, size]. Throws DomainError on an empty sample.
double nearest_rank(std::span<const double> sorted, double p);

// Per-replicate curve values: nb[r][k] and ppv[r][k] (NaN where s_t = 0 for
// ppv) for replicate r and grid point k.
struct ReplicateTable {
    std::vector<std::vector<double>> nb;
    std::vector<std::vector<double>> ppv;
};

// Replicate i draws n indices with replacement from the engine seeded by
// (spec.seed, i), so the table does not depend on scheduling.
ReplicateTable bootstrap_replicates_serial(const PredictionSet& data, const ThresholdGrid& grid,
                                           const BandSpec& spec);
ReplicateTable bootstrap_replicates(const PredictionSet& data, const ThresholdGrid& grid,
                                    const BandSpec& spec);

CurveBand bands_from_replicates(const ReplicateTable& table, const ThresholdGrid& grid,
                                double level);

CurveBand bootstrap_bands_serial(const PredictionSet& data, const ThresholdGrid& grid,
                                 const BandSpec& spec);
CurveBand bootstrap_bands(const PredictionSet& data, const ThresholdGrid& grid,
                          const BandSpec& spec);

} // namespace dcurve
