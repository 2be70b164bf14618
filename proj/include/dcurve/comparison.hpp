#pragma once

#include "dcurve/core_metrics.hpp"

#include <cstdint>
#include <optional>

namespace dcurve {

enum class Winner { model1, model2, tie };

const char* to_string(Winner w);

// Net benefit ties within this absolute tolerance.
inline constexpr double nb_tie_tolerance = 1e-12;

struct ComparisonVerdict {
    double t = 0.5;
    double nb1 = 0.0;
    double nb2 = 0.0;
    Winner winner = Winner::tie;

    // PPV route; absent when model 1 selects nobody.
    std::optional<double> ppv1;
    std::optional<double> ppv_superiority_ref;

    // s_m (Y_m,>=t - t); absent when model m selects nobody.
    std::optional<double> margin_above_1;
    std::optional<double> margin_above_2;
    // (1 - s_m)(t - Y_m,<t); absent when model m selects everybody.
    std::optional<double> margin_below_1;
    std::optional<double> margin_below_2;

    // Orderings found by the exact secondary routes, when defined.
    std::optional<Winner> ppv_route;
    std::optional<Winner> margin_above_route;
    std::optional<Winner> margin_below_route;

    bool operator==(const ComparisonVerdict&) const = default;
};

// t + (1 - t) n nb2 / positives1. Throws UndefinedError when positives1 = 0.
double ppv_superiority_reference(double nb2, std::int64_t positives1, std::int64_t n, double t);

ComparisonVerdict compare_confusions(const ThresholdConfusion& c1, const ThresholdConfusion& c2);

// Both sets must carry the same outcome vector (UsageError otherwise).
// Throws InvariantViolation if the routes disagree.
ComparisonVerdict compare_models(const PredictionSet& d1, const PredictionSet& d2, double t);

void require_shared_cohort(const PredictionSet& d1, const PredictionSet& d2);

} // namespace dcurve
