#pragma once

#include "dcurve/core_metrics.hpp"

#include <cstdint>
#include <optional>
#include <utility>

namespace dcurve {

// Threshold-split calibration diagnostics. Fields describing the group at or
// above t are absent when that group is empty (s_t = 0); y_below / p_below
// are absent when every record is selected (s_t = 1).
struct CalibrationSummary {
    double t = 0.5;
    double s_t = 0.0;
    std::int64_t n_above = 0;
    std::int64_t n_below = 0;
    std::optional<double> y_above;
    std::optional<double> y_below;
    std::optional<double> p_above;
    std::optional<double> p_below;
    std::optional<double> delta_t;           // y_above - p_above
    std::optional<double> enrichment;        // s_t/(1-t) (p_above - t)
    std::optional<double> calibration_term;  // s_t/(1-t) delta_t

    bool operator==(const CalibrationSummary&) const = default;
};

CalibrationSummary calibration_from_tally(const ThresholdTally& tally);
CalibrationSummary threshold_calibration(const PredictionSet& data, double t);

// s_t/(1-t) (y_above - t). Throws UndefinedError if the above-group is empty.
double nb_via_calibration(const CalibrationSummary& s);

// (1-s_t)/(1-t) (t - y_below) = NB - NB_all. Throws UndefinedError if the
// below-group is empty.
double nb_gap_treat_all(const CalibrationSummary& s);

struct NbDecomposition {
    double enrichment = 0.0;
    double calibration_term = 0.0;
};

NbDecomposition nb_decomposition(const CalibrationSummary& s);

// pi - (s_t y_above + (1 - s_t) y_below). Requires 0 < s_t < 1.
double prevalence_identity_residual(const CalibrationSummary& s, double prevalence);

// Exact calibration-form verdicts from counts: y_above > t and y_below < t.
// Each requires its group to be non-empty.
namespace routes {
bool observed_above_exceeds_threshold(const ThresholdConfusion& c);
bool observed_below_under_threshold(const ThresholdConfusion& c);
} // namespace routes

} // namespace dcurve
