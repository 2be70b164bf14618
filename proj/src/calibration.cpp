#include "dcurve/calibration.hpp"

#include "dcurve/errors.hpp"
#include "dcurve/exact.hpp"

#include <algorithm>
#include <cmath>

namespace dcurve {

CalibrationSummary calibration_from_tally(const ThresholdTally& tally) {
    const auto& c = tally.confusion;
    require_threshold(c.t);
    CalibrationSummary s;
    s.t = c.t;
    s.s_t = c.selection_rate();
    s.n_above = c.positives();
    s.n_below = c.negatives();
    const double scale = s.s_t / (1.0 - c.t);

    if (s.n_above > 0) {
        const double k = static_cast<double>(s.n_above);
        s.y_above = static_cast<double>(c.tp) / k;
        // Every member has risk >= t; rounding in the sum must not push the mean below it.
        s.p_above = std::max(tally.risk_sum_above / k, c.t);
        s.delta_t = *s.y_above - *s.p_above;
        s.enrichment = scale * (*s.p_above - c.t);
        s.calibration_term = scale * *s.delta_t;
    }
    if (s.n_below > 0) {
        const double k = static_cast<double>(s.n_below);
        s.y_below = static_cast<double>(c.fn) / k;
        s.p_below = std::min(tally.risk_sum_below / k, std::nextafter(c.t, 0.0));
    }
    return s;
}

CalibrationSummary threshold_calibration(const PredictionSet& data, double t) {
    require_threshold(t);
    return calibration_from_tally(tally_threshold(data.records(), t));
}

double nb_via_calibration(const CalibrationSummary& s) {
    if (!s.y_above) throw UndefinedError("no records at or above the threshold");
    return s.s_t / (1.0 - s.t) * (*s.y_above - s.t);
}

double nb_gap_treat_all(const CalibrationSummary& s) {
    if (!s.y_below) throw UndefinedError("no records below the threshold");
    return (1.0 - s.s_t) / (1.0 - s.t) * (s.t - *s.y_below);
}

NbDecomposition nb_decomposition(const CalibrationSummary& s) {
    if (!s.enrichment || !s.calibration_term) {
        throw UndefinedError("no records at or above the threshold");
    }
    return {*s.enrichment, *s.calibration_term};
}

double prevalence_identity_residual(const CalibrationSummary& s, double prevalence) {
    if (!s.y_above || !s.y_below) {
        throw UndefinedError("prevalence identity needs both threshold groups to be non-empty");
    }
    return prevalence - (s.s_t * *s.y_above + (1.0 - s.s_t) * *s.y_below);
}

namespace routes {

bool observed_above_exceeds_threshold(const ThresholdConfusion& c) {
    if (c.positives() == 0) throw UndefinedError("no records at or above the threshold");
    const auto t = exact::threshold(c.t);
    return exact::wide{c.tp} * t.den > exact::wide{c.positives()} * t.num;
}

bool observed_below_under_threshold(const ThresholdConfusion& c) {
    if (c.negatives() == 0) throw UndefinedError("no records below the threshold");
    const auto t = exact::threshold(c.t);
    return exact::wide{c.fn} * t.den < exact::wide{c.negatives()} * t.num;
}

} // namespace routes

} // namespace dcurve
