#pragma once

#include "dcurve/core_metrics.hpp"

#include <cstdint>
#include <optional>

namespace dcurve {

// Model vs the two default strategies at one threshold.
struct DefaultsVerdict {
    double t = 0.5;
    bool beats_none = false;
    bool beats_all = false;
    double nb = 0.0;
    double nb_all = 0.0;
    double ppv = 0.0;
    double ppv_none_ref = 0.0;              // = t
    std::optional<double> ppv_all_ref;      // (pi - t)/s_t + t; absent when s_t = 0
    double s_t = 0.0;

    bool operator==(const DefaultsVerdict&) const = default;
};

enum class PpvIntervalKind { positive_nb, zero_nb_two_point, negative_nb };

// Feasible PPV values for a given NB, prevalence and threshold. For
// zero_nb_two_point only the endpoints {lower, upper} = {0, t} are feasible.
struct PpvInterval {
    double t = 0.5;
    double nb = 0.0;
    double lower = 0.0;
    double upper = 1.0;
    PpvIntervalKind kind = PpvIntervalKind::positive_nb;

    bool contains(double ppv, double tol = 1e-12) const;
    bool operator==(const PpvInterval&) const = default;
};

const char* to_string(PpvIntervalKind kind);

// |nb| at or below this is treated as exactly zero by ppv_bounds_given_nb.
inline constexpr double zero_nb_tolerance = 1e-12;

// PPV reconstructed from NB: (n nb / positives)(1 - t) + t, or 0 without positives.
double ppv_from_nb(double nb, std::int64_t positives, std::int64_t n, double t);

double treat_none_reference(double t);

// (pi - t)/s_t + t. Not clipped: it is a reference value, not a probability.
// Throws UndefinedError when s_t = 0.
double treat_all_reference_ppv(double prevalence, double s_t, double t);

// Evaluates beats_none / beats_all through the NB form and the PPV form
// independently (exact count arithmetic) and throws InvariantViolation if
// they disagree.
DefaultsVerdict verdict_from_confusion(const ThresholdConfusion& c);
DefaultsVerdict verdict_vs_defaults(const PredictionSet& data, double t);

// Exact verdict routes, exposed for tests.
namespace routes {
// Exact sign of NB and of NB - NB_all.
int nb_sign(const ThresholdConfusion& c);
int nb_minus_all_sign(const ThresholdConfusion& c);
bool nb_beats_none(const ThresholdConfusion& c);
bool nb_beats_all(const ThresholdConfusion& c);
bool ppv_beats_none(const ThresholdConfusion& c);
// Requires positives > 0.
bool ppv_beats_all(const ThresholdConfusion& c);
} // namespace routes

// Sharp PPV range implied by nb at prevalence I = prevalence. Throws
// InfeasibleError when no confusion table realises nb.
PpvInterval ppv_bounds_given_nb(double nb, double prevalence, double t);

} // namespace dcurve
