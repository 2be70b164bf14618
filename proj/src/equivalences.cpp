#include "dcurve/equivalences.hpp"

#include "dcurve/errors.hpp"
#include "dcurve/exact.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dcurve {

bool PpvInterval::contains(double value, double tol) const {
    if (kind == PpvIntervalKind::zero_nb_two_point) {
        return std::abs(value - lower) <= tol || std::abs(value - upper) <= tol;
    }
    return value >= lower - tol && value <= upper + tol;
}

const char* to_string(PpvIntervalKind kind) {
    switch (kind) {
    case PpvIntervalKind::positive_nb: return "positive_nb";
    case PpvIntervalKind::zero_nb_two_point: return "zero_nb_two_point";
    case PpvIntervalKind::negative_nb: return "negative_nb";
    }
    return "unknown";
}

double ppv_from_nb(double nb, std::int64_t positives, std::int64_t n, double t) {
    require_threshold(t);
    if (n < 1 || positives < 0 || positives > n) {
        throw DomainError("ppv_from_nb: need 0 <= positives <= n and n >= 1");
    }
    if (positives == 0) return 0.0;
    return static_cast<double>(n) * nb / static_cast<double>(positives) * (1.0 - t) + t;
}

double treat_none_reference(double t) {
    require_threshold(t);
    return t;
}

double treat_all_reference_ppv(double prevalence, double s_t, double t) {
    require_threshold(t);
    if (!(s_t > 0.0)) {
        throw UndefinedError("treat-all PPV reference is undefined when nothing is selected");
    }
    return (prevalence - t) / s_t + t;
}

namespace routes {

using exact::wide;

// n (1 - t) den * NB = tp (den - num) - fp num
static wide scaled_nb(std::int64_t tp, std::int64_t fp, const exact::Threshold& t) {
    return wide{tp} * (t.den - t.num) - wide{fp} * t.num;
}

int nb_sign(const ThresholdConfusion& c) {
    return exact::sign(scaled_nb(c.tp, c.fp, exact::threshold(c.t)));
}

int nb_minus_all_sign(const ThresholdConfusion& c) {
    const auto t = exact::threshold(c.t);
    // Treat-all is the confusion with every event a TP and every non-event an FP.
    return exact::sign(scaled_nb(c.tp, c.fp, t) - scaled_nb(c.events(), c.non_events(), t));
}

bool nb_beats_none(const ThresholdConfusion& c) { return nb_sign(c) > 0; }

bool nb_beats_all(const ThresholdConfusion& c) { return nb_minus_all_sign(c) > 0; }

bool ppv_beats_none(const ThresholdConfusion& c) {
    if (c.positives() == 0) return false;  // PPV = 0 < t
    const auto t = exact::threshold(c.t);
    // tp / P > num / den
    return wide{c.tp} * t.den > wide{c.positives()} * t.num;
}

bool ppv_beats_all(const ThresholdConfusion& c) {
    if (c.positives() == 0) {
        throw UndefinedError("PPV route to treat-all needs at least one positive");
    }
    const auto t = exact::threshold(c.t);
    // tp/P > (n1/n - t) n/P + t  <=>  tp > n1 - n t + P t
    const wide lhs = wide{c.tp} * t.den;
    const wide rhs = wide{c.events()} * t.den - wide{c.n()} * t.num + wide{c.positives()} * t.num;
    return lhs > rhs;
}

} // namespace routes

DefaultsVerdict verdict_from_confusion(const ThresholdConfusion& c) {
    require_threshold(c.t);
    DefaultsVerdict v;
    v.t = c.t;
    v.nb = net_benefit(c);
    const double prevalence = static_cast<double>(c.events()) / static_cast<double>(c.n());
    v.nb_all = net_benefit_treat_all(prevalence, c.t);
    v.ppv = ppv(c);
    v.s_t = c.selection_rate();
    v.ppv_none_ref = treat_none_reference(c.t);

    v.beats_none = routes::nb_beats_none(c);
    v.beats_all = routes::nb_beats_all(c);

    if (routes::ppv_beats_none(c) != v.beats_none) {
        throw InvariantViolation("NB and PPV routes disagree on treat-none at t=" +
                                 std::to_string(c.t));
    }
    if (c.positives() > 0) {
        v.ppv_all_ref = treat_all_reference_ppv(prevalence, v.s_t, c.t);
        if (routes::ppv_beats_all(c) != v.beats_all) {
            throw InvariantViolation("NB and PPV routes disagree on treat-all at t=" +
                                     std::to_string(c.t));
        }
    }
    return v;
}

DefaultsVerdict verdict_vs_defaults(const PredictionSet& data, double t) {
    return verdict_from_confusion(classify_at_threshold(data, t));
}

PpvInterval ppv_bounds_given_nb(double nb, double prevalence, double t) {
    require_threshold(t);
    if (!(prevalence >= 0.0 && prevalence <= 1.0)) {
        throw DomainError("prevalence outside [0,1]");
    }
    if (!std::isfinite(nb)) throw DomainError("net benefit must be finite");

    const double odds = threshold_odds(t);
    const double max_nb = prevalence;                    // TP/n = I, FP = 0
    const double min_nb = -odds * (1.0 - prevalence);    // TP = 0, FP/n = 1 - I
    if (nb > max_nb + zero_nb_tolerance || nb < min_nb - zero_nb_tolerance) {
        throw InfeasibleError("net benefit " + std::to_string(nb) +
                              " is not attainable with prevalence " + std::to_string(prevalence) +
                              " at t=" + std::to_string(t));
    }

    PpvInterval out;
    out.t = t;
    out.nb = nb;
    if (std::abs(nb) <= zero_nb_tolerance) {
        out.kind = PpvIntervalKind::zero_nb_two_point;
        out.lower = 0.0;
        // With a single outcome class only the empty selection has NB = 0.
        out.upper = prevalence > 0.0 && prevalence < 1.0 ? t : 0.0;
        return out;
    }

    // PPV = nb (1 - t)/s + t is monotone in the selection rate s, so the
    // binding end sits at the largest feasible s. That is capped either by
    // TP/n <= I (s = nb + (I - nb)/t) or by FP/n <= 1 - I
    // (s = nb + (1 - I)/(1 - t)).
    const double tp_capped = nb / (nb + (prevalence - nb) / t) * (1.0 - t) + t;
    const double fp_capped = nb / (nb + (1.0 - prevalence) / (1.0 - t)) * (1.0 - t) + t;
    if (nb > 0.0) {
        out.kind = PpvIntervalKind::positive_nb;
        out.lower = std::clamp(std::max(tp_capped, fp_capped), 0.0, 1.0);
        out.upper = 1.0;
    } else {
        out.kind = PpvIntervalKind::negative_nb;
        out.lower = 0.0;
        out.upper = std::clamp(std::min(tp_capped, fp_capped), 0.0, 1.0);
    }
    return out;
}

} // namespace dcurve
