#include "dcurve/comparison.hpp"

#include "dcurve/errors.hpp"
#include "dcurve/exact.hpp"

#include <cmath>
#include <string>

namespace dcurve {

const char* to_string(Winner w) {
    switch (w) {
    case Winner::model1: return "model1";
    case Winner::model2: return "model2";
    case Winner::tie: return "tie";
    }
    return "unknown";
}

double ppv_superiority_reference(double nb2, std::int64_t positives1, std::int64_t n, double t) {
    require_threshold(t);
    if (positives1 <= 0) {
        throw UndefinedError("PPV superiority reference needs model 1 to select someone");
    }
    return t + (1.0 - t) * static_cast<double>(n) * nb2 / static_cast<double>(positives1);
}

namespace {

Winner from_sign(int s) {
    return s > 0 ? Winner::model1 : (s < 0 ? Winner::model2 : Winner::tie);
}

void check_route(const char* route, std::optional<Winner> found, Winner expected, double t) {
    if (found && *found != expected) {
        throw InvariantViolation(std::string(route) + " route disagrees with direct NB at t=" +
                                 std::to_string(t) + ": " + to_string(*found) + " vs " +
                                 to_string(expected));
    }
}

} // namespace

ComparisonVerdict compare_confusions(const ThresholdConfusion& c1, const ThresholdConfusion& c2) {
    require_threshold(c1.t);
    if (c1.t != c2.t) throw UsageError("models compared at different thresholds");
    if (c1.n() != c2.n() || c1.events() != c2.events()) {
        throw UsageError("models evaluated on different cohorts");
    }
    using exact::wide;
    const double t = c1.t;
    const auto et = exact::threshold(t);
    const double n = static_cast<double>(c1.n());

    ComparisonVerdict v;
    v.t = t;
    v.nb1 = net_benefit(c1);
    v.nb2 = net_benefit(c2);
    if (std::abs(v.nb1 - v.nb2) <= nb_tie_tolerance) {
        v.winner = Winner::tie;
    } else {
        v.winner = v.nb1 > v.nb2 ? Winner::model1 : Winner::model2;
    }

    if (c1.positives() > 0) {
        v.ppv1 = ppv(c1);
        v.ppv_superiority_ref = ppv_superiority_reference(v.nb2, c1.positives(), c1.n(), t);
        // tp1 > P1 t + (1 - t) n NB2, with n NB2 (1 - t) = tp2 (1 - t) - fp2 t
        const wide lhs = wide{c1.tp} * et.den;
        const wide rhs = wide{c1.positives()} * et.num + wide{c2.tp} * (et.den - et.num) -
                         wide{c2.fp} * et.num;
        v.ppv_route = from_sign(exact::sign(lhs - rhs));
    }

    auto above = [&](const ThresholdConfusion& c) -> std::optional<double> {
        if (c.positives() == 0) return std::nullopt;
        const double s = static_cast<double>(c.positives()) / n;
        return s * (ppv(c) - t);
    };
    auto below = [&](const ThresholdConfusion& c) -> std::optional<double> {
        if (c.negatives() == 0) return std::nullopt;
        const double s = static_cast<double>(c.positives()) / n;
        const double y_below = static_cast<double>(c.fn) / static_cast<double>(c.negatives());
        return (1.0 - s) * (t - y_below);
    };
    v.margin_above_1 = above(c1);
    v.margin_above_2 = above(c2);
    v.margin_below_1 = below(c1);
    v.margin_below_2 = below(c2);

    if (v.margin_above_1 && v.margin_above_2) {
        // n den s_m (Y_m - t) = tp_m den - P_m num
        const wide m1 = wide{c1.tp} * et.den - wide{c1.positives()} * et.num;
        const wide m2 = wide{c2.tp} * et.den - wide{c2.positives()} * et.num;
        v.margin_above_route = from_sign(exact::sign(m1 - m2));
    }
    if (v.margin_below_1 && v.margin_below_2) {
        // n den (1 - s_m)(t - Y_m,<t) = N_m num - fn_m den
        const wide m1 = wide{c1.negatives()} * et.num - wide{c1.fn} * et.den;
        const wide m2 = wide{c2.negatives()} * et.num - wide{c2.fn} * et.den;
        v.margin_below_route = from_sign(exact::sign(m1 - m2));
    }

    if (v.winner != Winner::tie) {
        check_route("PPV", v.ppv_route, v.winner, t);
        check_route("above-threshold margin", v.margin_above_route, v.winner, t);
        check_route("below-threshold margin", v.margin_below_route, v.winner, t);
    } else {
        // Exact routes must still agree among themselves.
        std::optional<Winner> first;
        for (const auto& r : {v.ppv_route, v.margin_above_route, v.margin_below_route}) {
            if (!r) continue;
            if (!first) first = r;
            else check_route("exact", r, *first, t);
        }
    }
    return v;
}

void require_shared_cohort(const PredictionSet& d1, const PredictionSet& d2) {
    if (d1.n() != d2.n()) {
        throw UsageError("models '" + d1.name() + "' and '" + d2.name() +
                         "' cover different numbers of patients");
    }
    const auto r1 = d1.records();
    const auto r2 = d2.records();
    for (std::size_t i = 0; i < r1.size(); ++i) {
        if (r1[i].outcome != r2[i].outcome) {
            throw UsageError("models '" + d1.name() + "' and '" + d2.name() +
                             "' disagree on the outcome of record " + std::to_string(i + 1));
        }
    }
}

ComparisonVerdict compare_models(const PredictionSet& d1, const PredictionSet& d2, double t) {
    require_threshold(t);
    require_shared_cohort(d1, d2);
    return compare_confusions(classify_at_threshold(d1, t), classify_at_threshold(d2, t));
}

} // namespace dcurve
