#include "dcurve/core_metrics.hpp"

#include "dcurve/errors.hpp"
#include "dcurve/exact.hpp"

#include <cmath>
#include <string>

namespace dcurve {

PredictionSet::PredictionSet(std::string name, std::vector<PredictionRecord> records)
    : name_(std::move(name)), records_(std::move(records)) {
    if (records_.empty()) {
        throw DataError("prediction set '" + name_ + "' has no records");
    }
    if (records_.size() > static_cast<std::size_t>(exact::max_count)) {
        throw DataError("prediction set '" + name_ + "' is too large");
    }
    for (std::size_t i = 0; i < records_.size(); ++i) {
        const auto& r = records_[i];
        if (!(r.risk >= 0.0 && r.risk <= 1.0)) {
            throw DataError("record " + std::to_string(i + 1) + ": risk " + std::to_string(r.risk) +
                                " outside [0,1]",
                            i + 1, "risk");
        }
        if (r.outcome != 0 && r.outcome != 1) {
            throw DataError("record " + std::to_string(i + 1) + ": outcome must be 0 or 1", i + 1,
                            "outcome");
        }
        n1_ += static_cast<std::size_t>(r.outcome);
    }
}

std::vector<int> PredictionSet::outcomes() const {
    std::vector<int> out;
    out.reserve(records_.size());
    for (const auto& r : records_) out.push_back(r.outcome);
    return out;
}

std::vector<double> PredictionSet::risks() const {
    std::vector<double> out;
    out.reserve(records_.size());
    for (const auto& r : records_) out.push_back(r.risk);
    return out;
}

PredictionSet make_prediction_set(std::string name, std::span<const double> risks,
                                  std::span<const int> outcomes) {
    if (risks.size() != outcomes.size()) {
        throw UsageError("risk and outcome columns differ in length");
    }
    std::vector<PredictionRecord> records(risks.size());
    for (std::size_t i = 0; i < risks.size(); ++i) records[i] = {risks[i], outcomes[i]};
    return PredictionSet(std::move(name), std::move(records));
}

void require_threshold(double t) {
    if (!(t > 0.0 && t < 1.0)) {
        throw DomainError("threshold " + std::to_string(t) + " outside the open interval (0,1)");
    }
}

ThresholdTally tally_threshold(std::span<const PredictionRecord> records, double t) {
    ThresholdTally out;
    out.confusion.t = t;
    auto& c = out.confusion;
    for (const auto& r : records) {
        if (r.risk >= t) {
            (r.outcome == 1 ? c.tp : c.fp) += 1;
            out.risk_sum_above += r.risk;
        } else {
            (r.outcome == 1 ? c.fn : c.tn) += 1;
            out.risk_sum_below += r.risk;
        }
    }
    return out;
}

ThresholdConfusion classify_at_threshold(const PredictionSet& data, double t) {
    require_threshold(t);
    return tally_threshold(data.records(), t).confusion;
}

double net_benefit(const ThresholdConfusion& c) {
    require_threshold(c.t);
    const double n = static_cast<double>(c.n());
    return static_cast<double>(c.tp) / n - static_cast<double>(c.fp) / n * threshold_odds(c.t);
}

double net_benefit_treat_all(double prevalence, double t) {
    require_threshold(t);
    if (!(prevalence >= 0.0 && prevalence <= 1.0)) {
        throw DomainError("prevalence outside [0,1]");
    }
    return prevalence - (1.0 - prevalence) * threshold_odds(t);
}

double ppv(const ThresholdConfusion& c) {
    if (c.positives() == 0) return 0.0;
    return static_cast<double>(c.tp) / static_cast<double>(c.positives());
}

double intervention_utility(const ThresholdConfusion& c, const UtilityWeights& w) {
    require_threshold(c.t);
    const double n = static_cast<double>(c.n());
    return (static_cast<double>(c.tp) * w.u11 + static_cast<double>(c.fp) * w.u10 +
            static_cast<double>(c.tn) * w.u00 + static_cast<double>(c.fn) * w.u01) /
           n;
}

UtilityWeights net_benefit_weights(double t) {
    require_threshold(t);
    return {1.0, -threshold_odds(t), 0.0, 0.0};
}

namespace {

void require_comparable(const ThresholdConfusion& c1, const ThresholdConfusion& c2) {
    if (c1.t != c2.t) throw UsageError("confusions taken at different thresholds");
    if (c1.n() != c2.n()) throw UsageError("confusions taken on cohorts of different size");
}

} // namespace

double nb_equality_gap(const ThresholdConfusion& c1, const ThresholdConfusion& c2) {
    require_comparable(c1, c2);
    require_threshold(c1.t);
    const double dtp = static_cast<double>(c1.tp - c2.tp);
    const double dfp = static_cast<double>(c1.fp - c2.fp);
    return (dtp - threshold_odds(c1.t) * dfp) / static_cast<double>(c1.n());
}

bool nb_equal_exact(const ThresholdConfusion& c1, const ThresholdConfusion& c2) {
    require_comparable(c1, c2);
    const auto t = exact::threshold(c1.t);
    // (tp1 - tp2)(1 - t) == t (fp1 - fp2), scaled by den.
    const exact::wide lhs = exact::wide{c1.tp - c2.tp} * (t.den - t.num);
    const exact::wide rhs = exact::wide{c1.fp - c2.fp} * t.num;
    return lhs == rhs;
}

} // namespace dcurve
