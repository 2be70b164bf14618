#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace dcurve {

struct PredictionRecord {
    double risk = 0.0;  // predicted event probability, in [0,1]
    int outcome = 0;    // observed event, 0 or 1

    bool operator==(const PredictionRecord&) const = default;
};

// One model's predictions on a cohort. Immutable after construction; the
// constructor validates every record and throws DataError naming the
// offending (1-based) record.
class PredictionSet {
public:
    PredictionSet(std::string name, std::vector<PredictionRecord> records);

    const std::string& name() const noexcept { return name_; }
    std::span<const PredictionRecord> records() const noexcept { return records_; }
    std::size_t n() const noexcept { return records_.size(); }
    std::size_t n1() const noexcept { return n1_; }
    std::size_t n0() const noexcept { return records_.size() - n1_; }
    double prevalence() const noexcept {
        return static_cast<double>(n1_) / static_cast<double>(records_.size());
    }

    std::vector<int> outcomes() const;
    std::vector<double> risks() const;

    bool operator==(const PredictionSet&) const = default;

private:
    std::string name_;
    std::vector<PredictionRecord> records_;
    std::size_t n1_ = 0;
};

// Build a set from parallel columns. Sizes must match.
PredictionSet make_prediction_set(std::string name, std::span<const double> risks,
                                  std::span<const int> outcomes);

struct ThresholdConfusion {
    double t = 0.5;
    std::int64_t tp = 0;
    std::int64_t fp = 0;
    std::int64_t tn = 0;
    std::int64_t fn = 0;

    std::int64_t n() const noexcept { return tp + fp + tn + fn; }
    std::int64_t positives() const noexcept { return tp + fp; }
    std::int64_t negatives() const noexcept { return tn + fn; }
    std::int64_t events() const noexcept { return tp + fn; }
    std::int64_t non_events() const noexcept { return fp + tn; }
    double selection_rate() const noexcept {
        return static_cast<double>(positives()) / static_cast<double>(n());
    }

    bool operator==(const ThresholdConfusion&) const = default;
};

// Counts plus per-group risk sums from a single pass over the records.
// The common currency of the curve kernels and the calibration module.
struct ThresholdTally {
    ThresholdConfusion confusion;
    double risk_sum_above = 0.0;  // sum of risks with risk >= t, in record order
    double risk_sum_below = 0.0;

    bool operator==(const ThresholdTally&) const = default;
};

struct UtilityWeights {
    double u11 = 1.0;  // true positive
    double u10 = 0.0;  // false positive
    double u00 = 0.0;  // true negative
    double u01 = 0.0;  // false negative
};

// Throws DomainError unless 0 < t < 1.
void require_threshold(double t);

// Harm-to-benefit weight t/(1-t).
inline double threshold_odds(double t) { return t / (1.0 - t); }

// Records with risk >= t are positive; ties at t count as positive.
ThresholdConfusion classify_at_threshold(const PredictionSet& data, double t);

ThresholdTally tally_threshold(std::span<const PredictionRecord> records, double t);

double net_benefit(const ThresholdConfusion& c);
double net_benefit_treat_all(double prevalence, double t);
inline constexpr double net_benefit_treat_none() noexcept { return 0.0; }

// tp / (tp + fp); 0 when nothing is classified positive.
double ppv(const ThresholdConfusion& c);

double intervention_utility(const ThresholdConfusion& c, const UtilityWeights& w);

// Weights under which intervention_utility reproduces net_benefit.
UtilityWeights net_benefit_weights(double t);

// ((tp1 - tp2) - t/(1-t) (fp1 - fp2)) / n, i.e. NB1 - NB2. Throws UsageError
// if the confusions were taken at different thresholds or cohort sizes.
double nb_equality_gap(const ThresholdConfusion& c1, const ThresholdConfusion& c2);

// Exact test of NB1 == NB2 via the count identity
// tp1 - tp2 == t/(1-t) (fp1 - fp2).
bool nb_equal_exact(const ThresholdConfusion& c1, const ThresholdConfusion& c2);

} // namespace dcurve
