#pragma once

#include "dcurve/calibration.hpp"
#include "dcurve/core_metrics.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dcurve {

// lo, lo+step, ..., <= hi with 0 < lo <= hi < 1. Points are snapped to the
// decimal precision of lo and step so repeated addition does not drift.
class ThresholdGrid {
public:
    ThresholdGrid(double lo, double hi, double step);

    // "lo:hi:step"; throws DomainError on malformed text.
    static ThresholdGrid parse(const std::string& text);
    static ThresholdGrid default_grid() { return {0.01, 0.50, 0.01}; }

    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }
    double step() const noexcept { return step_; }
    const std::vector<double>& points() const noexcept { return points_; }

    bool operator==(const ThresholdGrid& o) const {
        return lo_ == o.lo_ && hi_ == o.hi_ && step_ == o.step_;
    }

private:
    double lo_;
    double hi_;
    double step_;
    std::vector<double> points_;
};

struct CurvePoint {
    double t = 0.5;
    double nb_model = 0.0;
    double nb_all = 0.0;
    double nb_none = 0.0;
    double s_t = 0.0;
    double ppv = 0.0;
    double ppv_none_ref = 0.0;
    std::optional<double> ppv_all_ref;  // absent when s_t = 0 (gap in the curve)
    bool beats_none = false;
    bool beats_all = false;
    ThresholdConfusion confusion;
    CalibrationSummary calibration;

    bool operator==(const CurvePoint&) const = default;
};

enum class CurveKind { decision, ppv };

struct Curve {
    CurveKind kind = CurveKind::decision;
    std::vector<CurvePoint> points;
};

// Assemble one point and check every per-threshold identity (throws
// InvariantViolation on failure).
CurvePoint make_curve_point(const ThresholdTally& tally);

// Tolerance for the floating-point identities checked per point.
inline constexpr double identity_tolerance = 1e-12;

// Uses the OpenMP sweep; results equal the serial evaluation.
std::vector<CurvePoint> decision_curve(const PredictionSet& data, const ThresholdGrid& grid);
std::vector<CurvePoint> decision_curve_serial(const PredictionSet& data, const ThresholdGrid& grid);

// Same points as decision_curve, tagged for PPV rendering.
Curve ppv_curve(const PredictionSet& data, const ThresholdGrid& grid);

struct RiskDistribution {
    enum class Family { uniform, beta } family = Family::uniform;
    double a = 1.0;
    double b = 1.0;

    static RiskDistribution uniform() { return {}; }
    static RiskDistribution beta(double a, double b) { return {Family::beta, a, b}; }
    // "uniform" or "beta:a:b"
    static RiskDistribution parse(const std::string& text);
    std::string to_string() const;

    bool operator==(const RiskDistribution&) const = default;
};

struct SyntheticSpec {
    std::size_t n = 1000;
    std::uint64_t seed = 0;
    RiskDistribution risk_distribution;
    double logit_shift = 0.0;  // reported = logistic(logit(q) + shift)
    std::string label = "synthetic";
};

struct SyntheticData {
    PredictionSet truth;     // true risks q_i
    PredictionSet reported;  // shifted risks, same outcomes
};

// Risks in (0,1) are clamped to [1e-12, 1 - 1e-12] before the logit.
inline constexpr double synthetic_risk_clamp = 1e-12;

double logit(double p);
double logistic(double x);

SyntheticData generate_synthetic(const SyntheticSpec& spec);

// Reported-model behaviour per threshold for a miscalibration scenario.
struct MiscalibrationPoint {
    double t = 0.5;
    double nb = 0.0;
    double nb_all = 0.0;
    std::optional<double> y_above;
    std::optional<double> y_below;
    bool worse_than_none = false;  // NB < 0, exactly
    bool worse_than_all = false;   // NB < NB_all, exactly
};

// Closed grid interval [first, last] of consecutive flagged thresholds.
struct ThresholdRegion {
    double first = 0.0;
    double last = 0.0;
};

struct MiscalibrationDemo {
    SyntheticSpec spec;
    double prevalence = 0.0;
    std::vector<MiscalibrationPoint> points;
    std::vector<ThresholdRegion> worse_than_none;
    std::vector<ThresholdRegion> worse_than_all;
};

MiscalibrationDemo run_miscalibration_demo(const SyntheticSpec& spec, const ThresholdGrid& grid);

} // namespace dcurve
