#include "dcurve/curves.hpp"

#include "dcurve/equivalences.hpp"
#include "dcurve/errors.hpp"
#include "dcurve/kernels.hpp"
#include "dcurve/random.hpp"

#include <boost/random/beta_distribution.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>
#include <string_view>

namespace dcurve {
namespace {

constexpr int max_grid_decimals = 15;
constexpr std::size_t max_grid_points = 1'000'000;

// Digits after the decimal point in the shortest representation of v.
int fractional_digits(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    const std::string_view s(buf, res.ptr);
    int exp10 = 0;
    auto e = s.find_first_of("eE");
    std::string_view mantissa = s.substr(0, e);
    if (e != std::string_view::npos) {
        std::string_view ex = s.substr(e + 1);
        if (!ex.empty() && ex.front() == '+') ex.remove_prefix(1);
        std::from_chars(ex.data(), ex.data() + ex.size(), exp10);
    }
    const auto dot = mantissa.find('.');
    const int frac = dot == std::string_view::npos ? 0 : static_cast<int>(mantissa.size() - dot - 1);
    return std::max(0, frac - exp10);
}

double parse_double(std::string_view text, const std::string& what) {
    double v = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
        throw DomainError("cannot parse " + what + " '" + std::string(text) + "'");
    }
    return v;
}

} // namespace

ThresholdGrid::ThresholdGrid(double lo, double hi, double step) : lo_(lo), hi_(hi), step_(step) {
    if (!(lo > 0.0 && hi < 1.0 && lo <= hi)) {
        throw DomainError("threshold grid needs 0 < lo <= hi < 1");
    }
    if (!(step > 0.0) || !std::isfinite(step)) {
        throw DomainError("threshold grid step must be positive");
    }
    const double span = (hi - lo) / step;
    if (span + 1.0 > static_cast<double>(max_grid_points)) {
        throw DomainError("threshold grid has too many points");
    }
    const int decimals =
        std::min(max_grid_decimals, std::max(fractional_digits(lo), fractional_digits(step)));
    const double scale = std::pow(10.0, decimals);
    const auto count = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
    points_.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        const double raw = lo + static_cast<double>(k) * step;
        const double t = std::round(raw * scale) / scale;
        if (t > hi) break;
        points_.push_back(t);
    }
}

ThresholdGrid ThresholdGrid::parse(const std::string& text) {
    const auto a = text.find(':');
    const auto b = a == std::string::npos ? std::string::npos : text.find(':', a + 1);
    if (b == std::string::npos || text.find(':', b + 1) != std::string::npos) {
        throw DomainError("grid must be lo:hi:step, got '" + text + "'");
    }
    const std::string_view s(text);
    return {parse_double(s.substr(0, a), "grid lo"), parse_double(s.substr(a + 1, b - a - 1), "grid hi"),
            parse_double(s.substr(b + 1), "grid step")};
}

CurvePoint make_curve_point(const ThresholdTally& tally) {
    const auto& c = tally.confusion;
    const DefaultsVerdict verdict = verdict_from_confusion(c);

    CurvePoint p;
    p.t = c.t;
    p.nb_model = verdict.nb;
    p.nb_all = verdict.nb_all;
    p.nb_none = net_benefit_treat_none();
    p.s_t = verdict.s_t;
    p.ppv = verdict.ppv;
    p.ppv_none_ref = verdict.ppv_none_ref;
    p.ppv_all_ref = verdict.ppv_all_ref;
    p.beats_none = verdict.beats_none;
    p.beats_all = verdict.beats_all;
    p.confusion = c;
    p.calibration = calibration_from_tally(tally);

    const double t = c.t;
    const double tol = identity_tolerance * std::max(1.0, threshold_odds(t));
    auto check = [&](bool ok, const char* what) {
        if (!ok) throw InvariantViolation(std::string(what) + " fails at t=" + std::to_string(t));
    };
    const double prevalence = static_cast<double>(c.events()) / static_cast<double>(c.n());
    check(std::abs(p.nb_all - (prevalence - t) / (1.0 - t)) <= tol, "treat-all closed form");

    const auto& cal = p.calibration;
    if (c.positives() > 0) {
        check(std::abs(p.nb_model - nb_via_calibration(cal)) <= tol, "NB calibration form");
        check(std::abs(ppv_from_nb(p.nb_model, c.positives(), c.n(), t) - p.ppv) <= tol,
              "PPV reconstruction from NB");
        const auto parts = nb_decomposition(cal);
        check(std::abs(parts.enrichment + parts.calibration_term - p.nb_model) <= tol,
              "enrichment/calibration decomposition");
        check(*cal.y_above == p.ppv, "observed rate above t equals PPV");
        check(routes::observed_above_exceeds_threshold(c) == p.beats_none,
              "calibration route to treat-none");
    }
    if (c.negatives() > 0) {
        check(std::abs((p.nb_model - p.nb_all) - nb_gap_treat_all(cal)) <= tol,
              "NB gap to treat-all calibration form");
        check(routes::observed_below_under_threshold(c) == p.beats_all,
              "calibration route to treat-all");
    }
    if (c.positives() > 0 && c.negatives() > 0) {
        check(std::abs(prevalence_identity_residual(cal, prevalence)) <= tol, "prevalence identity");
    }
    return p;
}

namespace {

std::vector<CurvePoint> points_from(const std::vector<ThresholdTally>& tallies) {
    std::vector<CurvePoint> out;
    out.reserve(tallies.size());
    for (const auto& tally : tallies) out.push_back(make_curve_point(tally));
    return out;
}

} // namespace

std::vector<CurvePoint> decision_curve(const PredictionSet& data, const ThresholdGrid& grid) {
    return points_from(sweep_parallel(data, grid.points()));
}

std::vector<CurvePoint> decision_curve_serial(const PredictionSet& data, const ThresholdGrid& grid) {
    return points_from(sweep_serial(data, grid.points()));
}

Curve ppv_curve(const PredictionSet& data, const ThresholdGrid& grid) {
    return {CurveKind::ppv, decision_curve(data, grid)};
}

RiskDistribution RiskDistribution::parse(const std::string& text) {
    if (text == "uniform") return uniform();
    if (text.rfind("beta:", 0) == 0) {
        const auto colon = text.find(':', 5);
        if (colon == std::string::npos) {
            throw DomainError("risk distribution must be 'uniform' or 'beta:a:b'");
        }
        const std::string_view s(text);
        const double a = parse_double(s.substr(5, colon - 5), "beta a");
        const double b = parse_double(s.substr(colon + 1), "beta b");
        return beta(a, b);
    }
    throw DomainError("risk distribution must be 'uniform' or 'beta:a:b', got '" + text + "'");
}

std::string RiskDistribution::to_string() const {
    if (family == Family::uniform) return "uniform";
    char buf[64];
    auto p = std::to_chars(buf, buf + sizeof buf, a).ptr;
    std::string out = "beta:" + std::string(buf, p) + ":";
    p = std::to_chars(buf, buf + sizeof buf, b).ptr;
    return out + std::string(buf, p);
}

double logit(double p) { return std::log(p / (1.0 - p)); }

double logistic(double x) {
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

SyntheticData generate_synthetic(const SyntheticSpec& spec) {
    if (spec.n < 1) throw DomainError("synthetic data needs n >= 1");
    const auto& dist = spec.risk_distribution;
    if (dist.family == RiskDistribution::Family::beta &&
        !(dist.a > 0.0 && dist.b > 0.0 && std::isfinite(dist.a) && std::isfinite(dist.b))) {
        throw DomainError("beta parameters must be positive and finite");
    }
    if (!std::isfinite(spec.logit_shift)) throw DomainError("logit shift must be finite");

    Engine risk_engine = make_engine(spec.seed, streams::synthetic_risk);
    Engine outcome_engine = make_engine(spec.seed, streams::synthetic_outcome);
    boost::random::beta_distribution<double> beta(dist.a, dist.b);

    std::vector<PredictionRecord> truth(spec.n);
    std::vector<PredictionRecord> reported(spec.n);
    for (std::size_t i = 0; i < spec.n; ++i) {
        double q = dist.family == RiskDistribution::Family::uniform ? uniform01(risk_engine)
                                                                     : beta(risk_engine);
        q = std::clamp(q, synthetic_risk_clamp, 1.0 - synthetic_risk_clamp);
        const int y = uniform01(outcome_engine) < q ? 1 : 0;
        const double p = spec.logit_shift == 0.0 ? q : logistic(logit(q) + spec.logit_shift);
        truth[i] = {q, y};
        reported[i] = {p, y};
    }
    return {PredictionSet(spec.label + "-truth", std::move(truth)),
            PredictionSet(spec.label, std::move(reported))};
}

namespace {

std::vector<ThresholdRegion> regions(const std::vector<MiscalibrationPoint>& points,
                                     bool MiscalibrationPoint::*flag) {
    std::vector<ThresholdRegion> out;
    bool open = false;
    for (const auto& p : points) {
        if (p.*flag) {
            if (!open) out.push_back({p.t, p.t});
            out.back().last = p.t;
            open = true;
        } else {
            open = false;
        }
    }
    return out;
}

} // namespace

MiscalibrationDemo run_miscalibration_demo(const SyntheticSpec& spec, const ThresholdGrid& grid) {
    const auto data = generate_synthetic(spec);
    MiscalibrationDemo demo;
    demo.spec = spec;
    demo.prevalence = data.reported.prevalence();
    for (const auto& p : decision_curve(data.reported, grid)) {
        MiscalibrationPoint m;
        m.t = p.t;
        m.nb = p.nb_model;
        m.nb_all = p.nb_all;
        m.y_above = p.calibration.y_above;
        m.y_below = p.calibration.y_below;
        m.worse_than_none = routes::nb_sign(p.confusion) < 0;
        m.worse_than_all = routes::nb_minus_all_sign(p.confusion) < 0;
        demo.points.push_back(m);
    }
    demo.worse_than_none = regions(demo.points, &MiscalibrationPoint::worse_than_none);
    demo.worse_than_all = regions(demo.points, &MiscalibrationPoint::worse_than_all);
    return demo;
}

} // namespace dcurve
