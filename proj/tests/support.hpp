#pragma once

// Shared fixtures, generators and brute-force oracles for the test suites.
// Nothing here calls into the code under test except to build inputs.

#include "dcurve/core_metrics.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace dcurve::testing {

// D0: n = 10, n1 = 4.
inline const std::vector<double> d0_risks = {0.9, 0.8, 0.7, 0.6, 0.55, 0.4, 0.3, 0.2, 0.1, 0.05};
inline const std::vector<int> d0_outcomes = {1, 1, 0, 1, 0, 1, 0, 0, 0, 0};

inline PredictionSet d0() { return make_prediction_set("d0", d0_risks, d0_outcomes); }

// D0 with the risks of the event at 0.6 and the non-event at 0.3 swapped
// (0-based records 3 and 6).
inline PredictionSet d0_degraded() {
    auto risks = d0_risks;
    std::swap(risks[3], risks[6]);
    return make_prediction_set("d0-degraded", risks, d0_outcomes);
}

inline std::string data_path(const std::string& file) {
    return std::string(DCURVE_TEST_DATA_DIR) + "/" + file;
}

inline double unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Risks uniform on [0,1), outcomes Bernoulli(base) with the base rate itself uniform.
inline PredictionSet random_set(std::mt19937_64& rng, std::size_t n, const std::string& name = "rand") {
    const double base = unit(rng);
    std::vector<double> risks(n);
    std::vector<int> outcomes(n);
    for (std::size_t i = 0; i < n; ++i) {
        risks[i] = unit(rng);
        outcomes[i] = unit(rng) < base ? 1 : 0;
    }
    return make_prediction_set(name, risks, outcomes);
}

// Risks on a coarse two-decimal lattice so ties with grid thresholds occur.
inline std::vector<double> lattice_risks(std::mt19937_64& rng, std::size_t n) {
    std::vector<double> risks(n);
    for (auto& r : risks) r = static_cast<double>(rng() % 101) / 100.0;
    return risks;
}

inline std::vector<int> random_outcomes(std::mt19937_64& rng, std::size_t n) {
    const double base = unit(rng);
    std::vector<int> y(n);
    for (auto& v : y) v = unit(rng) < base ? 1 : 0;
    return y;
}

struct Counts {
    std::int64_t tp = 0, fp = 0, tn = 0, fn = 0;
};

// Per-record classification loop.
inline Counts oracle_counts(const std::vector<double>& risks, const std::vector<int>& outcomes, double t) {
    Counts c;
    for (std::size_t i = 0; i < risks.size(); ++i) {
        const bool positive = !(risks[i] < t);
        if (positive && outcomes[i] == 1) c.tp++;
        if (positive && outcomes[i] == 0) c.fp++;
        if (!positive && outcomes[i] == 1) c.fn++;
        if (!positive && outcomes[i] == 0) c.tn++;
    }
    return c;
}

struct PpvRange {
    double min = 1.0;
    double max = 0.0;
    std::vector<std::pair<std::int64_t, std::int64_t>> configurations;
};

// All (tp', fp') in [0, n1] x [0, n0] whose NB equals that of (tp, fp) at
// t = num/den, compared exactly: tp'(den - num) - fp' num = tp(den - num) - fp num.
inline PpvRange enumerate_ppv(std::int64_t n1, std::int64_t n0, std::int64_t tp, std::int64_t fp,
                              std::int64_t num, std::int64_t den) {
    PpvRange r;
    const std::int64_t target = tp * (den - num) - fp * num;
    for (std::int64_t a = 0; a <= n1; ++a) {
        for (std::int64_t b = 0; b <= n0; ++b) {
            if (a * (den - num) - b * num != target) continue;
            const double v = a + b > 0 ? static_cast<double>(a) / static_cast<double>(a + b) : 0.0;
            r.min = std::min(r.min, v);
            r.max = std::max(r.max, v);
            r.configurations.emplace_back(a, b);
        }
    }
    return r;
}

} // namespace dcurve::testing
