#include "doctest.h"

#include "dcurve/core_metrics.hpp"
#include "dcurve/errors.hpp"
#include "support.hpp"

#include <cmath>
#include <random>

using namespace dcurve;
using namespace dcurve::testing;

TEST_CASE("D0 at t = 0.5") {
    const auto data = d0();
    CHECK(data.n() == 10);
    CHECK(data.n1() == 4);
    CHECK(data.n0() == 6);
    CHECK(data.prevalence() == 0.4);

    const auto c = classify_at_threshold(data, 0.5);
    CHECK(c.tp == 3);
    CHECK(c.fp == 2);
    CHECK(c.fn == 1);
    CHECK(c.tn == 4);
    CHECK(c.selection_rate() == 0.5);
    CHECK(net_benefit(c) == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(ppv(c) == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(intervention_utility(c, {1, 0, 1, 0}) == doctest::Approx(0.7).epsilon(1e-12));
}

TEST_CASE("classification conventions") {
    SUBCASE("risk equal to t is positive") {
        const auto data = make_prediction_set("tie", std::vector<double>{0.5}, std::vector<int>{1});
        CHECK(classify_at_threshold(data, 0.5).tp == 1);
    }
    SUBCASE("all risks below t gives an empty positive class") {
        const auto c = classify_at_threshold(d0(), 0.95);
        CHECK(c.tp == 0);
        CHECK(c.fp == 0);
        CHECK(c.selection_rate() == 0.0);
        CHECK(net_benefit(c) == 0.0);
        CHECK(ppv(c) == 0.0);
    }
    SUBCASE("threshold outside (0,1)") {
        CHECK_THROWS_AS(classify_at_threshold(d0(), 0.0), DomainError);
        CHECK_THROWS_AS(classify_at_threshold(d0(), 1.0), DomainError);
        CHECK_THROWS_AS(classify_at_threshold(d0(), 1.5), DomainError);
        CHECK_THROWS_AS(classify_at_threshold(d0(), std::nan("")), DomainError);
    }
}

TEST_CASE("prediction set validation") {
    CHECK_THROWS_AS(PredictionSet("empty", {}), DataError);
    CHECK_THROWS_AS(make_prediction_set("bad", std::vector<double>{0.2, 1.2}, std::vector<int>{0, 1}),
                    DataError);
    CHECK_THROWS_AS(make_prediction_set("bad", std::vector<double>{0.2}, std::vector<int>{2}), DataError);
    CHECK_THROWS_AS(make_prediction_set("bad", std::vector<double>{std::nan("")}, std::vector<int>{1}),
                    DataError);
    CHECK_THROWS_AS(make_prediction_set("bad", std::vector<double>{0.2, 0.3}, std::vector<int>{1}),
                    UsageError);
    try {
        make_prediction_set("bad", std::vector<double>{0.2, 0.3, -0.1}, std::vector<int>{0, 1, 1});
        FAIL("expected DataError");
    } catch (const DataError& e) {
        CHECK(e.row() == 3);
    }
}

TEST_CASE("treat-all and treat-none") {
    CHECK(net_benefit_treat_all(0.4, 0.5) == doctest::Approx(-0.2).epsilon(1e-12));
    CHECK(net_benefit_treat_all(0.3, 0.3) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(std::abs(net_benefit_treat_all(0.3, 0.3)) <= 1e-15);
    CHECK(net_benefit_treat_all(1.0, 0.2) == 1.0);
    CHECK(net_benefit_treat_all(1.0, 0.9) == 1.0);
    CHECK(net_benefit_treat_none() == 0.0);
    CHECK_THROWS_AS(net_benefit_treat_all(1.2, 0.5), DomainError);

    // Treat-all counts through the model formula.
    const auto data = d0();
    ThresholdConfusion all{0.3, static_cast<std::int64_t>(data.n1()), static_cast<std::int64_t>(data.n0()), 0, 0};
    CHECK(net_benefit(all) == doctest::Approx(net_benefit_treat_all(0.4, 0.3)).epsilon(1e-12));
    CHECK(std::abs(net_benefit_treat_all(0.4, 0.3) - (0.4 - 0.3) / (1 - 0.3)) <= 1e-15);
}

TEST_CASE("ppv conventions") {
    CHECK(ppv({0.5, 0, 0, 5, 5}) == 0.0);
    CHECK(ppv({0.5, 4, 0, 3, 3}) == 1.0);
}

TEST_CASE("intervention utility") {
    const auto c = classify_at_threshold(d0(), 0.5);
    CHECK(intervention_utility(c, {1, 1, 1, 1}) == doctest::Approx(1.0));
    CHECK(std::abs(intervention_utility(c, net_benefit_weights(0.5)) - net_benefit(c)) <= 1e-12);
}

TEST_CASE("nb equality gap") {
    const auto c1 = classify_at_threshold(d0(), 0.5);
    CHECK(nb_equality_gap(c1, c1) == 0.0);
    CHECK(nb_equal_exact(c1, c1));

    // At t = 0.5 the weight is 1: equal tp and fp shifts cancel.
    const ThresholdConfusion c2{0.5, c1.tp + 1, c1.fp + 1, c1.tn - 1, c1.fn - 1};
    CHECK(nb_equality_gap(c1, c2) == 0.0);
    CHECK(nb_equal_exact(c1, c2));

    const auto c3 = classify_at_threshold(d0(), 0.4);
    CHECK_THROWS_AS(nb_equality_gap(c1, c3), UsageError);
    const ThresholdConfusion small{0.5, 1, 1, 1, 1};
    CHECK_THROWS_AS(nb_equality_gap(c1, small), UsageError);
}

TEST_CASE("property: counts match the per-record oracle and partition the cohort") {
    std::mt19937_64 rng(101);
    for (int rep = 0; rep < 300; ++rep) {
        const std::size_t n = 1 + rng() % 60;
        const auto risks = lattice_risks(rng, n);
        const auto outcomes = random_outcomes(rng, n);
        const auto data = make_prediction_set("p", risks, outcomes);
        for (int k = 1; k < 100; k += 7) {
            const double t = k / 100.0;
            const auto c = classify_at_threshold(data, t);
            const auto o = oracle_counts(risks, outcomes, t);
            REQUIRE(c.tp == o.tp);
            REQUIRE(c.fp == o.fp);
            REQUIRE(c.tn == o.tn);
            REQUIRE(c.fn == o.fn);
            REQUIRE(c.tp + c.fn == static_cast<std::int64_t>(data.n1()));
            REQUIRE(c.fp + c.tn == static_cast<std::int64_t>(data.n0()));
            REQUIRE(c.n() == static_cast<std::int64_t>(n));
        }
    }
}

TEST_CASE("property: NB monotone in tp and fp") {
    std::mt19937_64 rng(7);
    for (int rep = 0; rep < 500; ++rep) {
        const double t = (1 + rng() % 98) / 100.0;
        const std::int64_t tp = rng() % 20, fp = rng() % 20, tn = 1 + rng() % 20, fn = 1 + rng() % 20;
        const ThresholdConfusion base{t, tp, fp, tn, fn};
        const ThresholdConfusion more_tp{t, tp + 1, fp, tn, fn - 1};
        const ThresholdConfusion more_fp{t, tp, fp + 1, tn - 1, fn};
        REQUIRE(net_benefit(more_tp) > net_benefit(base));
        REQUIRE(net_benefit(more_fp) < net_benefit(base));
    }
}

TEST_CASE("property: utility weights reproduce NB and the gap detects equality") {
    std::mt19937_64 rng(8);
    int equal_pairs = 0;
    for (int rep = 0; rep < 5000; ++rep) {
        const std::int64_t denominators[] = {2, 4, 5, 10, 20};
        const std::int64_t den = denominators[rng() % 5];
        const double t = static_cast<double>(1 + rng() % (den - 1)) / static_cast<double>(den);
        const std::int64_t n1 = 1 + rng() % 8, n0 = 1 + rng() % 8;
        const std::int64_t tp1 = rng() % (n1 + 1), fp1 = rng() % (n0 + 1);
        const std::int64_t tp2 = rng() % (n1 + 1), fp2 = rng() % (n0 + 1);
        const ThresholdConfusion c1{t, tp1, fp1, n0 - fp1, n1 - tp1};
        const ThresholdConfusion c2{t, tp2, fp2, n0 - fp2, n1 - tp2};

        REQUIRE(std::abs(intervention_utility(c1, net_benefit_weights(t)) - net_benefit(c1)) <= 1e-12);
        REQUIRE(std::abs(nb_equality_gap(c1, c2) - (net_benefit(c1) - net_benefit(c2))) <= 1e-12);

        const bool gap_zero = std::abs(nb_equality_gap(c1, c2)) <= 1e-12;
        const bool nb_equal = std::abs(net_benefit(c1) - net_benefit(c2)) <= 1e-12;
        REQUIRE(gap_zero == nb_equal);
        REQUIRE(nb_equal_exact(c1, c2) == nb_equal);
        equal_pairs += nb_equal;
    }
    CHECK(equal_pairs > 100);
}
