#include "doctest.h"

#include "dcurve/equivalences.hpp"
#include "dcurve/errors.hpp"
#include "support.hpp"

#include <cmath>
#include <random>

using namespace dcurve;
using namespace dcurve::testing;

TEST_CASE("ppv_from_nb") {
    CHECK(ppv_from_nb(0.1, 5, 10, 0.5) == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(ppv_from_nb(0.0, 3, 10, 0.27) == 0.27);
    CHECK(ppv_from_nb(0.0, 0, 10, 0.27) == 0.0);
    CHECK(ppv_from_nb(-0.3, 0, 10, 0.27) == 0.0);
    CHECK_THROWS_AS(ppv_from_nb(0.1, 11, 10, 0.5), DomainError);
}

TEST_CASE("reference curves") {
    CHECK(treat_none_reference(0.1) == 0.1);
    CHECK(treat_none_reference(0.5) == 0.5);
    CHECK_THROWS_AS(treat_none_reference(1.0), DomainError);

    CHECK(treat_all_reference_ppv(0.4, 0.5, 0.5) == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(treat_all_reference_ppv(0.25, 0.7, 0.25) == 0.25);
    CHECK(treat_all_reference_ppv(0.37, 1.0, 0.2) == doctest::Approx(0.37).epsilon(1e-12));
    // Unclipped: can leave [0, 1].
    CHECK(treat_all_reference_ppv(0.05, 0.01, 0.5) < 0.0);
    CHECK(treat_all_reference_ppv(0.9, 0.1, 0.1) > 1.0);
    CHECK_THROWS_AS(treat_all_reference_ppv(0.4, 0.0, 0.5), UndefinedError);
}

TEST_CASE("verdicts on D0") {
    const auto data = d0();
    SUBCASE("t = 0.5") {
        const auto v = verdict_vs_defaults(data, 0.5);
        CHECK(v.beats_none);
        CHECK(v.beats_all);
        CHECK(v.nb == doctest::Approx(0.1).epsilon(1e-12));
        CHECK(v.nb_all == doctest::Approx(-0.2).epsilon(1e-12));
        CHECK(v.ppv == doctest::Approx(0.6).epsilon(1e-12));
        CHECK(v.ppv_none_ref == 0.5);
        REQUIRE(v.ppv_all_ref);
        CHECK(*v.ppv_all_ref == doctest::Approx(0.3).epsilon(1e-12));
        CHECK(v.s_t == 0.5);
    }
    SUBCASE("t = 0.7") {
        const auto c = classify_at_threshold(data, 0.7);
        CHECK(c.tp == 2);
        CHECK(c.fp == 1);
        const auto v = verdict_vs_defaults(data, 0.7);
        CHECK(std::abs(v.nb - (-1.0 / 30.0)) <= 1e-12);
        CHECK_FALSE(v.beats_none);
        CHECK(v.ppv == doctest::Approx(2.0 / 3.0));
        CHECK(v.ppv < 0.7);
    }
    SUBCASE("nothing selected") {
        const auto v = verdict_vs_defaults(data, 0.95);
        CHECK_FALSE(v.beats_none);
        CHECK_FALSE(v.ppv_all_ref);
        // NB = 0 beats NB_all = (0.4 - 0.95)/0.05 < 0.
        CHECK(v.beats_all);
    }
}

TEST_CASE("perfect predictor beats treat-none whenever an event is selected") {
    std::mt19937_64 rng(3);
    const auto outcomes = random_outcomes(rng, 40);
    std::vector<double> risks;
    for (int y : outcomes) risks.push_back(y == 1 ? 0.999 : 0.001);
    const auto data = make_prediction_set("perfect", risks, outcomes);
    for (int k = 1; k < 100; ++k) {
        const auto v = verdict_vs_defaults(data, k / 100.0);
        CHECK(v.beats_none == (data.n1() > 0));
    }
}

TEST_CASE("boundary equality does not beat") {
    // PPV exactly 0.1 at t = 0.1: tp = 1, fp = 9.
    const ThresholdConfusion c{0.1, 1, 9, 5, 5};
    CHECK(routes::nb_sign(c) == 0);
    CHECK_FALSE(routes::nb_beats_none(c));
    CHECK_FALSE(routes::ppv_beats_none(c));
    const auto v = verdict_from_confusion(c);
    CHECK_FALSE(v.beats_none);

    // PPV exactly 0.3 at t = 0.3 (0.3 is not a binary fraction).
    const ThresholdConfusion d{0.3, 3, 7, 2, 2};
    CHECK_FALSE(verdict_from_confusion(d).beats_none);

    // NB exactly equal to NB_all: every selected... below group has rate exactly t.
    const ThresholdConfusion e{0.2, 3, 3, 4, 1};  // fn / (tn + fn) = 1/5 = t
    CHECK(routes::nb_minus_all_sign(e) == 0);
    CHECK_FALSE(verdict_from_confusion(e).beats_all);
}

TEST_CASE("ppv bounds: examples") {
    SUBCASE("zero NB is a two-point set") {
        const auto b = ppv_bounds_given_nb(0.0, 0.4, 0.3);
        CHECK(b.kind == PpvIntervalKind::zero_nb_two_point);
        CHECK(b.lower == 0.0);
        CHECK(b.upper == 0.3);
        CHECK(b.contains(0.0));
        CHECK(b.contains(0.3));
        CHECK_FALSE(b.contains(0.15));
    }
    SUBCASE("D0 at 0.5 matches enumeration") {
        const auto b = ppv_bounds_given_nb(0.1, 0.4, 0.5);
        CHECK(b.kind == PpvIntervalKind::positive_nb);
        CHECK(b.contains(0.6));
        // tp - fp = 1 with tp <= 4, fp <= 6: (1,0) .. (4,3).
        const auto r = enumerate_ppv(4, 6, 3, 2, 1, 2);
        CHECK(r.min == doctest::Approx(4.0 / 7.0));
        CHECK(r.max == 1.0);
        CHECK(std::abs(b.lower - r.min) <= 1e-9);
        CHECK(b.upper == 1.0);
    }
    SUBCASE("maximal NB forces PPV 1") {
        const auto b = ppv_bounds_given_nb(0.4, 0.4, 0.3);
        CHECK(b.lower == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("negative NB upper bound is the lattice maximum") {
        // I = 0.4, n = 10, t = 0.2: tp - fp/4 = -0.5 admits (0,2) and (1,6).
        const auto r = enumerate_ppv(4, 6, 0, 2, 1, 5);
        CHECK(r.max == doctest::Approx(1.0 / 7.0));
        const auto b = ppv_bounds_given_nb(-0.05, 0.4, 0.2);
        CHECK(b.kind == PpvIntervalKind::negative_nb);
        CHECK(b.lower == 0.0);
        CHECK(std::abs(b.upper - 1.0 / 7.0) <= 1e-9);
    }
    SUBCASE("infeasible NB") {
        CHECK_THROWS_AS(ppv_bounds_given_nb(0.5, 0.4, 0.3), InfeasibleError);
        // Most negative NB at t = 0.5, I = 0.4 is -0.6.
        CHECK_NOTHROW(ppv_bounds_given_nb(-0.6, 0.4, 0.5));
        CHECK_THROWS_AS(ppv_bounds_given_nb(-0.61, 0.4, 0.5), InfeasibleError);
        CHECK_THROWS_AS(ppv_bounds_given_nb(0.01, 0.0, 0.5), InfeasibleError);
    }
}

TEST_CASE("property: route agreement, reconstruction, containment") {
    std::mt19937_64 rng(11);
    int beats_none = 0, beats_all = 0, boundary = 0;
    for (int rep = 0; rep < 400; ++rep) {
        const std::size_t n = 2 + rng() % 80;
        const auto risks = lattice_risks(rng, n);
        const auto outcomes = random_outcomes(rng, n);
        const auto data = make_prediction_set("p", risks, outcomes);
        for (int k = 1; k <= 50; ++k) {
            const double t = k / 100.0;
            const auto c = classify_at_threshold(data, t);
            const auto v = verdict_from_confusion(c);  // throws on route disagreement
            if (c.positives() > 0) {
                REQUIRE(routes::nb_beats_none(c) == routes::ppv_beats_none(c));
                REQUIRE(routes::nb_beats_all(c) == routes::ppv_beats_all(c));
                REQUIRE(std::abs(ppv_from_nb(v.nb, c.positives(), c.n(), t) - v.ppv) <= 1e-12);
            }
            const auto b = ppv_bounds_given_nb(v.nb, data.prevalence(), t);
            REQUIRE(b.lower >= 0.0);
            REQUIRE(b.lower <= b.upper);
            REQUIRE(b.upper <= 1.0);
            REQUIRE(b.contains(v.ppv));
            beats_none += v.beats_none;
            beats_all += v.beats_all;
            boundary += routes::nb_sign(c) == 0 && c.positives() > 0;
        }
    }
    CHECK(beats_none > 0);
    CHECK(beats_all > 0);
    CHECK(boundary > 0);
}

TEST_CASE("property: bounds are sharp on small lattices at t = 0.5") {
    std::mt19937_64 rng(12);
    for (int rep = 0; rep < 300; ++rep) {
        const std::int64_t n1 = rng() % 7, n0 = rng() % 7;
        if (n1 + n0 == 0) continue;
        const std::int64_t tp = rng() % (n1 + 1), fp = rng() % (n0 + 1);
        const ThresholdConfusion c{0.5, tp, fp, n0 - fp, n1 - tp};
        const double prevalence = static_cast<double>(n1) / static_cast<double>(n1 + n0);
        const auto b = ppv_bounds_given_nb(net_benefit(c), prevalence, 0.5);
        const auto r = enumerate_ppv(n1, n0, tp, fp, 1, 2);
        if (b.kind == PpvIntervalKind::zero_nb_two_point) {
            for (auto [a, f] : r.configurations) {
                const double v = a + f > 0 ? static_cast<double>(a) / static_cast<double>(a + f) : 0.0;
                REQUIRE(b.contains(v));
            }
            continue;
        }
        // At t = 0.5 every continuous vertex is a lattice point.
        REQUIRE(std::abs(r.min - b.lower) <= 1e-9);
        REQUIRE(std::abs(r.max - b.upper) <= 1e-9);
    }
}
