#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "duhem/curves.hpp"
#include "duhem/signal.hpp"
#include "oracles.hpp"

using namespace duhem;

TEST_SUITE("curves") {

TEST_CASE("implicit anhysteresis of exp_example is xi / 1.2") {
    const DuhemModel m = make_exp_example();
    CHECK(anhysteresis(m, 1.2) == doctest::Approx(1.0).epsilon(1e-10));
    for (double xi : {-4.0, -0.3, 0.0, 2.5, 4.0}) {
        CHECK(anhysteresis(m, xi) == doctest::Approx(xi / 1.2).epsilon(1e-9));
        CHECK(anhysteresis(m, xi, xi / 1.2 + 0.01) == doctest::Approx(xi / 1.2).epsilon(1e-9));
    }
    CHECK(anhysteresis_slope(m, 0.7) == doctest::Approx(1.0 / 1.2).epsilon(1e-7));
}

TEST_CASE("declared and missing anhysteresis curves") {
    CHECK(anhysteresis(make_dahl(1.5, 0.75), 3.0) == 0.0);
    CHECK(anhysteresis_slope(make_bouc_wen(1, 1, 1, 3), 3.0) == 0.0);
    const DuhemModel no_root("no_root", [](double, double) { return 2.0; }, [](double, double) { return 1.0; },
                             Domain{}, std::nullopt, {});
    CHECK_THROWS_AS(anhysteresis(no_root, 0.0), CurveError);
}

TEST_CASE("numeric traversing curve matches the dahl exponentials") {
    const double rho = 1.5, fc = 0.75;
    const DuhemModel m = make_dahl(rho, fc);
    for (auto [y, u] : {std::pair{0.3, 0.2}, std::pair{-0.6, -1.0}, std::pair{0.0, 2.0}}) {
        const TraversingCurve w = traversing_curve(m, {y, u}, u - 3.0, u + 3.0);
        CHECK_FALSE(w.truncated());
        CHECK(w.tau_min() == doctest::Approx(u - 3.0));
        CHECK(w.tau_max() == doctest::Approx(u + 3.0));
        CHECK(w(u) == y);
        for (double d = -3.0; d <= 3.0; d += 0.37) {
            const double expect = oracle::dahl_omega(u + d, y, u, rho, fc);
            CHECK(w(u + d) == doctest::Approx(expect).epsilon(1e-9));
        }
        CHECK_THROWS_AS(w(u + 3.5), std::out_of_range);
    }
}

TEST_CASE("a branch that leaves the domain is truncated") {
    const DuhemModel m("steep", [](double, double) { return 2.0; }, [](double, double) { return 2.0; },
                       Domain{-1.0, 1.0}, std::nullopt, {});
    const TraversingCurve w = traversing_curve(m, {0.0, 0.0}, -2.0, 2.0);
    CHECK(w.truncated());
    CHECK(w.tau_max() < 0.51);
    CHECK(w.tau_min() > -0.51);
    CHECK_FALSE(w.right().exit_note().empty());
}

TEST_CASE("dahl intersection matches the logarithmic closed form") {
    const DuhemModel m = make_dahl(1.5, 0.75);
    for (double y : {-0.6, -0.1, 0.05, 0.5, 0.7}) {
        const Intersection hit = find_intersection(m, {y, 0.4});
        CHECK(hit.lambda == doctest::Approx(oracle::dahl_lambda(y, 0.4, 1.5, 0.75)).epsilon(1e-9));
        CHECK(hit.branch.direction() == (y >= 0.0 ? -1 : 1));
    }
    CHECK(intersect_lambda(m, {0.0, 1.25}) == doctest::Approx(1.25));
    CHECK_THROWS_AS(intersect_lambda(m, {0.8, 0.0}), std::invalid_argument);
}

TEST_CASE("exp_example intersection lies on the correct side") {
    const DuhemModel m = make_exp_example();
    Rng rng(5);
    for (int k = 0; k < 40; ++k) {
        const double u = rng.uniform(-3.0, 3.0);
        const double y = rng.uniform(-2.5, 2.5);
        const double lambda = intersect_lambda(m, {y, u});
        if (y > u / 1.2) CHECK(lambda < u);
        if (y < u / 1.2) CHECK(lambda > u);
        // omega meets the anhysteresis curve at lambda.
        const TraversingCurve w = traversing_curve(m, {y, u}, std::min(u, lambda) - 0.1, std::max(u, lambda) + 0.1);
        CHECK(w(lambda) == doctest::Approx(lambda / 1.2).epsilon(1e-6));
    }
}

TEST_CASE("no crossing is reported as CurveError") {
    // omega runs parallel to the anhysteresis line one unit below it.
    const DuhemModel m("parallel", [](double, double) { return 1.0; }, [](double, double) { return 1.0; }, Domain{},
                       CurveFunction([](double xi) { return xi + 1.0; }), {});
    CurveOptions o;
    o.max_doublings = 6;
    CHECK_THROWS_AS(intersect_lambda(m, {0.0, 0.0}, o), CurveError);
}

TEST_CASE("intersection hypotheses on bounded regions") {
    const DuhemModel exp_model = make_exp_example();
    const VerificationReport inner = check_lemma1(exp_model, {-4.0, 4.0, -4.0, 4.0}, 1e-3, 81);
    CHECK(inner.passed);
    CHECK(inner.samples_checked > 0u);

    const VerificationReport dahl = check_lemma1(make_dahl(1.5, 0.75), {-0.7, 0.7, -5.0, 5.0}, 1e-3, 41);
    CHECK(dahl.passed);
    CHECK(std::find(dahl.notes.begin(), dahl.notes.end(), "constant-f_an mode") != dahl.notes.end());

    // f1 and f2 on the outer corners of [-5, 5]^2 sit within 1e-3 of the
    // anhysteresis slope: e^{-5.5} + 0.83 - 1/1.2 - 1e-3 < 0.
    const VerificationReport outer = check_lemma1(exp_model, {-5.0, 5.0, -5.0, 5.0}, 1e-3, 81);
    CHECK_FALSE(outer.passed);
    CHECK(outer.worst_violation == doctest::Approx(1.0 / 1.2 + 1e-3 - 0.83 - std::exp(-5.5)).epsilon(1e-4));
    REQUIRE(outer.worst_location.sigma.has_value());
    CHECK(std::abs(*outer.worst_location.sigma) == doctest::Approx(5.0));
}

}
