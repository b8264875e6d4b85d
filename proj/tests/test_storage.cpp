#include <doctest.h>

#include <cmath>

#include "duhem/storage.hpp"
#include "oracles.hpp"

using namespace duhem;

TEST_SUITE("storage") {

TEST_CASE("dahl storage matches the closed form and ignores the input value") {
    const DuhemModel m = make_dahl(1.5, 0.75);
    for (double y : {-0.7, -0.3, 0.0, 0.2, 0.375, 0.674}) {
        const double expect = oracle::dahl_storage(y, 1.5, 0.75);
        for (double u : {-2.0, 0.0, 3.3}) {
            const StorageEvaluation e = storage_cw(m, {y, u});
            CHECK(e.value == doctest::Approx(expect).epsilon(1e-9));
            CHECK(e.anhysteresis_integral == 0.0);
            CHECK(e.lambda_star == doctest::Approx(oracle::dahl_lambda(y, u, 1.5, 0.75)).epsilon(1e-9));
        }
        CHECK(storage_dahl_closed_form(y, 1.5, 0.75) == doctest::Approx(expect).epsilon(1e-12));
    }
    CHECK(storage_dahl_closed_form(0.375, 1.5, 0.75) == doctest::Approx(0.0354506).epsilon(1e-6));
}

TEST_CASE("library closed forms agree with the reference formulas") {
    for (double y : {-0.5, 0.1, 0.6}) {
        CHECK(lambda_dahl_closed_form(y, 0.3, 2.0, 0.9) == doctest::Approx(oracle::dahl_lambda(y, 0.3, 2.0, 0.9)));
        for (double tau : {-1.0, 0.3, 2.0})
            CHECK(omega_dahl_closed_form(tau, y, 0.3, 2.0, 0.9) ==
                  doctest::Approx(oracle::dahl_omega(tau, y, 0.3, 2.0, 0.9)));
    }
    CHECK_THROWS_AS(storage_dahl_closed_form(0.75, 1.5, 0.75), std::domain_error);
    CHECK_THROWS_AS(lambda_dahl_closed_form(-0.8, 0.0, 1.5, 0.75), std::domain_error);
}

TEST_CASE("bouc-wen storage is half the squared output") {
    const DuhemModel m = make_bouc_wen(1, 1, 1, 3);
    for (double y : {-1.5, -0.4, 0.0, 0.3, 0.79, 2.0})
        CHECK(storage_cw(m, {y, 0.7}).value == doctest::Approx(oracle::bouc_wen_storage(y)).epsilon(1e-8));
}

TEST_CASE("exp_example storage on the anhysteresis curve is the area under it") {
    const DuhemModel m = make_exp_example();
    for (double xi : {-3.0, 0.5, 2.4}) {
        const StorageEvaluation e = storage_cw(m, {xi / 1.2, xi});
        CHECK(e.lambda_star == doctest::Approx(xi).epsilon(1e-8));
        CHECK(e.traverse_integral == doctest::Approx(0.0).epsilon(1e-8));
        CHECK(e.value == doctest::Approx(xi * xi / 2.4).epsilon(1e-7));
    }
}

TEST_CASE("storage is nonnegative and vanishes only at the origin for zero-f_an models") {
    const DuhemModel dahl = make_dahl(1.5, 0.75);
    const DuhemModel bw = make_bouc_wen(1, 1, 1, 3);
    Rng rng(11);
    for (int k = 0; k < 30; ++k) {
        const double u = rng.uniform(-4, 4);
        CHECK(storage_cw(dahl, {rng.uniform(-0.7, 0.7), u}).value >= 0.0);
        CHECK(storage_cw(bw, {rng.uniform(-2, 2), u}).value >= 0.0);
    }
    CHECK(storage_cw(dahl, {0.0, 1.0}).value == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("brute-force available storage approaches the storage from below") {
    const DuhemModel m = make_dahl(1.5, 0.75);
    for (double y : {-0.5, 0.3, 0.6}) {
        const PhasePoint p{y, 0.2};
        const InputFamily fam = available_storage_family(m, p, 10.0, 10, 3);
        CHECK(fam.signals.size() == 11u);
        const double sa = available_storage_bruteforce(m, p, fam, 10.0);
        const double h = oracle::dahl_storage(y, 1.5, 0.75);
        CHECK(sa <= h * (1.0 + 1e-6) + 1e-9);
        CHECK(sa >= 0.98 * h);
    }
}

TEST_CASE("brute-force available storage rejects unsupported inputs") {
    const DuhemModel m = make_dahl(1.5, 0.75);
    CHECK_THROWS_AS(available_storage_bruteforce(m, {0.1, 0.0}, InputFamily{}, 1.0), std::invalid_argument);
    InputFamily wrong_start{{signals::ramp(1.0, 0.0, 1.0)}};
    CHECK_THROWS_AS(available_storage_bruteforce(m, {0.1, 0.0}, wrong_start, 1.0), std::invalid_argument);
    const DuhemModel e = make_exp_example();
    InputFamily fam{{signals::ramp(0.0, 1.0, 1.0)}};
    CHECK_THROWS_AS(available_storage_bruteforce(e, {0.1, 0.0}, fam, 1.0), std::invalid_argument);
}

}
