#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "duhem/signal.hpp"

using namespace duhem;

TEST_SUITE("signal") {

TEST_CASE("piecewise-linear evaluation") {
    const InputSignal s({{0.0, 0.0}, {1.0, 2.0}, {3.0, -2.0}});
    CHECK(s.value(0.5) == doctest::Approx(1.0));
    CHECK(s.value(2.0) == doctest::Approx(0.0));
    CHECK(s.value(3.0) == doctest::Approx(-2.0));
    CHECK(s.segment_rate(0) == doctest::Approx(2.0));
    CHECK(s.segment_rate(1) == doctest::Approx(-2.0));
    CHECK(s.total_variation() == doctest::Approx(6.0));
    CHECK_THROWS_AS(s.value(3.5), std::out_of_range);
    CHECK_THROWS_AS(s.value(-0.1), std::out_of_range);
}

TEST_CASE("breakpoint validation") {
    CHECK_THROWS_AS(InputSignal(std::vector<Breakpoint>{}), std::invalid_argument);
    CHECK(InputSignal({{0.0, 0.4}}).segment_count() == 0u);
    CHECK_THROWS_AS(InputSignal({{0.1, 0.0}, {1.0, 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(InputSignal({{0.0, 0.0}, {1.0, 1.0}, {1.0, 2.0}}), std::invalid_argument);
    CHECK_THROWS_AS(InputSignal({{0.0, 0.0}, {1.0, NAN}}), std::invalid_argument);
}

TEST_CASE("generators") {
    const InputSignal tri = signals::triangle(2.0, 4.0, 2);
    CHECK(tri.value(1.0) == doctest::Approx(2.0));
    CHECK(tri.value(3.0) == doctest::Approx(-2.0));
    CHECK(tri.value(8.0) == doctest::Approx(0.0));
    CHECK(tri.total_variation() == doctest::Approx(16.0));

    const InputSignal sine = signals::sine_sampled(1.5, 2.0, 3, 64, 0.5);
    for (double t : {0.0, 0.5, 1.25, 5.0}) CHECK(sine.value(t) == doctest::Approx(0.5 + 1.5 * std::sin(M_PI * t)).epsilon(1e-12));
    CHECK(sine.segment_count() == 3u * 64u);

    const InputSignal held = signals::hold_until(signals::ramp(0.0, 1.0, 1.0), 5.0);
    CHECK(held.end_time() == 5.0);
    CHECK(held.value(4.0) == 1.0);
}

TEST_CASE("random signals are seeded and respect their speed bounds") {
    signals::RandomSignalOptions opt;
    Rng a(7), b(7);
    for (int k = 0; k < 50; ++k) {
        const InputSignal x = signals::random_piecewise_linear(a, 0.3, opt);
        const InputSignal y = signals::random_piecewise_linear(b, 0.3, opt);
        REQUIRE(x.breakpoints().size() == y.breakpoints().size());
        for (std::size_t i = 0; i < x.breakpoints().size(); ++i) CHECK(x.breakpoints()[i] == y.breakpoints()[i]);
        CHECK(x.value(0.0) == 0.3);
        CHECK(x.breakpoints().size() >= 3u);
        CHECK(x.breakpoints().size() <= 10u);
        for (std::size_t i = 0; i < x.segment_count(); ++i) {
            CHECK(std::abs(x.segment_rate(i)) <= opt.max_speed * (1 + 1e-12));
            CHECK(std::abs(x.breakpoints()[i + 1].u - 0.3) <= opt.radius + 1e-12);
        }
    }
    Rng r(1);
    for (int k = 0; k < 1000; ++k) {
        const double v = r.uniform();
        CHECK((v >= 0.0 && v < 1.0));
        const int i = r.uniform_int(-2, 2);
        CHECK((i >= -2 && i <= 2));
    }
}

TEST_CASE("rate reparameterization keeps the path") {
    const InputSignal base({{0.0, 0.0}, {1.0, 1.0}, {2.0, -1.0}});
    const InputSignal warp({{0.0, 0.0}, {0.5, 3.0}, {2.0, 4.0}});
    const InputSignal w = rate_reparameterize(base, warp);
    // w(phi(t)) = base(t)
    for (double t : {0.0, 0.25, 0.5, 1.0, 1.7, 2.0}) CHECK(w.value(warp.value(t)) == doctest::Approx(base.value(t)));
    CHECK(w.total_variation() == doctest::Approx(base.total_variation()));

    CHECK_THROWS_AS(rate_reparameterize(base, InputSignal({{0.0, 0.0}, {2.0, 1.0}, {3.0, 0.5}})),
                    std::invalid_argument);
    CHECK_THROWS_AS(rate_reparameterize(base, InputSignal({{0.0, 0.0}, {1.0, 1.0}})), std::invalid_argument);
}

}
