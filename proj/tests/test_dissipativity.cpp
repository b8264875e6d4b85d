#include <doctest.h>

#include <cmath>

#include "duhem/dissipativity.hpp"
#include "oracles.hpp"

using namespace duhem;

namespace {

// Bouc-Wen with the two rate functions exchanged: loops turn the other way.
DuhemModel swapped_bouc_wen() {
    const DuhemModel bw = make_bouc_wen(1, 1, 1, 3);
    return DuhemModel(
        "swapped", [bw](double s, double x) { return bw.f2(s, x); }, [bw](double s, double x) { return bw.f1(s, x); },
        Domain{}, CurveFunction([](double) { return 0.0; }), {});
}

DuhemModel unit_slope() {
    return DuhemModel("line", [](double, double) { return 1.0; }, [](double, double) { return 1.0; }, Domain{},
                      CurveFunction([](double xi) { return xi; }), {});
}

}  // namespace

TEST_SUITE("dissipativity") {

TEST_CASE("storage decreases no faster than the supply on a triangle input") {
    const InputSignal tri = signals::triangle(1.5, 4.0, 2);
    for (const DuhemModel& m : {make_dahl(1.5, 0.75), make_bouc_wen(1, 1, 1, 3), make_exp_example()}) {
        CAPTURE(m.id());
        const DissipationResult fwd = verify_dissipation(m, tri, 0.1);
        CHECK(fwd.report.passed);
        CHECK(fwd.report.tolerance == doctest::Approx(1e-6 + 10 * 1e-3));
        CHECK(fwd.storage.size() == fwd.trajectory.samples.size());
        DissipationOptions o;
        o.difference = Difference::backward;
        CHECK(verify_dissipation(m, tri, 0.1, o).report.passed);
    }
}

TEST_CASE("bouc-wen storage along a trajectory tracks y^2 / 2") {
    const DissipationResult r = verify_dissipation(make_bouc_wen(1, 1, 1, 3), signals::triangle(1.0, 2.0, 1), -0.3);
    for (std::size_t i = 0; i < r.storage.size(); i += 97)
        CHECK(r.storage[i] == doctest::Approx(oracle::bouc_wen_storage(r.trajectory.samples[i].y)).epsilon(1e-6));
}

TEST_CASE("an anticlockwise operator violates the dissipation inequality") {
    const DissipationResult r = verify_dissipation(swapped_bouc_wen(), signals::triangle(0.5, 4.0, 2), 0.0);
    CHECK_FALSE(r.report.passed);
    CHECK(r.report.worst_violation > r.report.tolerance);
    CHECK(r.report.worst_location.t.has_value());
}

TEST_CASE("supply integral of a unit-slope operator") {
    const InputSignal in({{0.0, 0.0}, {1.0, 2.0}, {2.0, -1.0}});
    const Trajectory tr = simulate(unit_slope(), in, 0.0, 1e-3);
    const SupplySeries s = cw_supply_integral(tr);
    REQUIRE(s.integral.size() == tr.samples.size());
    CHECK(s.integral[tr.breakpoint_index[1]] == doctest::Approx(2.0));
    CHECK(s.integral.back() == doctest::Approx(0.5));
    CHECK(s.minimum == doctest::Approx(0.0));
    for (std::size_t i = 1; i < s.running_minimum.size(); ++i)
        CHECK(s.running_minimum[i] <= s.running_minimum[i - 1]);
    Trajectory one;
    one.samples.push_back({0.0, 0.0, 0.0});
    CHECK_THROWS_AS(cw_supply_integral(one), std::invalid_argument);
}

TEST_CASE("per-cycle supply settles on a periodic input") {
    const Trajectory tr = simulate(make_dahl(1.5, 0.75), signals::triangle(2.0, 4.0, 6), 0.0, 1e-3);
    std::vector<double> bounds;
    for (int k = 0; k <= 6; ++k) bounds.push_back(4.0 * k);
    const std::vector<double> inc = per_cycle_supply(tr, bounds);
    REQUIRE(inc.size() == 6u);
    for (double v : inc) CHECK(v > 0.0);
    CHECK(std::abs(inc[5] - inc[4]) < 1e-6);
}

TEST_CASE("loop orientation") {
    const InputSignal tri = signals::triangle(2.0, 4.0, 3);
    const LoopResult cw = loop_orientation(simulate(make_dahl(1.5, 0.75), tri, 0.0, 1e-3));
    CHECK(cw.orientation == Orientation::clockwise);
    CHECK(cw.signed_area > 0.0);
    CHECK(cw.last_sample > cw.first_sample);

    const LoopResult ccw = loop_orientation(simulate(swapped_bouc_wen(), signals::triangle(0.5, 4.0, 3), 0.0, 1e-3));
    CHECK(ccw.orientation == Orientation::counterclockwise);
    CHECK(ccw.signed_area < 0.0);

    const InputSignal frozen({{0.0, 1.0}, {5.0, 1.0}});
    CHECK(loop_orientation(simulate(make_dahl(1.5, 0.75), frozen, 0.0, 1e-3)).orientation ==
          Orientation::degenerate);
    CHECK_THROWS_AS(loop_orientation(simulate(make_dahl(1.5, 0.75), signals::ramp(0, 1, 1), 0.0, 1e-3)),
                    std::invalid_argument);
    CHECK(std::string(to_string(Orientation::clockwise)) == "clockwise");
}

TEST_CASE("assumption A") {
    CHECK(check_assumption_A(make_dahl(1.5, 0.75), default_region(make_dahl(1.5, 0.75)), 41).passed);
    const DuhemModel bw = make_bouc_wen(1, 1, 1, 3);
    CHECK(check_assumption_A(bw, default_region(bw), 41).passed);
    const DuhemModel ex = make_exp_example();
    CHECK(check_assumption_A(ex, default_region(ex), 41).passed);
    const VerificationReport bad = check_assumption_A(swapped_bouc_wen(), {-1, 1, -1, 1}, 41);
    CHECK_FALSE(bad.passed);
}

TEST_CASE("default regions") {
    const Rectangle d = default_region(make_dahl(1.5, 0.75));
    CHECK(d.sigma_hi == doctest::Approx(0.675));
    CHECK(d.xi_lo == -5.0);
    const Rectangle b = default_region(make_bouc_wen(1, 1, 1, 3));
    CHECK(b.sigma_hi == doctest::Approx(0.9 * std::cbrt(0.5)));
    const Rectangle e = default_region(make_exp_example());
    CHECK(e.sigma_lo == -4.0);
    CHECK(e.xi_hi == 4.0);
}

TEST_CASE("battery on a dahl triangle") {
    const DuhemModel m = make_dahl(1.5, 0.75);
    BatteryOptions o;
    o.region = default_region(m);
    o.grid_resolution = 41;
    o.random_inputs = 3;
    for (int k = 0; k <= 5; ++k) o.cycle_boundaries.push_back(4.0 * k);
    const BatteryResult r = run_battery(m, signals::triangle(1.5, 4.0, 5), 0.0, o);
    CHECK(r.passed());
    CHECK(r.reports.size() == 9u);
    for (const auto& rep : r.reports) {
        CAPTURE(rep.name);
        CHECK(rep.passed);
    }
    CHECK_FALSE(r.trajectory.samples.empty());
}

}
