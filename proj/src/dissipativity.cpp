#include "duhem/dissipativity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace duhem {

VerificationReport check_assumption_A(const DuhemModel& model, const Rectangle& region, std::size_t resolution) {
    constexpr double kExclusion = 1e-6;
    constexpr double kStrict = 1e-12;
    const Grid grid = Grid::uniform(region.sigma_lo, region.sigma_hi, resolution, region.xi_lo, region.xi_hi,
                                    resolution);
    for (double s : grid.sigma)
        if (!model.domain().contains(s)) throw std::invalid_argument("assumption A check: region outside domain");

    VerificationReport report;
    report.name = "assumption_A";
    report.tolerance = 0.0;
    std::optional<double> hint;
    for (double xi : grid.xi) {
        const double fan = anhysteresis(model, xi, hint);
        hint = fan;
        for (double sigma : grid.sigma) {
            const double d = sigma - fan;
            if (std::abs(d) <= kExclusion) continue;
            const double F = model.F(sigma, xi);
            const double violation = d < 0.0 ? -F : F + kStrict;
            report.record(violation, Location{std::nullopt, sigma, xi});
        }
    }
    if (report.samples_checked == 0) {
        report.worst_violation = -std::numeric_limits<double>::infinity();
        report.notes.push_back("vacuous: region lies inside the exclusion band");
    }
    report.finalize();
    return report;
}

DissipationResult verify_dissipation(const DuhemModel& model, const InputSignal& input, double y0,
                                     const DissipationOptions& options) {
    DissipationResult result;
    result.trajectory = simulate(model, input, y0, options.step);
    const auto& samples = result.trajectory.samples;

    result.storage.reserve(samples.size());
    for (const auto& s : samples) result.storage.push_back(storage_cw(model, {s.y, s.u}, options.storage).value);

    VerificationReport& report = result.report;
    report.name = options.difference == Difference::forward ? "dissipation_forward" : "dissipation_backward";
    report.tolerance = options.tol >= 0.0 ? options.tol : 1e-6 + 10.0 * options.step;
    for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
        const auto& a = samples[i];
        const auto& b = samples[i + 1];
        const double dt = b.t - a.t;
        const double rate = (result.storage[i + 1] - result.storage[i]) / dt;
        const double input_rate = (b.u - a.u) / dt;
        const Sample& at = options.difference == Difference::forward ? a : b;
        report.record(rate - at.y * input_rate, Location{at.t, at.y, at.u});
    }
    if (report.samples_checked == 0) report.worst_violation = 0.0;
    report.finalize();
    return result;
}

SupplySeries cw_supply_integral(const Trajectory& trajectory) {
    const auto& s = trajectory.samples;
    if (s.size() < 2) throw std::invalid_argument("supply integral needs at least two samples");
    SupplySeries out;
    out.integral.reserve(s.size());
    out.running_minimum.reserve(s.size());
    double acc = 0.0;
    double low = 0.0;
    out.integral.push_back(0.0);
    out.running_minimum.push_back(0.0);
    for (std::size_t i = 1; i < s.size(); ++i) {
        acc += 0.5 * (s[i - 1].y + s[i].y) * (s[i].u - s[i - 1].u);
        low = std::min(low, acc);
        out.integral.push_back(acc);
        out.running_minimum.push_back(low);
    }
    out.minimum = low;
    return out;
}

namespace {

std::size_t sample_at_time(const Trajectory& trajectory, double t) {
    const auto& s = trajectory.samples;
    auto it = std::lower_bound(s.begin(), s.end(), t, [](const Sample& a, double v) { return a.t < v; });
    std::size_t best = s.size();
    double best_gap = std::numeric_limits<double>::infinity();
    for (auto cand : {it, it == s.begin() ? it : it - 1}) {
        if (cand == s.end()) continue;
        const double gap = std::abs(cand->t - t);
        if (gap < best_gap) {
            best_gap = gap;
            best = static_cast<std::size_t>(cand - s.begin());
        }
    }
    if (best == s.size() || best_gap > 1e-9 * (1.0 + std::abs(t)))
        throw std::invalid_argument("no trajectory sample at the requested cycle boundary");
    return best;
}

}  // namespace

std::vector<double> per_cycle_supply(const Trajectory& trajectory, const std::vector<double>& boundaries) {
    const SupplySeries supply = cw_supply_integral(trajectory);
    std::vector<double> increments;
    for (std::size_t k = 1; k < boundaries.size(); ++k) {
        const std::size_t a = sample_at_time(trajectory, boundaries[k - 1]);
        const std::size_t b = sample_at_time(trajectory, boundaries[k]);
        increments.push_back(supply.integral[b] - supply.integral[a]);
    }
    return increments;
}

const char* to_string(Orientation o) {
    switch (o) {
        case Orientation::clockwise: return "clockwise";
        case Orientation::counterclockwise: return "counterclockwise";
        case Orientation::degenerate: return "degenerate";
    }
    return "unknown";
}

LoopResult loop_orientation(const Trajectory& trajectory) {
    const auto& s = trajectory.samples;
    if (s.size() < 2) throw std::invalid_argument("loop orientation: no closed input cycle");
    const std::size_t e = s.size() - 1;
    const double target = s[e].u;

    const bool frozen = std::all_of(s.begin(), s.end(), [&](const Sample& x) { return x.u == s[0].u; });
    if (frozen) return {Orientation::degenerate, 0.0, 0, e};

    auto direction = [&](std::size_t k) {
        const double du = s[k + 1].u - s[k].u;
        return du > 0.0 ? 1 : (du < 0.0 ? -1 : 0);
    };

    int turns = 0;
    int later_direction = 0;  // direction of the nearest moving segment after k
    for (std::size_t k = e; k-- > 0;) {
        const int d = direction(k);
        if (d == 0) continue;
        if (later_direction != 0 && d != later_direction) ++turns;
        later_direction = d;
        if (turns < 2) continue;
        const double lo = std::min(s[k].u, s[k + 1].u);
        const double hi = std::max(s[k].u, s[k + 1].u);
        if (target < lo || target > hi) continue;

        const double w = (target - s[k].u) / (s[k + 1].u - s[k].u);
        const double y_cross = s[k].y + w * (s[k + 1].y - s[k].y);
        double area = 0.5 * (y_cross + s[k + 1].y) * (s[k + 1].u - target);
        for (std::size_t i = k + 1; i < e; ++i) area += 0.5 * (s[i].y + s[i + 1].y) * (s[i + 1].u - s[i].u);

        LoopResult result;
        result.signed_area = area;
        result.first_sample = k;
        result.last_sample = e;
        if (std::abs(area) < 1e-9) result.orientation = Orientation::degenerate;
        else result.orientation = area > 0.0 ? Orientation::clockwise : Orientation::counterclockwise;
        return result;
    }
    throw std::invalid_argument("loop orientation: no closed input cycle");
}

}  // namespace duhem

namespace duhem {

bool BatteryResult::passed() const {
    return std::all_of(reports.begin(), reports.end(), [](const VerificationReport& r) { return r.passed; });
}

Rectangle default_region(const DuhemModel& model) {
    const std::string& id = model.id();
    if (id == "dahl") {
        const double fc = model.param("Fc");
        return {-0.9 * fc, 0.9 * fc, -5.0, 5.0};
    }
    if (id == "boucwen") {
        const double level = std::pow(model.param("alpha") / (model.param("beta") + model.param("zeta")),
                                      1.0 / model.param("n"));
        return {-0.9 * level, 0.9 * level, -5.0, 5.0};
    }
    return {-4.0, 4.0, -4.0, 4.0};
}

namespace {

VerificationReport signal_failure(const std::string& name, const std::exception& e) {
    VerificationReport r;
    r.name = name;
    r.worst_violation = std::numeric_limits<double>::infinity();
    r.notes.push_back(e.what());
    r.finalize();
    return r;
}

}  // namespace

BatteryResult run_battery(const DuhemModel& model, const InputSignal& input, double y0,
                          const BatteryOptions& options) {
    BatteryResult out;
    const Rectangle& region = options.region;

    {
        const Grid grid = Grid::uniform(region.sigma_lo, region.sigma_hi, 41, region.xi_lo, region.xi_hi, 5);
        out.reports.push_back(check_existence_conditions(model, grid, 0.0));
    }
    out.reports.push_back(check_assumption_A(model, region, options.grid_resolution));
    out.reports.push_back(check_lemma1(model, region, options.lemma1_epsilon, options.grid_resolution));

    DissipationOptions dopts;
    dopts.step = options.step;
    dopts.tol = options.tol;
    try {
        DissipationResult main = verify_dissipation(model, input, y0, dopts);
        main.report.name = "dissipation_forward_input";
        out.reports.push_back(main.report);
        out.trajectory = main.trajectory;
    } catch (const std::exception& e) {
        out.reports.push_back(signal_failure("dissipation_forward_input", e));
    }
    try {
        DissipationOptions back = dopts;
        back.difference = Difference::backward;
        DissipationResult r = verify_dissipation(model, input, y0, back);
        r.report.name = "dissipation_backward_input";
        out.reports.push_back(r.report);
    } catch (const std::exception& e) {
        out.reports.push_back(signal_failure("dissipation_backward_input", e));
    }

    {
        VerificationReport random;
        random.name = "dissipation_forward_random";
        random.tolerance = options.tol >= 0.0 ? options.tol : 1e-6 + 10.0 * options.step;
        Rng rng(options.seed);
        signals::RandomSignalOptions ropts;
        ropts.max_breakpoints = 6;
        ropts.radius = 2.0;
        const double u0 = input.breakpoints().front().u;
        try {
            for (int i = 0; i < options.random_inputs; ++i) {
                const InputSignal s = signals::random_piecewise_linear(rng, u0, ropts);
                const DissipationResult r = verify_dissipation(model, s, y0, dopts);
                random.record(r.report.worst_violation, r.report.worst_location);
            }
            if (options.random_inputs == 0) random.worst_violation = -std::numeric_limits<double>::infinity();
            random.notes.push_back(std::to_string(options.random_inputs) + " seeded random inputs");
            random.finalize();
            out.reports.push_back(random);
        } catch (const std::exception& e) {
            out.reports.push_back(signal_failure(random.name, e));
        }
    }

    if (!out.trajectory.samples.empty()) {
        VerificationReport bound;
        bound.name = "supply_lower_bound";
        bound.tolerance = options.tol >= 0.0 ? options.tol : 1e-6 + 10.0 * options.step;
        const SupplySeries supply = cw_supply_integral(out.trajectory);
        const double h0 = storage_cw(model, {y0, input.breakpoints().front().u}).value;
        for (std::size_t i = 0; i < supply.integral.size(); ++i) {
            const auto& s = out.trajectory.samples[i];
            bound.record(-h0 - supply.integral[i], Location{s.t, s.y, s.u});
        }
        bound.finalize();
        out.reports.push_back(bound);
    }

    if (!options.cycle_boundaries.empty() && !out.trajectory.samples.empty()) {
        VerificationReport loop;
        loop.name = "loop_clockwise";
        try {
            const LoopResult lr = loop_orientation(out.trajectory);
            // Positive area is required: violation is the negated area.
            loop.record(-lr.signed_area, Location{out.trajectory.samples[lr.first_sample].t, std::nullopt,
                                                  std::nullopt});
            loop.tolerance = -1e-9;
            loop.notes.push_back(std::string("orientation: ") + to_string(lr.orientation));
            loop.finalize();
        } catch (const std::exception& e) {
            loop = signal_failure(loop.name, e);
        }
        out.reports.push_back(loop);

        VerificationReport cycles;
        cycles.name = "cycle_supply_convergence";
        cycles.tolerance = 1e-4;
        try {
            const std::vector<double> inc = per_cycle_supply(out.trajectory, options.cycle_boundaries);
            for (std::size_t k = 3; k + 1 < inc.size(); ++k)
                cycles.record(std::abs(inc[k + 1] - inc[k]), Location{options.cycle_boundaries[k + 1], std::nullopt,
                                                                      std::nullopt});
            if (cycles.samples_checked == 0) cycles.notes.push_back("fewer than five cycles; nothing to compare");
            cycles.finalize();
        } catch (const std::exception& e) {
            cycles = signal_failure(cycles.name, e);
        }
        out.reports.push_back(cycles);
    }
    return out;
}

}  // namespace duhem
