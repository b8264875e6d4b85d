#include "duhem/storage.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "duhem/numerics.hpp"
#include "duhem/simulate.hpp"

namespace duhem {

StorageEvaluation storage_cw(const DuhemModel& model, PhasePoint p, const StorageOptions& options) {
    const Intersection hit = find_intersection(model, p, options.curve);
    StorageEvaluation eval;
    eval.point = p;
    eval.lambda_star = hit.lambda;

    if (model.anhysteresis_is_zero()) {
        eval.anhysteresis_integral = 0.0;
    } else {
        double hint = anhysteresis(model, 0.0);
        auto fan = [&](double tau) {
            hint = anhysteresis(model, tau, hint);
            return hint;
        };
        eval.anhysteresis_integral = adaptive_simpson(fan, 0.0, hit.lambda, options.quad_tol, options.max_depth);
    }

    const CurveBranch& branch = hit.branch;
    auto omega = [&](double tau) { return branch.at_distance(std::min(std::abs(tau - p.xi), branch.reach())); };
    eval.traverse_integral = adaptive_simpson(omega, p.xi, hit.lambda, options.quad_tol, options.max_depth);
    eval.value = eval.anhysteresis_integral - eval.traverse_integral;
    return eval;
}

namespace {

void require_inside(double y, double fc) {
    if (!(fc > 0.0)) throw std::domain_error("Fc must be > 0");
    if (!(std::abs(y) < fc)) throw std::domain_error("Dahl closed form requires |y| < Fc");
}

}  // namespace

double storage_dahl_closed_form(double y, double rho, double fc) {
    require_inside(y, fc);
    if (y >= 0.0) return fc * fc / rho * std::log(fc / (y + fc)) + fc / rho * y;
    return fc * fc / rho * std::log(-fc / (y - fc)) - fc / rho * y;
}

double lambda_dahl_closed_form(double y, double u, double rho, double fc) {
    require_inside(y, fc);
    if (y >= 0.0) return u + fc / rho * std::log(fc / (y + fc));
    return u - fc / rho * std::log(-fc / (y - fc));
}

double omega_dahl_closed_form(double tau, double y, double u, double rho, double fc) {
    if (tau >= u) return fc + (y - fc) * std::exp(rho / fc * (u - tau));
    return -fc + (y + fc) * std::exp(rho / fc * (tau - u));
}

InputFamily available_storage_family(const DuhemModel& model, PhasePoint p, double horizon, int random_count,
                                     std::uint64_t seed, const CurveOptions& curve) {
    if (!(horizon > 0.0)) throw std::invalid_argument("available storage: horizon must be > 0");
    InputFamily family;
    const double lambda = intersect_lambda(model, p, curve);
    if (lambda == p.xi) {
        family.signals.push_back(InputSignal({{0.0, p.xi}, {horizon, p.xi}}));
    } else {
        family.signals.push_back(signals::hold_until(signals::ramp(p.xi, lambda, 0.5 * horizon), horizon));
    }
    Rng rng(seed);
    signals::RandomSignalOptions opts;
    opts.min_speed = 0.1;
    for (int i = 0; i < random_count; ++i) {
        InputSignal s = signals::random_piecewise_linear(rng, p.xi, opts);
        // Compress into the horizon when the random pacing overran it.
        if (s.end_time() > horizon) {
            std::vector<Breakpoint> bps(s.breakpoints().begin(), s.breakpoints().end());
            const double scale = horizon / s.end_time();
            for (auto& b : bps) b.t *= scale;
            s = InputSignal(std::move(bps));
        }
        family.signals.push_back(signals::hold_until(s, horizon));
    }
    return family;
}

double available_storage_bruteforce(const DuhemModel& model, PhasePoint p, const InputFamily& family,
                                    double horizon, double step) {
    if (family.signals.empty()) throw std::invalid_argument("available storage: empty input family");
    if (!model.anhysteresis_is_zero())
        throw std::invalid_argument("available storage: model " + model.id() + " must have f_an identically zero");
    if (!model.domain().contains(p)) throw std::invalid_argument("available storage: point outside domain");

    double best = 0.0;
    for (const auto& signal : family.signals) {
        if (signal.breakpoints().front().u != p.xi)
            throw std::invalid_argument("available storage: family member does not start at xi");
        if (signal.end_time() > horizon * (1.0 + 1e-12))
            throw std::invalid_argument("available storage: family member exceeds the horizon");
        const Trajectory traj = simulate(model, signal, p.sigma, step);
        double extracted = 0.0;
        for (std::size_t i = 1; i < traj.samples.size(); ++i) {
            const auto& a = traj.samples[i - 1];
            const auto& b = traj.samples[i];
            const double h = b.u - a.u;
            if (h == 0.0) continue;
            // Trapezoid rule with the Euler-Maclaurin end correction.
            const double slope_a = model.slope(a.y, a.u, h);
            const double slope_b = model.slope(b.y, b.u, h);
            extracted -= 0.5 * (a.y + b.y) * h + h * h / 12.0 * (slope_a - slope_b);
            best = std::max(best, extracted);
        }
    }
    return best;
}

}  // namespace duhem
