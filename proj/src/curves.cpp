#include "duhem/curves.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include <boost/math/tools/toms748_solve.hpp>

#include "duhem/numerics.hpp"
#include "duhem/simulate.hpp"

namespace duhem {

CurveBranch::CurveBranch(PhasePoint origin, int direction)
    : origin_(origin), direction_(direction >= 0 ? 1 : -1), s_{0.0}, y_{origin.sigma} {}

double CurveBranch::at_distance(double s) const {
    if (s < 0.0 || s > s_.back()) throw std::out_of_range("traversing curve evaluated beyond its reach");
    if (dy_ds_.size() < s_.size()) throw std::logic_error("curve branch slopes not initialised");
    auto it = std::upper_bound(s_.begin(), s_.end(), s);
    std::size_t i = it == s_.begin() ? 0 : static_cast<std::size_t>(it - s_.begin()) - 1;
    if (i + 1 >= s_.size()) return y_.back();
    const double h = s_[i + 1] - s_[i];
    const double w = (s - s_[i]) / h;
    const double w2 = w * w;
    const double w3 = w2 * w;
    const double h00 = 2 * w3 - 3 * w2 + 1;
    const double h10 = w3 - 2 * w2 + w;
    const double h01 = -2 * w3 + 3 * w2;
    const double h11 = w3 - w2;
    return h00 * y_[i] + h10 * h * dy_ds_[i] + h01 * y_[i + 1] + h11 * h * dy_ds_[i + 1];
}

bool CurveBranch::advance(const DuhemModel& model, double target, const CurveOptions& options) {
    const double dir = direction_;
    auto field = [&](double sigma, double tau) { return model.slope(sigma, tau, dir); };
    if (dy_ds_.empty()) dy_ds_.push_back(dir * field(y_[0], origin_.xi));
    if (truncated_) return false;
    if (s_.size() >= options.max_steps) {
        truncated_ = true;
        exit_note_ = "step budget exhausted";
        return false;
    }
    const double s0 = s_.back();
    const double remaining = target - s0;
    const bool last = remaining <= options.step;
    const double h = last ? remaining : options.step;
    const double s1 = last ? target : s0 + h;
    const double y1 = rk4_step(field, tau_at(s0), y_.back(), dir * h);
    const double tau1 = tau_at(s1);
    if (!std::isfinite(y1) || !model.domain().contains(y1)) {
        truncated_ = true;
        std::ostringstream msg;
        msg.precision(17);
        msg << "branch left the domain near tau = " << tau1 << " (y = " << y1 << ")";
        exit_note_ = msg.str();
        return false;
    }
    s_.push_back(s1);
    y_.push_back(y1);
    dy_ds_.push_back(dir * field(y1, tau1));
    return true;
}

bool CurveBranch::extend(const DuhemModel& model, double target, const CurveOptions& options) {
    if (dy_ds_.empty()) dy_ds_.push_back(direction_ * model.slope(y_[0], origin_.xi, direction_));
    while (s_.back() < target)
        if (!advance(model, target, options)) return false;
    return !truncated_;
}

TraversingCurve::TraversingCurve(PhasePoint origin, CurveBranch left, CurveBranch right)
    : origin_(origin), left_(std::move(left)), right_(std::move(right)) {}

double TraversingCurve::operator()(double tau) const {
    if (tau >= origin_.xi) return right_.at_distance(tau - origin_.xi);
    return left_.at_distance(origin_.xi - tau);
}

namespace {

constexpr double kAnhysteresisTol = 1e-10;

// Largest sigma strictly inside a finite upper bound (mirror for lower).
double clip_inside(double value, double bound, bool upper) {
    if (std::isinf(bound)) return value;
    const double margin = 1e-12 * (1.0 + std::abs(bound));
    return upper ? std::min(value, bound - margin) : std::max(value, bound + margin);
}

double solve_bracketed(const DuhemModel& model, double xi, double a, double b) {
    auto F = [&](double s) { return model.F(s, xi); };
    const double fa = F(a);
    const double fb = F(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    std::uintmax_t max_iter = 200;
    auto stop = [&](double lo, double hi) {
        return std::abs(hi - lo) <= 4 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(lo));
    };
    auto [lo, hi] = boost::math::tools::toms748_solve(F, std::min(a, b), std::max(a, b),
                                                       a < b ? fa : fb, a < b ? fb : fa, stop, max_iter);
    const double flo = std::abs(F(lo));
    const double fhi = std::abs(F(hi));
    const double root = flo <= fhi ? lo : hi;
    if (std::min(flo, fhi) > kAnhysteresisTol) {
        // Fall back to plain bisection on the final bracket.
        return bisect(F, lo, hi, 0.1 * kAnhysteresisTol);
    }
    return root;
}

}  // namespace

double anhysteresis(const DuhemModel& model, double xi, std::optional<double> hint) {
    if (const auto& fan = model.explicit_anhysteresis()) return (*fan)(xi);

    const Domain& dom = model.domain();
    const double center = hint && dom.contains(*hint) ? *hint : (dom.contains(0.0) ? 0.0 : 0.5 * (dom.sigma_min + dom.sigma_max));
    const double f_center = model.F(center, xi);
    if (f_center == 0.0) return center;

    double width = hint ? 1e-3 * (1.0 + std::abs(center)) : 1.0;
    double prev_hi = center, prev_lo = center;
    double f_prev_hi = f_center, f_prev_lo = f_center;
    for (int k = 0; k <= 1100; ++k, width *= 2.0) {
        const double hi = clip_inside(center + width, dom.sigma_max, true);
        const double f_hi = model.F(hi, xi);
        if ((f_hi > 0.0) != (f_prev_hi > 0.0) || f_hi == 0.0) return solve_bracketed(model, xi, prev_hi, hi);
        const double lo = clip_inside(center - width, dom.sigma_min, false);
        const double f_lo = model.F(lo, xi);
        if ((f_lo > 0.0) != (f_prev_lo > 0.0) || f_lo == 0.0) return solve_bracketed(model, xi, lo, prev_lo);
        const bool saturated = hi == prev_hi && lo == prev_lo;
        prev_hi = hi;
        prev_lo = lo;
        f_prev_hi = f_hi;
        f_prev_lo = f_lo;
        if (saturated || std::isinf(width)) break;
    }
    std::ostringstream msg;
    msg << "no anhysteresis point for model " << model.id() << " at xi = " << xi;
    throw CurveError(msg.str());
}

double anhysteresis_slope(const DuhemModel& model, double xi) {
    if (model.anhysteresis_is_zero()) return 0.0;
    const double h = 1e-5 * (1.0 + std::abs(xi));
    const double up = anhysteresis(model, xi + h);
    const double down = anhysteresis(model, xi - h, up);
    return (up - down) / (2.0 * h);
}

TraversingCurve traversing_curve(const DuhemModel& model, PhasePoint p, double tau_min, double tau_max,
                                 const CurveOptions& options) {
    if (!model.domain().contains(p)) throw std::invalid_argument("traversing_curve: origin outside domain");
    if (!(tau_min <= p.xi && p.xi <= tau_max))
        throw std::invalid_argument("traversing_curve: need tau_min <= xi <= tau_max");
    CurveBranch left(p, -1);
    CurveBranch right(p, +1);
    left.extend(model, p.xi - tau_min, options);
    right.extend(model, tau_max - p.xi, options);
    return TraversingCurve(p, std::move(left), std::move(right));
}

Intersection find_intersection(const DuhemModel& model, PhasePoint p, const CurveOptions& options) {
    if (!model.domain().contains(p)) throw std::invalid_argument("intersect_lambda: point outside domain");

    const double fan0 = anhysteresis(model, p.xi);
    const int direction = p.sigma >= fan0 ? -1 : +1;
    CurveBranch branch(p, direction);
    branch.extend(model, 0.0, options);
    if (p.sigma == fan0) return {p.xi, std::move(branch)};

    // g > 0 on the starting side for leftward rides, < 0 for rightward ones.
    double fan_hint = fan0;
    auto gap = [&](double tau, double y) {
        fan_hint = anhysteresis(model, tau, fan_hint);
        return y - fan_hint;
    };
    auto crossed = [&](double g) { return direction < 0 ? g <= 0.0 : g >= 0.0; };

    double width = 1.0 + std::abs(p.xi);
    for (int k = 0; k <= options.max_doublings; ++k, width *= 2.0) {
        const bool ok = branch.extend_until(model, width, options,
                                            [&](double tau, double y) { return crossed(gap(tau, y)); });
        const std::size_t i = branch.node_count() - 1;
        if (ok && i > 0 && crossed(gap(branch.node_tau(i), branch.node_value(i)))) {
            // Crossing between nodes i-1 and i; bisect on the interpolant.
            const double s_lo = branch.node_distance(i - 1);
            const double s_hi = branch.node_distance(i);
            auto h = [&](double s) {
                const double tau = branch.tau_at(s);
                return branch.at_distance(s) - anhysteresis(model, tau, fan_hint);
            };
            const double s_star = bisect(h, s_lo, s_hi, 0.1 * options.root_tol);
            return {branch.tau_at(s_star), std::move(branch)};
        }
        if (!ok) {
            throw CurveError("no intersection with the anhysteresis curve for model " + model.id() + ": " +
                             branch.exit_note());
        }
    }
    throw CurveError("no intersection with the anhysteresis curve for model " + model.id() +
                     " within the bracket expansion budget");
}

double intersect_lambda(const DuhemModel& model, PhasePoint p, const CurveOptions& options) {
    return find_intersection(model, p, options).lambda;
}

VerificationReport check_lemma1(const DuhemModel& model, const Rectangle& region, double epsilon,
                                std::size_t resolution) {
    VerificationReport report;
    report.name = "lemma1_hypotheses";
    report.tolerance = 0.0;
    const Grid grid = Grid::uniform(region.sigma_lo, region.sigma_hi, resolution, region.xi_lo, region.xi_hi,
                                    resolution);
    bool constant_fan = model.anhysteresis_is_zero();
    double fan_first = 0.0;
    std::optional<double> hint;
    bool any_checked = false;
    for (std::size_t j = 0; j < grid.xi.size(); ++j) {
        const double xi = grid.xi[j];
        const double fan = anhysteresis(model, xi, hint);
        hint = fan;
        if (j == 0) fan_first = fan;
        else if (fan != fan_first) constant_fan = false;
        const double slope = anhysteresis_slope(model, xi);
        for (double sigma : grid.sigma) {
            double violation;
            if (sigma > fan) violation = slope + epsilon - model.f1(sigma, xi);
            else if (sigma < fan) violation = slope + epsilon - model.f2(sigma, xi);
            else continue;
            any_checked = true;
            report.record(violation, Location{std::nullopt, sigma, xi});
        }
    }
    if (!any_checked) {
        report.worst_violation = -std::numeric_limits<double>::infinity();
        report.notes.push_back("vacuous: region lies on the anhysteresis curve");
    }
    if (constant_fan) report.notes.push_back("constant-f_an mode");
    report.finalize();
    return report;
}

}  // namespace duhem
