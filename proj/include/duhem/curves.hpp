#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "duhem/model.hpp"
#include "duhem/report.hpp"

namespace duhem {

// Raised when an anhysteresis point or an intersection cannot be found.
class CurveError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CurveOptions {
    double step = 1e-3;         // RK4 step in the input variable
    double root_tol = 1e-10;    // |omega - f_an| target at the intersection
    int max_doublings = 60;     // bracket expansion budget for Lambda
    std::size_t max_steps = 50'000'000;
};

// One half of a traversing curve: the solution of dy/dtau = f1 (direction +1,
// tau >= origin) or dy/dtau = f2 (direction -1, tau <= origin), stored as a
// dense table over the distance s = |tau - origin| with cubic Hermite
// interpolation between nodes.
class CurveBranch {
public:
    CurveBranch() = default;
    CurveBranch(PhasePoint origin, int direction);

    int direction() const { return direction_; }
    double reach() const { return s_.back(); }  // furthest |tau - xi| covered
    double end_tau() const { return tau_at(s_.back()); }
    bool truncated() const { return truncated_; }
    const std::string& exit_note() const { return exit_note_; }
    std::size_t node_count() const { return s_.size(); }

    double tau_at(double s) const { return origin_.xi + direction_ * s; }
    double node_tau(std::size_t i) const { return tau_at(s_[i]); }
    double node_value(std::size_t i) const { return y_[i]; }
    double node_distance(std::size_t i) const { return s_[i]; }

    // Interpolated curve value at distance s in [0, reach()].
    double at_distance(double s) const;

    // Integrates further until reach() == target. Returns false (and marks the
    // branch truncated) if the solution leaves the model's domain or the step
    // budget runs out first.
    bool extend(const DuhemModel& model, double target, const CurveOptions& options);

    // As extend(), but stops early (returning true) right after the first new
    // node for which stop(tau, y) holds.
    template <class Stop>
    bool extend_until(const DuhemModel& model, double target, const CurveOptions& options, Stop&& stop);

private:
    // Appends one step of length <= options.step towards target. Returns false
    // when the branch is (or becomes) truncated.
    bool advance(const DuhemModel& model, double target, const CurveOptions& options);

    PhasePoint origin_{};
    int direction_ = 1;
    std::vector<double> s_;
    std::vector<double> y_;
    std::vector<double> dy_ds_;
    bool truncated_ = false;
    std::string exit_note_;
};

template <class Stop>
bool CurveBranch::extend_until(const DuhemModel& model, double target, const CurveOptions& options, Stop&& stop) {
    while (s_.back() < target) {
        if (!advance(model, target, options)) return false;
        if (stop(end_tau(), y_.back())) return true;
    }
    return !truncated_;
}

// The traversing function omega(., sigma, xi): the f2 branch for tau < xi
// concatenated with the f1 branch for tau >= xi.
class TraversingCurve {
public:
    TraversingCurve(PhasePoint origin, CurveBranch left, CurveBranch right);

    const PhasePoint& origin() const { return origin_; }
    double tau_min() const { return left_.end_tau(); }
    double tau_max() const { return right_.end_tau(); }
    bool truncated() const { return left_.truncated() || right_.truncated(); }
    const CurveBranch& left() const { return left_; }
    const CurveBranch& right() const { return right_; }

    // omega(tau); throws std::out_of_range outside [tau_min(), tau_max()].
    double operator()(double tau) const;

private:
    PhasePoint origin_;
    CurveBranch left_;
    CurveBranch right_;
};

// Anhysteresis value f_an(xi): the declared explicit curve, or else the root of
// F(., xi) bracketed by geometric expansion from sigma = 0 (clipped to the
// domain) with |F| <= 1e-10 at the returned point. `hint`, when given, seeds
// the expansion around a nearby previous root. Throws CurveError when no sign
// change exists inside the domain.
double anhysteresis(const DuhemModel& model, double xi, std::optional<double> hint = std::nullopt);

// Derivative of f_an by central difference with h = 1e-5 (1 + |xi|).
double anhysteresis_slope(const DuhemModel& model, double xi);

// Integrates both branches through p out to [tau_min, tau_max]. A branch that
// leaves the domain is returned truncated with its exit recorded.
TraversingCurve traversing_curve(const DuhemModel& model, PhasePoint p, double tau_min, double tau_max,
                                 const CurveOptions& options = {});

struct Intersection {
    double lambda = 0.0;
    // Branch ridden from p towards the anhysteresis curve; covers [xi, lambda].
    CurveBranch branch;
};

// Rides omega from p towards the anhysteresis curve (leftwards along f2 when
// sigma >= f_an(xi), rightwards along f1 otherwise). The bracket starts at
// width 1 + |xi| and doubles up to options.max_doublings times; the crossing
// is then bisected on the dense branch. Throws std::invalid_argument when p is
// outside the domain and CurveError when no crossing is found.
Intersection find_intersection(const DuhemModel& model, PhasePoint p, const CurveOptions& options = {});

// The intersecting function Lambda(sigma, xi).
double intersect_lambda(const DuhemModel& model, PhasePoint p, const CurveOptions& options = {});

struct Rectangle {
    double sigma_lo = 0.0;
    double sigma_hi = 0.0;
    double xi_lo = 0.0;
    double xi_hi = 0.0;
};

// Grid certificate for the intersection hypotheses:
//   f1(sigma, xi) > f_an'(xi) + epsilon  where sigma > f_an(xi)
//   f2(sigma, xi) > f_an'(xi) + epsilon  where sigma < f_an(xi)
// on an n x n grid (end points included). The violation at a node is
// f_an' + epsilon - f, which must not be positive. Models with constant
// f_an get a "constant-f_an mode" note.
VerificationReport check_lemma1(const DuhemModel& model, const Rectangle& region, double epsilon,
                                std::size_t resolution = 200);

}  // namespace duhem
