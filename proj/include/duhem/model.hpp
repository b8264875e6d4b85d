#pragma once

#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>

#include <json.hpp>

namespace duhem {

// A point (sigma, xi) = (output, input) of the hysteresis phase plane.
struct PhasePoint {
    double sigma = 0.0;
    double xi = 0.0;
};

// Admissible region of the phase plane. Every built-in model confines the
// output to an open band sigma_min < sigma < sigma_max and leaves the input
// unrestricted; infinite bounds give the whole plane.
struct Domain {
    double sigma_min = -std::numeric_limits<double>::infinity();
    double sigma_max = std::numeric_limits<double>::infinity();

    bool contains(double sigma) const { return sigma > sigma_min && sigma < sigma_max; }
    bool contains(const PhasePoint& p) const { return contains(p.sigma); }
    bool is_whole_plane() const;
};

using RateFunction = std::function<double(double sigma, double xi)>;
using CurveFunction = std::function<double(double xi)>;
using Params = std::map<std::string, double>;

// The Duhem operator
//
//     y' = f1(y, u) max(0, u') + f2(y, u) min(0, u')
//
// described by its two slope fields. f1 is the slope dy/du while the input
// increases, f2 while it decreases. F = (f1 - f2)/2 and G = (f1 + f2)/2.
//
// Instances are immutable after construction and safe to share across threads
// as long as the supplied callables are.
class DuhemModel {
public:
    DuhemModel(std::string id, RateFunction f1, RateFunction f2, Domain domain,
               std::optional<CurveFunction> anhysteresis, Params params);

    const std::string& id() const { return id_; }
    const Domain& domain() const { return domain_; }
    const Params& params() const { return params_; }
    double param(const std::string& name) const;

    double f1(double sigma, double xi) const { return f1_(sigma, xi); }
    double f2(double sigma, double xi) const { return f2_(sigma, xi); }
    double F(double sigma, double xi) const { return 0.5 * (f1_(sigma, xi) - f2_(sigma, xi)); }
    double G(double sigma, double xi) const { return 0.5 * (f1_(sigma, xi) + f2_(sigma, xi)); }

    // Slope dy/du for an input moving in direction `direction` (> 0: f1, < 0: f2).
    double slope(double sigma, double xi, double direction) const {
        return direction > 0.0 ? f1_(sigma, xi) : f2_(sigma, xi);
    }

    // Explicit anhysteresis function, if the model declares one. When empty the
    // curve F(sigma, xi) = 0 is solved numerically (see curves.hpp).
    const std::optional<CurveFunction>& explicit_anhysteresis() const { return anhysteresis_; }

    // True when the model declares f_an identically zero.
    bool anhysteresis_is_zero() const { return zero_anhysteresis_; }

    // Marks the declared explicit f_an as the zero function.
    DuhemModel& declare_zero_anhysteresis();

private:
    std::string id_;
    RateFunction f1_;
    RateFunction f2_;
    Domain domain_;
    std::optional<CurveFunction> anhysteresis_;
    Params params_;
    bool zero_anhysteresis_ = false;
};

// Dahl friction model, f1 = rho |1 - s|^r sgn(1 - s), f2 = rho |1 + s|^r sgn(1 + s),
// s = sigma / Fc. Domain (-Fc, Fc) x R, f_an = 0. Requires rho > 0, Fc > 0, r >= 1.
DuhemModel make_dahl(double rho, double coulomb_force, double r = 1.0);

// Bouc-Wen model, f1,2 = alpha - beta |sigma|^n -/+ zeta sigma |sigma|^(n-1).
// Whole-plane domain, f_an = 0 for zeta > 0. Requires n >= 1.
DuhemModel make_bouc_wen(double alpha, double beta, double zeta, double n);

// Exponential example operator with f1 = exp(gain (-slope sigma + xi)) + offset and
// f2 = exp(gain (slope sigma - xi)) + offset. Defaults gain 0.5, slope 1.2,
// offset 0.83. The anhysteresis curve sigma = xi / slope is left implicit.
DuhemModel make_exp_example(double gain = 0.5, double slope = 1.2, double offset = 0.83);

// Builds a catalog model from {"model": name, "params": {...}}. Missing params
// take their defaults; unknown names or parameters throw std::invalid_argument.
DuhemModel model_from_json(const nlohmann::json& spec);
DuhemModel make_model(const std::string& name, const Params& params);

// Probes f1 and f2 for continuous differentiability at `point` by comparing
// central differences at step h and h/2. Returns the largest relative
// disagreement of the two estimates across both partials of both fields.
double smoothness_defect(const DuhemModel& model, const PhasePoint& point, double h = 1e-4);

}  // namespace duhem
