#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "duhem/model.hpp"
#include "duhem/report.hpp"
#include "duhem/signal.hpp"

namespace duhem {

// Thrown when a trajectory leaves the model's admissible region. Carries the
// first sample found outside.
class DomainExit : public std::runtime_error {
public:
    DomainExit(const std::string& what, double t, PhasePoint point)
        : std::runtime_error(what), t_(t), point_(point) {}
    double t() const { return t_; }
    const PhasePoint& point() const { return point_; }

private:
    double t_;
    PhasePoint point_;
};

struct Sample {
    double t = 0.0;
    double u = 0.0;
    double y = 0.0;
};

struct Trajectory {
    std::vector<Sample> samples;
    // samples[breakpoint_index[i]] is the sample taken at input breakpoint i.
    std::vector<std::size_t> breakpoint_index;
    std::string model_id;
    double y0 = 0.0;
    double step = 0.0;  // 0 means the per-segment default was used
};

// Integrates the Duhem operator along a piecewise-linear input. Each monotone
// segment is integrated in the input variable (dy/du = f1 or f2) with
// classical RK4 using n = ceil(|du| / step) equal substeps; one sample is
// emitted per substep. Constant segments hold y exactly.
//
// Throws DomainExit if a substep lands outside model.domain(), and
// std::invalid_argument if (y0, u(0)) is not admissible or step <= 0.
Trajectory simulate(const DuhemModel& model, const InputSignal& input, double y0, double step);

// As above with the default step min(|du| / 1000, 1e-3) chosen per segment.
Trajectory simulate(const DuhemModel& model, const InputSignal& input, double y0);

// One RK4 step of dy/du = f(y, u) from (u, y) with signed step h.
template <class Field>
double rk4_step(const Field& f, double u, double y, double h) {
    const double k1 = f(y, u);
    const double k2 = f(y + 0.5 * h * k1, u + 0.5 * h);
    const double k3 = f(y + 0.5 * h * k2, u + 0.5 * h);
    const double k4 = f(y + h * k3, u + h);
    return y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// Rectangular grid of the phase plane: all (sigma, xi) pairs.
struct Grid {
    std::vector<double> sigma;
    std::vector<double> xi;

    // n_sigma x n_xi uniformly spaced nodes including the end points.
    static Grid uniform(double sigma_lo, double sigma_hi, std::size_t n_sigma, double xi_lo, double xi_hi,
                        std::size_t n_xi);
};

// Grid check of the one-sided Lipschitz existence conditions
//
//   (s1 - s2)[f1(s1, xi) - f1(s2, xi)] <=  lambda (s1 - s2)^2
//   (s1 - s2)[f2(s1, xi) - f2(s2, xi)] >= -lambda (s1 - s2)^2
//
// over all sigma pairs at each xi. The violation for a pair is the
// difference-quotient excess over lambda; the report's worst location holds
// (s1, xi), the partner s2 goes into the notes. Throws std::invalid_argument
// if a grid sigma lies outside the model's domain.
VerificationReport check_existence_conditions(const DuhemModel& model, const Grid& grid, double lambda_bound);

}  // namespace duhem
