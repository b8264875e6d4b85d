#pragma once

#include <cstdint>
#include <vector>

#include "duhem/curves.hpp"
#include "duhem/model.hpp"
#include "duhem/signal.hpp"

namespace duhem {

// H(sigma, xi) = int_0^Lambda f_an(tau) dtau - int_xi^Lambda omega(tau, sigma, xi) dtau.
struct StorageEvaluation {
    PhasePoint point;
    double lambda_star = 0.0;
    double anhysteresis_integral = 0.0;
    double traverse_integral = 0.0;
    double value = 0.0;
};

struct StorageOptions {
    double quad_tol = 1e-8;
    int max_depth = 40;
    CurveOptions curve;
};

// Clockwise storage function at p, both integrals by adaptive Simpson.
// Propagates CurveError from the intersection search and QuadratureError.
StorageEvaluation storage_cw(const DuhemModel& model, PhasePoint p, const StorageOptions& options = {});

// Dahl (r = 1) storage in closed form; independent of the input value.
// Throws std::domain_error unless |y| < Fc.
double storage_dahl_closed_form(double y, double rho, double coulomb_force);

// Dahl (r = 1) intersecting function in closed form. Throws std::domain_error unless |y| < Fc.
double lambda_dahl_closed_form(double y, double u, double rho, double coulomb_force);

// Dahl (r = 1) traversing curve in closed form.
double omega_dahl_closed_form(double tau, double y, double u, double rho, double coulomb_force);

// Input signals over which the available storage is maximised. Every member
// must start at the evaluation point's input value.
struct InputFamily {
    std::vector<InputSignal> signals;
};

// The family used for the available-storage supremum: the ramp from xi to
// Lambda(p) over [0, horizon / 2] held until `horizon`, followed by
// `random_count` seeded random piecewise-linear signals (3 to 10 breakpoints,
// values within +-3 of xi) held until `horizon`.
InputFamily available_storage_family(const DuhemModel& model, PhasePoint p, double horizon, int random_count = 200,
                                     std::uint64_t seed = 20120501, const CurveOptions& curve = {});

// max over the family and over time of -int_0^T y du with y = Phi(u, p.sigma).
// Requires the model's f_an to be identically zero. Throws std::invalid_argument
// for an empty family, a member not starting at p.xi, or a nonzero f_an;
// DomainExit propagates from simulation.
double available_storage_bruteforce(const DuhemModel& model, PhasePoint p, const InputFamily& family,
                                    double horizon, double step = 1e-3);

}  // namespace duhem
