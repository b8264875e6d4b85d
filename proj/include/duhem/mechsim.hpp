#pragma once

#include <string>
#include <vector>

#include "duhem/report.hpp"

namespace duhem {

// Displacement, velocity and Dahl friction force.
struct MechState {
    double x1 = 0.0;
    double x2 = 0.0;
    double x3 = 0.0;
};

enum class ForceLaw {
    free,      // m x'' + d x' + k x + Phi(x) = 0, no applied force
    feedback,  // m x'' = F - Phi(x) with proportional feedback F = -d x'; needs k = 0
};

struct MechParams {
    double m = 1.0;
    double d = 0.5;
    double k = 1.0;
    double rho = 1.5;
    double fc = 0.75;
    ForceLaw law = ForceLaw::free;

    // Throws std::invalid_argument on m <= 0, d < 0, k < 0, rho <= 0, fc <= 0,
    // or feedback mode with k != 0.
    void validate() const;
};

struct MechSeries {
    std::vector<double> t;
    std::vector<MechState> state;
    std::vector<double> V;             // k x1^2 / 2 + m x2^2 / 2 + H(x3)
    std::vector<double> applied_work;  // running int F x2 dt (zero in free mode)
};

// Applied force at a state (0 in free mode, -d x2 in feedback mode).
double applied_force(const MechParams& params, const MechState& x);

// Right-hand side of the state equations.
MechState mech_rhs(const MechParams& params, const MechState& x);

// Lyapunov candidate V = k x1^2 / 2 + m x2^2 / 2 + H(x3) with the closed-form Dahl storage.
double mech_lyapunov(const MechParams& params, const MechState& x);

// Fixed-step RK4 in time. A step across which the velocity changes sign is
// replaced by two half steps. Throws DomainExit when |x3| reaches Fc and
// std::invalid_argument for |x3(0)| >= Fc or step <= 0.
MechSeries simulate_mech(const MechParams& params, const MechState& init, double horizon, double step = 1e-3);

// Checks (V[i+1] - V[i]) / dt <= -d x2[i]^2 + tol at every step and that V
// never increases by more than tol_v between samples (tol_v < 0 selects
// tol * max V). Returns two reports: "lyapunov_rate" and "lyapunov_monotone".
std::vector<VerificationReport> lyapunov_check(const MechSeries& series, const MechParams& params, double tol,
                                               double tol_v = -1.0);

}  // namespace duhem
