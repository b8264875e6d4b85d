#include "duhem/mechsim.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "duhem/simulate.hpp"
#include "duhem/storage.hpp"

namespace duhem {

void MechParams::validate() const {
    if (!(m > 0.0)) throw std::invalid_argument("mech: m must be > 0");
    if (!(d >= 0.0)) throw std::invalid_argument("mech: d must be >= 0");
    if (!(k >= 0.0)) throw std::invalid_argument("mech: k must be >= 0");
    if (!(rho > 0.0)) throw std::invalid_argument("mech: rho must be > 0");
    if (!(fc > 0.0)) throw std::invalid_argument("mech: Fc must be > 0");
    if (law == ForceLaw::feedback && k != 0.0) throw std::invalid_argument("mech: feedback mode requires k = 0");
}

double applied_force(const MechParams& p, const MechState& x) {
    return p.law == ForceLaw::feedback ? -p.d * x.x2 : 0.0;
}

MechState mech_rhs(const MechParams& p, const MechState& x) {
    // Free mode carries the damper inside the plant; feedback mode applies it as F.
    const double damping = p.law == ForceLaw::free ? p.d * x.x2 : 0.0;
    const double force = applied_force(p, x);
    const double v_plus = std::max(0.0, x.x2);
    const double v_minus = std::min(0.0, x.x2);
    return {x.x2, (force - p.k * x.x1 - damping - x.x3) / p.m,
            p.rho * (1.0 - x.x3 / p.fc) * v_plus + p.rho * (1.0 + x.x3 / p.fc) * v_minus};
}

double mech_lyapunov(const MechParams& p, const MechState& x) {
    return 0.5 * p.k * x.x1 * x.x1 + 0.5 * p.m * x.x2 * x.x2 + storage_dahl_closed_form(x.x3, p.rho, p.fc);
}

namespace {

MechState axpy(const MechState& x, double h, const MechState& v) {
    return {x.x1 + h * v.x1, x.x2 + h * v.x2, x.x3 + h * v.x3};
}

MechState rk4(const MechParams& p, const MechState& x, double h) {
    const MechState k1 = mech_rhs(p, x);
    const MechState k2 = mech_rhs(p, axpy(x, 0.5 * h, k1));
    const MechState k3 = mech_rhs(p, axpy(x, 0.5 * h, k2));
    const MechState k4 = mech_rhs(p, axpy(x, h, k3));
    return {x.x1 + h / 6.0 * (k1.x1 + 2 * k2.x1 + 2 * k3.x1 + k4.x1),
            x.x2 + h / 6.0 * (k1.x2 + 2 * k2.x2 + 2 * k3.x2 + k4.x2),
            x.x3 + h / 6.0 * (k1.x3 + 2 * k2.x3 + 2 * k3.x3 + k4.x3)};
}

}  // namespace

MechSeries simulate_mech(const MechParams& params, const MechState& init, double horizon, double step) {
    params.validate();
    if (!(step > 0.0)) throw std::invalid_argument("mech: step must be > 0");
    if (!(horizon >= 0.0)) throw std::invalid_argument("mech: horizon must be >= 0");
    if (!(std::abs(init.x3) < params.fc)) throw std::invalid_argument("mech: |x3(0)| must be < Fc");

    MechSeries out;
    const auto n = static_cast<std::size_t>(std::ceil(horizon / step - 1e-9));
    out.t.reserve(n + 1);
    out.state.reserve(n + 1);
    out.V.reserve(n + 1);
    out.applied_work.reserve(n + 1);

    MechState x = init;
    double work = 0.0;
    out.t.push_back(0.0);
    out.state.push_back(x);
    out.V.push_back(mech_lyapunov(params, x));
    out.applied_work.push_back(0.0);

    for (std::size_t i = 1; i <= n; ++i) {
        const double t0 = out.t.back();
        const double t1 = i == n ? horizon : static_cast<double>(i) * step;
        const double h = t1 - t0;
        MechState next = rk4(params, x, h);
        double power_mid;
        if ((next.x2 > 0.0 && x.x2 < 0.0) || (next.x2 < 0.0 && x.x2 > 0.0)) {
            const MechState half = rk4(params, x, 0.5 * h);
            next = rk4(params, half, 0.5 * h);
            power_mid = applied_force(params, half) * half.x2;
        } else {
            const MechState half = axpy(x, 0.5, axpy(next, -1.0, x));
            power_mid = applied_force(params, half) * half.x2;
        }
        // Simpson on the applied power.
        work += h / 6.0 *
                (applied_force(params, x) * x.x2 + 4.0 * power_mid + applied_force(params, next) * next.x2);
        x = next;
        if (!std::isfinite(x.x3) || !(std::abs(x.x3) < params.fc)) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "friction state reached the Coulomb limit at t = " << t1 << " (x3 = " << x.x3 << ")";
            throw DomainExit(msg.str(), t1, PhasePoint{x.x3, x.x1});
        }
        out.t.push_back(t1);
        out.state.push_back(x);
        out.V.push_back(mech_lyapunov(params, x));
        out.applied_work.push_back(work);
    }
    return out;
}

std::vector<VerificationReport> lyapunov_check(const MechSeries& series, const MechParams& params, double tol,
                                               double tol_v) {
    VerificationReport rate;
    rate.name = "lyapunov_rate";
    rate.tolerance = tol;
    VerificationReport monotone;
    monotone.name = "lyapunov_monotone";
    const double v_max = series.V.empty() ? 0.0 : *std::max_element(series.V.begin(), series.V.end());
    monotone.tolerance = tol_v >= 0.0 ? tol_v : tol * v_max;

    for (std::size_t i = 0; i + 1 < series.t.size(); ++i) {
        const double dt = series.t[i + 1] - series.t[i];
        const double dV = series.V[i + 1] - series.V[i];
        const double x2 = series.state[i].x2;
        const Location at{series.t[i], series.state[i].x3, series.state[i].x1};
        rate.record(dV / dt + params.d * x2 * x2, at);
        monotone.record(dV, at);
    }
    if (rate.samples_checked == 0) {
        rate.worst_violation = 0.0;
        monotone.worst_violation = 0.0;
    }
    rate.finalize();
    monotone.finalize();
    return {rate, monotone};
}

}  // namespace duhem
