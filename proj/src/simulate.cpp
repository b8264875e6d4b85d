#include "duhem/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace duhem {

namespace {

void check_admissible(const DuhemModel& model, double t, double u, double y) {
    if (!std::isfinite(y) || !model.domain().contains(y)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "trajectory of model " << model.id() << " left its domain at t = " << t << " (y = " << y
            << ", u = " << u << ")";
        throw DomainExit(msg.str(), t, PhasePoint{y, u});
    }
}

Trajectory integrate(const DuhemModel& model, const InputSignal& input, double y0, double step) {
    const auto bps = input.breakpoints();
    if (!std::isfinite(y0) || !model.domain().contains(y0))
        throw std::invalid_argument("simulate: initial output outside the model's domain");

    Trajectory traj;
    traj.model_id = model.id();
    traj.y0 = y0;
    traj.step = step;
    traj.samples.push_back({bps[0].t, bps[0].u, y0});
    traj.breakpoint_index.push_back(0);

    double y = y0;
    for (std::size_t seg = 0; seg + 1 < bps.size(); ++seg) {
        const Breakpoint a = bps[seg];
        const Breakpoint b = bps[seg + 1];
        const double du = b.u - a.u;
        if (du == 0.0) {
            traj.samples.push_back({b.t, b.u, y});
            traj.breakpoint_index.push_back(traj.samples.size() - 1);
            continue;
        }
        const double max_step = step > 0.0 ? step : std::min(std::abs(du) / 1000.0, 1e-3);
        const auto n = static_cast<std::size_t>(std::ceil(std::abs(du) / max_step));
        const double h = du / static_cast<double>(n);
        const double direction = du > 0.0 ? 1.0 : -1.0;
        auto field = [&](double sigma, double xi) { return model.slope(sigma, xi, direction); };

        for (std::size_t k = 1; k <= n; ++k) {
            const double u_prev = a.u + du * static_cast<double>(k - 1) / static_cast<double>(n);
            y = rk4_step(field, u_prev, y, h);
            const double w = static_cast<double>(k) / static_cast<double>(n);
            const double t = k == n ? b.t : a.t + w * (b.t - a.t);
            const double u = k == n ? b.u : a.u + w * du;
            check_admissible(model, t, u, y);
            traj.samples.push_back({t, u, y});
        }
        traj.breakpoint_index.push_back(traj.samples.size() - 1);
    }
    return traj;
}

}  // namespace

Trajectory simulate(const DuhemModel& model, const InputSignal& input, double y0, double step) {
    if (!(step > 0.0)) throw std::invalid_argument("simulate: step must be > 0");
    return integrate(model, input, y0, step);
}

Trajectory simulate(const DuhemModel& model, const InputSignal& input, double y0) {
    return integrate(model, input, y0, 0.0);
}

Grid Grid::uniform(double sigma_lo, double sigma_hi, std::size_t n_sigma, double xi_lo, double xi_hi,
                   std::size_t n_xi) {
    auto linspace = [](double lo, double hi, std::size_t n) {
        std::vector<double> v(n);
        for (std::size_t i = 0; i < n; ++i)
            v[i] = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
        return v;
    };
    return Grid{linspace(sigma_lo, sigma_hi, n_sigma), linspace(xi_lo, xi_hi, n_xi)};
}

VerificationReport check_existence_conditions(const DuhemModel& model, const Grid& grid, double lambda_bound) {
    if (grid.sigma.empty() || grid.xi.empty()) throw std::invalid_argument("existence check: empty grid");
    if (lambda_bound < 0.0) throw std::invalid_argument("existence check: lambda must be nonnegative");
    for (double s : grid.sigma)
        if (!model.domain().contains(s)) throw std::invalid_argument("existence check: grid outside domain");

    VerificationReport report;
    report.name = "existence_conditions";
    report.tolerance = 1e-9 * (1.0 + lambda_bound);
    double worst_partner = 0.0;
    for (double xi : grid.xi) {
        for (std::size_t i = 0; i < grid.sigma.size(); ++i) {
            const double s1 = grid.sigma[i];
            const double f1a = model.f1(s1, xi);
            const double f2a = model.f2(s1, xi);
            for (std::size_t j = 0; j < grid.sigma.size(); ++j) {
                const double s2 = grid.sigma[j];
                const double ds = s1 - s2;
                double violation;
                if (ds == 0.0) {
                    violation = -lambda_bound;  // 0 <= 0 holds with equality
                } else {
                    const double q1 = (f1a - model.f1(s2, xi)) / ds;
                    const double q2 = (f2a - model.f2(s2, xi)) / ds;
                    violation = std::max(q1 - lambda_bound, -lambda_bound - q2);
                }
                const auto before = report.worst_violation;
                const bool first = report.samples_checked == 0;
                report.record(violation, Location{std::nullopt, s1, xi});
                if (first || report.worst_violation != before) worst_partner = s2;
            }
        }
    }
    std::ostringstream note;
    note.precision(17);
    note << "worst pair partner sigma2 = " << worst_partner << ", lambda = " << lambda_bound;
    report.notes.push_back(note.str());
    report.finalize();
    return report;
}

}  // namespace duhem
