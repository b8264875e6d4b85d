#include "duhem/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace duhem {

bool Domain::is_whole_plane() const {
    return std::isinf(sigma_min) && std::isinf(sigma_max);
}

DuhemModel::DuhemModel(std::string id, RateFunction f1, RateFunction f2, Domain domain,
                       std::optional<CurveFunction> anhysteresis, Params params)
    : id_(std::move(id)),
      f1_(std::move(f1)),
      f2_(std::move(f2)),
      domain_(domain),
      anhysteresis_(std::move(anhysteresis)),
      params_(std::move(params)) {
    if (!f1_ || !f2_) throw std::invalid_argument("DuhemModel: f1 and f2 must be callable");
    if (!(domain_.sigma_min < domain_.sigma_max))
        throw std::invalid_argument("DuhemModel: empty domain");
}

double DuhemModel::param(const std::string& name) const {
    auto it = params_.find(name);
    if (it == params_.end()) throw std::out_of_range("model " + id_ + " has no parameter " + name);
    return it->second;
}

DuhemModel& DuhemModel::declare_zero_anhysteresis() {
    anhysteresis_ = [](double) { return 0.0; };
    zero_anhysteresis_ = true;
    return *this;
}

namespace {

// |x|^r sgn(x), continuous at 0 for r >= 1.
double signed_power(double x, double r) {
    if (x == 0.0) return 0.0;
    return std::copysign(std::pow(std::abs(x), r), x);
}

}  // namespace

DuhemModel make_dahl(double rho, double coulomb_force, double r) {
    if (!(rho > 0.0)) throw std::invalid_argument("dahl: rho must be > 0");
    if (!(coulomb_force > 0.0)) throw std::invalid_argument("dahl: Fc must be > 0");
    if (!(r >= 1.0)) throw std::invalid_argument("dahl: r must be >= 1");

    const double fc = coulomb_force;
    RateFunction f1, f2;
    if (r == 1.0) {
        f1 = [rho, fc](double sigma, double) { return rho * (1.0 - sigma / fc); };
        f2 = [rho, fc](double sigma, double) { return rho * (1.0 + sigma / fc); };
    } else {
        f1 = [rho, fc, r](double sigma, double) { return rho * signed_power(1.0 - sigma / fc, r); };
        f2 = [rho, fc, r](double sigma, double) { return rho * signed_power(1.0 + sigma / fc, r); };
    }
    DuhemModel model("dahl", std::move(f1), std::move(f2), Domain{-fc, fc}, std::nullopt,
                     Params{{"rho", rho}, {"Fc", fc}, {"r", r}});
    model.declare_zero_anhysteresis();
    return model;
}

DuhemModel make_bouc_wen(double alpha, double beta, double zeta, double n) {
    if (!(n >= 1.0)) throw std::invalid_argument("boucwen: n must be >= 1");
    // |sigma|^(n-1), by repeated multiplication for small integer n.
    std::function<double(double)> power;
    if (n == std::floor(n) && n <= 8.0) {
        const int m = static_cast<int>(n) - 1;
        power = [m](double a) {
            double p = 1.0;
            for (int i = 0; i < m; ++i) p *= a;
            return p;
        };
    } else {
        power = [n](double a) { return std::pow(a, n - 1.0); };
    }
    auto f1 = [=](double sigma, double) {
        const double a = std::abs(sigma);
        const double p = power(a);
        return alpha - beta * a * p - zeta * sigma * p;
    };
    auto f2 = [=](double sigma, double) {
        const double a = std::abs(sigma);
        const double p = power(a);
        return alpha - beta * a * p + zeta * sigma * p;
    };
    DuhemModel model("boucwen", f1, f2, Domain{}, std::nullopt,
                     Params{{"alpha", alpha}, {"beta", beta}, {"zeta", zeta}, {"n", n}});
    // F = -zeta sigma |sigma|^(n-1) vanishes only at sigma = 0 when zeta != 0.
    if (zeta != 0.0) model.declare_zero_anhysteresis();
    return model;
}

DuhemModel make_exp_example(double gain, double slope, double offset) {
    if (!(slope > 0.0)) throw std::invalid_argument("exp_example: slope must be > 0");
    if (!(gain > 0.0)) throw std::invalid_argument("exp_example: gain must be > 0");
    auto f1 = [=](double sigma, double xi) { return std::exp(gain * (-slope * sigma + xi)) + offset; };
    auto f2 = [=](double sigma, double xi) { return std::exp(gain * (slope * sigma - xi)) + offset; };
    return DuhemModel("exp_example", f1, f2, Domain{}, std::nullopt,
                      Params{{"gain", gain}, {"slope", slope}, {"offset", offset}});
}

namespace {

Params merge_params(const std::string& model, const Params& defaults, const Params& given) {
    Params out = defaults;
    for (const auto& [key, value] : given) {
        if (!defaults.count(key))
            throw std::invalid_argument("unknown parameter '" + key + "' for model " + model);
        out[key] = value;
    }
    return out;
}

}  // namespace

DuhemModel make_model(const std::string& name, const Params& params) {
    if (name == "dahl") {
        auto p = merge_params(name, {{"rho", 1.5}, {"Fc", 0.75}, {"r", 1.0}}, params);
        return make_dahl(p["rho"], p["Fc"], p["r"]);
    }
    if (name == "boucwen") {
        auto p = merge_params(name, {{"alpha", 1.0}, {"beta", 1.0}, {"zeta", 1.0}, {"n", 3.0}}, params);
        return make_bouc_wen(p["alpha"], p["beta"], p["zeta"], p["n"]);
    }
    if (name == "exp_example") {
        auto p = merge_params(name, {{"gain", 0.5}, {"slope", 1.2}, {"offset", 0.83}}, params);
        return make_exp_example(p["gain"], p["slope"], p["offset"]);
    }
    throw std::invalid_argument("unknown model '" + name + "'");
}

DuhemModel model_from_json(const nlohmann::json& spec) {
    if (!spec.is_object()) throw std::invalid_argument("model spec must be an object");
    for (const auto& [key, _] : spec.items())
        if (key != "model" && key != "params")
            throw std::invalid_argument("unknown key '" + key + "' in model spec");
    if (!spec.contains("model") || !spec["model"].is_string())
        throw std::invalid_argument("model spec requires a string 'model'");
    Params params;
    if (spec.contains("params")) {
        if (!spec["params"].is_object()) throw std::invalid_argument("'params' must be an object");
        for (const auto& [key, value] : spec["params"].items()) {
            if (!value.is_number()) throw std::invalid_argument("parameter '" + key + "' must be numeric");
            params[key] = value.get<double>();
        }
    }
    return make_model(spec["model"].get<std::string>(), params);
}

double smoothness_defect(const DuhemModel& model, const PhasePoint& p, double h) {
    double worst = 0.0;
    auto probe = [&](const RateFunction& f) {
        auto d_sigma = [&](double step) {
            return (f(p.sigma + step, p.xi) - f(p.sigma - step, p.xi)) / (2.0 * step);
        };
        auto d_xi = [&](double step) {
            return (f(p.sigma, p.xi + step) - f(p.sigma, p.xi - step)) / (2.0 * step);
        };
        for (auto d : {std::function<double(double)>(d_sigma), std::function<double(double)>(d_xi)}) {
            const double coarse = d(h);
            const double fine = d(0.5 * h);
            worst = std::max(worst, std::abs(coarse - fine) / (1.0 + std::abs(fine)));
        }
    };
    probe([&](double s, double x) { return model.f1(s, x); });
    probe([&](double s, double x) { return model.f2(s, x); });
    return worst;
}

}  // namespace duhem
