#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "duhem/config.hpp"
#include "duhem/csv.hpp"
#include "duhem/curves.hpp"
#include "duhem/dissipativity.hpp"
#include "duhem/mechsim.hpp"
#include "duhem/simulate.hpp"
#include "duhem/storage.hpp"

namespace duhem::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Options shared by every model-driven subcommand. Precedence: --config file,
// then --model/--preset, then individual flags.
struct CommonOptions {
    std::string config_path;
    std::string model;
    std::string preset;
    std::vector<std::string> params;
    std::string out_dir;
    std::string generator;
    std::optional<double> y0, step, quad_tol, tol, amplitude, period, offset, u0, u1, duration;
    std::optional<int> cycles, random_inputs;
    std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* app, CommonOptions& o) {
    app->add_option("--config", o.config_path, "JSON run configuration")->check(CLI::ExistingFile);
    app->add_option("--model", o.model, "dahl | boucwen | exp_example");
    app->add_option("--preset", o.preset, "fig1 (dahl) | fig2 (boucwen)");
    app->add_option("--param", o.params, "model parameter override NAME=VALUE")->allow_extra_args(false);
    app->add_option("--out", o.out_dir, "output directory (default: stdout)");
    app->add_option("--generator", o.generator, "input generator: ramp | triangle | sine");
    app->add_option("--amplitude", o.amplitude);
    app->add_option("--period", o.period);
    app->add_option("--cycles", o.cycles);
    app->add_option("--offset", o.offset);
    app->add_option("--u0", o.u0);
    app->add_option("--u1", o.u1);
    app->add_option("--duration", o.duration);
    app->add_option("--y0", o.y0, "initial output");
    app->add_option("--step", o.step, "integration step in the input variable");
    app->add_option("--quad-tol", o.quad_tol);
    app->add_option("--tol", o.tol, "dissipation tolerance (default 1e-6 + 10 step)");
    app->add_option("--seed", o.seed);
    app->add_option("--random-inputs", o.random_inputs);
}

RunConfig resolve(const CommonOptions& o) {
    json j = json::object();
    if (!o.config_path.empty()) {
        std::ifstream in(o.config_path);
        try {
            j = json::parse(in);
        } catch (const json::parse_error& e) {
            throw ConfigError(std::string("cannot parse config: ") + e.what());
        }
    }
    if (!o.model.empty()) j["model"] = o.model;
    if (!o.preset.empty()) j["preset"] = o.preset;
    RunConfig c = parse_config(j);

    for (const auto& kv : o.params) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw ConfigError("--param expects NAME=VALUE, got '" + kv + "'");
        try {
            c.params[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
        } catch (const std::exception&) {
            throw ConfigError("--param value is not a number: '" + kv + "'");
        }
    }
    if (!o.generator.empty()) c.input.generator = o.generator;
    if (o.amplitude) c.input.amplitude = *o.amplitude;
    if (o.period) c.input.period = *o.period;
    if (o.cycles) c.input.cycles = *o.cycles;
    if (o.offset) c.input.offset = *o.offset;
    if (o.u0) c.input.u0 = *o.u0;
    if (o.u1) c.input.u1 = *o.u1;
    if (o.duration) c.input.duration = *o.duration;
    if (o.y0) c.y0 = *o.y0;
    if (o.step) c.step = *o.step;
    if (o.quad_tol) c.quad_tol = *o.quad_tol;
    if (o.tol) c.tol = *o.tol;
    if (o.seed) c.seed = *o.seed;
    if (o.random_inputs) c.random_inputs = *o.random_inputs;
    if (!o.out_dir.empty()) c.output_dir = o.out_dir;
    if (!(c.step > 0.0)) throw ConfigError("step must be > 0");
    // Round-trip through the strict parser to validate the merged result.
    return parse_config(to_json(c));
}

// Writes to <dir>/<name> when an output directory was requested, else to `fallback`.
void emit(const std::string& dir, const std::string& name, std::ostream& fallback,
          const std::function<void(std::ostream&)>& write) {
    if (dir.empty()) {
        write(fallback);
        return;
    }
    fs::create_directories(dir);
    std::ofstream file(fs::path(dir) / name);
    if (!file) throw std::runtime_error("cannot write " + (fs::path(dir) / name).string());
    write(file);
}

void write_trajectory(std::ostream& os, const Trajectory& traj) {
    csv::write_header(os, {"t", "u", "y"});
    for (const auto& s : traj.samples) csv::write_row(os, {s.t, s.u, s.y});
}

std::vector<double> cycle_boundaries(const InputSpec& spec) {
    std::vector<double> b;
    if (spec.generator == "triangle" || spec.generator == "sine")
        for (int k = 0; k <= spec.cycles; ++k) b.push_back(k * spec.period);
    return b;
}

json storage_json(const StorageEvaluation& e) {
    return {{"sigma", e.point.sigma},
            {"xi", e.point.xi},
            {"lambda_star", e.lambda_star},
            {"anhysteresis_integral", e.anhysteresis_integral},
            {"traverse_integral", e.traverse_integral},
            {"value", e.value}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Duhem hysteresis operators: simulation, storage functions and clockwise dissipativity checks"};
    app.require_subcommand(1);

    CommonOptions sim_o, curve_o, storage_o, sweep_o, verify_o, loops_o;
    auto* sim = app.add_subcommand("simulate", "simulate a model; CSV t,u,y");
    add_common(sim, sim_o);

    auto* curves = app.add_subcommand("curves", "traversing curve through a point; CSV tau,omega,f_an");
    add_common(curves, curve_o);
    double c_sigma = 0.0, c_xi = 0.0;
    std::optional<double> tau_min, tau_max;
    int c_samples = 401;
    bool c_lemma1 = false;
    double c_epsilon = 1e-3;
    curves->add_option("--sigma", c_sigma);
    curves->add_option("--xi", c_xi);
    curves->add_option("--tau-min", tau_min);
    curves->add_option("--tau-max", tau_max);
    curves->add_option("--samples", c_samples)->check(CLI::Range(2, 10'000'000));
    curves->add_flag("--lemma1", c_lemma1, "also check the intersection hypotheses (JSON report)");
    curves->add_option("--epsilon", c_epsilon);

    auto* storage = app.add_subcommand("storage", "clockwise storage at a point; JSON");
    add_common(storage, storage_o);
    double s_sigma = 0.0, s_xi = 0.0;
    storage->add_option("--sigma", s_sigma);
    storage->add_option("--xi", s_xi);

    auto* sweep = app.add_subcommand("sweep", "storage profile over the output; CSV y,H");
    add_common(sweep, sweep_o);
    double w_xi = 0.0;
    std::optional<double> y_min, y_max;
    int w_points = 201;
    sweep->add_option("--xi", w_xi);
    sweep->add_option("--y-min", y_min);
    sweep->add_option("--y-max", y_max);
    sweep->add_option("--points", w_points)->check(CLI::Range(2, 10'000'000));

    auto* verify = app.add_subcommand("verify", "run the verification battery; JSON reports");
    add_common(verify, verify_o);

    auto* loops = app.add_subcommand("loops", "input-output loop of a preset; CSV u,y");
    add_common(loops, loops_o);

    auto* mech = app.add_subcommand("mech", "mass with Dahl friction; CSV t,x1,x2,x3,V");
    MechParams mp;
    MechState init{1.0, 0.0, 0.0};
    double horizon = 100.0, mech_step = 1e-3, mech_tol = 1e-4;
    std::string mode = "free", mech_out;
    int stride = 1;
    bool mech_check = false;
    mech->add_option("--m", mp.m);
    mech->add_option("--d", mp.d);
    mech->add_option("--k", mp.k);
    mech->add_option("--rho", mp.rho);
    mech->add_option("--fc", mp.fc);
    mech->add_option("--x1", init.x1);
    mech->add_option("--x2", init.x2);
    mech->add_option("--x3", init.x3);
    mech->add_option("--horizon", horizon);
    mech->add_option("--step", mech_step);
    mech->add_option("--mode", mode)->check(CLI::IsMember({"free", "feedback"}));
    mech->add_option("--stride", stride, "write every n-th sample")->check(CLI::PositiveNumber);
    mech->add_option("--out", mech_out, "output directory (default: stdout)");
    mech->add_flag("--check", mech_check, "verify the Lyapunov decrease; exit 1 on failure");
    mech->add_option("--tol", mech_tol);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sim->parsed()) {
            const RunConfig c = resolve(sim_o);
            const Trajectory traj = simulate(make_model(c), make_input(c.input), c.y0, c.step);
            emit(sim_o.out_dir, "trajectory.csv", out, [&](std::ostream& os) { write_trajectory(os, traj); });
            return 0;
        }
        if (curves->parsed()) {
            const RunConfig c = resolve(curve_o);
            const DuhemModel model = make_model(c);
            const double lo = tau_min.value_or(c_xi - 2.0);
            const double hi = tau_max.value_or(c_xi + 2.0);
            CurveOptions copts;
            copts.step = c.step;
            const TraversingCurve curve = traversing_curve(model, {c_sigma, c_xi}, lo, hi, copts);
            if (curve.truncated())
                err << "warning: traversing curve truncated ("
                    << (curve.left().truncated() ? curve.left().exit_note() : curve.right().exit_note()) << ")\n";
            if (!c_lemma1 || !curve_o.out_dir.empty()) {
                emit(curve_o.out_dir, "curve.csv", out, [&](std::ostream& os) {
                    csv::write_header(os, {"tau", "omega", "f_an"});
                    for (int i = 0; i < c_samples; ++i) {
                        const double tau = lo + (hi - lo) * i / (c_samples - 1);
                        if (tau < curve.tau_min() || tau > curve.tau_max()) continue;
                        csv::write_row(os, {tau, curve(tau), anhysteresis(model, tau)});
                    }
                });
            }
            if (c_lemma1) {
                const VerificationReport rep = check_lemma1(model, default_region(model), c_epsilon);
                emit(curve_o.out_dir, "lemma1.json", out,
                     [&](std::ostream& os) { os << to_json(rep).dump(2) << '\n'; });
                return rep.passed ? 0 : 1;
            }
            return 0;
        }
        if (storage->parsed()) {
            const RunConfig c = resolve(storage_o);
            const DuhemModel model = make_model(c);
            StorageOptions so;
            so.quad_tol = c.quad_tol;
            const StorageEvaluation e = storage_cw(model, {s_sigma, s_xi}, so);
            json j = storage_json(e);
            j["model"] = model.id();
            if (model.id() == "dahl" && model.param("r") == 1.0)
                j["closed_form"] = storage_dahl_closed_form(s_sigma, model.param("rho"), model.param("Fc"));
            emit(storage_o.out_dir, "storage.json", out, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
            return 0;
        }
        if (sweep->parsed()) {
            const RunConfig c = resolve(sweep_o);
            const DuhemModel model = make_model(c);
            const Rectangle region = default_region(model);
            const double lo = y_min.value_or(region.sigma_lo);
            const double hi = y_max.value_or(region.sigma_hi);
            StorageOptions so;
            so.quad_tol = c.quad_tol;
            emit(sweep_o.out_dir, "sweep.csv", out, [&](std::ostream& os) {
                csv::write_header(os, {"y", "H"});
                for (int i = 0; i < w_points; ++i) {
                    const double y = lo + (hi - lo) * i / (w_points - 1);
                    csv::write_row(os, {y, storage_cw(model, {y, w_xi}, so).value});
                }
            });
            return 0;
        }
        if (verify->parsed()) {
            const RunConfig c = resolve(verify_o);
            const DuhemModel model = make_model(c);
            BatteryOptions bo;
            bo.region = default_region(model);
            bo.step = c.step;
            bo.tol = c.tol;
            bo.seed = c.seed;
            bo.random_inputs = c.random_inputs;
            bo.cycle_boundaries = cycle_boundaries(c.input);
            const BatteryResult result = run_battery(model, make_input(c.input), c.y0, bo);
            for (const auto& r : result.reports)
                out << (r.passed ? "PASS " : "FAIL ") << r.name << " worst=" << csv::format(r.worst_violation)
                    << " tol=" << csv::format(r.tolerance) << '\n';
            const std::string dir = c.output_dir;
            fs::create_directories(dir);
            json doc{{"model", model.id()}, {"config", to_json(c)}, {"passed", result.passed()},
                     {"reports", to_json(result.reports)}};
            std::ofstream(fs::path(dir) / "reports.json") << doc.dump(2) << '\n';
            std::ofstream loops_csv(fs::path(dir) / "loops.csv");
            csv::write_header(loops_csv, {"u", "y"});
            for (const auto& s : result.trajectory.samples) csv::write_row(loops_csv, {s.u, s.y});
            return result.passed() ? 0 : 1;
        }
        if (loops->parsed()) {
            const RunConfig c = resolve(loops_o);
            const Trajectory traj = simulate(make_model(c), make_input(c.input), c.y0, c.step);
            emit(loops_o.out_dir, "loops.csv", out, [&](std::ostream& os) {
                csv::write_header(os, {"u", "y"});
                for (const auto& s : traj.samples) csv::write_row(os, {s.u, s.y});
            });
            return 0;
        }
        if (mech->parsed()) {
            mp.law = mode == "feedback" ? ForceLaw::feedback : ForceLaw::free;
            try {
                mp.validate();
                if (!(std::abs(init.x3) < mp.fc)) throw std::invalid_argument("|x3| must be < Fc");
                if (!(mech_step > 0.0) || !(horizon >= 0.0)) throw std::invalid_argument("bad step or horizon");
            } catch (const std::invalid_argument& e) {
                throw ConfigError(e.what());
            }
            const MechSeries series = simulate_mech(mp, init, horizon, mech_step);
            emit(mech_out, "mech.csv", out, [&](std::ostream& os) {
                csv::write_header(os, {"t", "x1", "x2", "x3", "V"});
                for (std::size_t i = 0; i < series.t.size(); ++i) {
                    if (i % static_cast<std::size_t>(stride) != 0 && i + 1 != series.t.size()) continue;
                    const MechState& x = series.state[i];
                    csv::write_row(os, {series.t[i], x.x1, x.x2, x.x3, series.V[i]});
                }
            });
            if (mech_check) {
                const auto reports = lyapunov_check(series, mp, mech_tol, mech_tol * series.V.front());
                bool ok = true;
                for (const auto& r : reports) {
                    err << (r.passed ? "PASS " : "FAIL ") << r.name << " worst=" << csv::format(r.worst_violation)
                        << '\n';
                    ok = ok && r.passed;
                }
                return ok ? 0 : 1;
            }
            return 0;
        }
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

}  // namespace duhem::cli
