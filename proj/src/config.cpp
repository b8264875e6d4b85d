#include "duhem/config.hpp"

#include <algorithm>
#include <set>

namespace duhem {

namespace {

using nlohmann::json;

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + " must be a JSON object");
    for (const auto& [key, _] : j.items())
        if (!allowed.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
}

double number(const json& j, const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number()) throw ConfigError(std::string("'") + key + "' must be a number");
    return j[key].get<double>();
}

int integer(const json& j, const char* key, int fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number_integer()) throw ConfigError(std::string("'") + key + "' must be an integer");
    return j[key].get<int>();
}

std::set<std::string> generator_keys(const std::string& generator) {
    if (generator == "breakpoints") return {"generator", "breakpoints"};
    if (generator == "ramp") return {"generator", "u0", "u1", "duration"};
    if (generator == "triangle") return {"generator", "amplitude", "period", "cycles", "offset"};
    if (generator == "sine") return {"generator", "amplitude", "period", "cycles", "chords", "offset"};
    throw ConfigError("unknown input generator '" + generator + "'");
}

}  // namespace

InputSpec parse_input(const json& j) {
    if (!j.is_object() || !j.contains("generator") || !j["generator"].is_string())
        throw ConfigError("input spec requires a string 'generator'");
    InputSpec spec;
    spec.generator = j["generator"].get<std::string>();
    reject_unknown(j, generator_keys(spec.generator), "input spec");
    if (spec.generator == "breakpoints") {
        if (!j.contains("breakpoints") || !j["breakpoints"].is_array())
            throw ConfigError("'breakpoints' must be an array of [t, u] pairs");
        for (const auto& b : j["breakpoints"]) {
            if (!b.is_array() || b.size() != 2 || !b[0].is_number() || !b[1].is_number())
                throw ConfigError("each breakpoint must be a [t, u] pair of numbers");
            spec.breakpoints.push_back({b[0].get<double>(), b[1].get<double>()});
        }
    }
    spec.u0 = number(j, "u0", spec.u0);
    spec.u1 = number(j, "u1", spec.u1);
    spec.duration = number(j, "duration", spec.duration);
    spec.amplitude = number(j, "amplitude", spec.amplitude);
    spec.period = number(j, "period", spec.period);
    spec.cycles = integer(j, "cycles", spec.cycles);
    spec.chords = integer(j, "chords", spec.chords);
    spec.offset = number(j, "offset", spec.offset);
    return spec;
}

json to_json(const InputSpec& spec) {
    json j;
    j["generator"] = spec.generator;
    if (spec.generator == "breakpoints") {
        j["breakpoints"] = json::array();
        for (const auto& b : spec.breakpoints) j["breakpoints"].push_back({b.t, b.u});
    } else if (spec.generator == "ramp") {
        j["u0"] = spec.u0;
        j["u1"] = spec.u1;
        j["duration"] = spec.duration;
    } else {
        j["amplitude"] = spec.amplitude;
        j["period"] = spec.period;
        j["cycles"] = spec.cycles;
        j["offset"] = spec.offset;
        if (spec.generator == "sine") j["chords"] = spec.chords;
    }
    return j;
}

InputSignal make_input(const InputSpec& spec) {
    try {
        if (spec.generator == "breakpoints") return InputSignal(spec.breakpoints);
        if (spec.generator == "ramp") return signals::ramp(spec.u0, spec.u1, spec.duration);
        if (spec.generator == "triangle")
            return signals::triangle(spec.amplitude, spec.period, spec.cycles, spec.offset);
        if (spec.generator == "sine")
            return signals::sine_sampled(spec.amplitude, spec.period, spec.cycles, spec.chords, spec.offset);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("invalid input: ") + e.what());
    }
    throw ConfigError("unknown input generator '" + spec.generator + "'");
}

RunConfig parse_config(const json& j) {
    reject_unknown(j,
                   {"model", "params", "preset", "input", "y0", "step", "quad_tol", "tol", "seed", "random_inputs",
                    "output_dir"},
                   "config");
    RunConfig c;
    if (j.contains("preset")) {
        if (!j["preset"].is_string()) throw ConfigError("'preset' must be a string");
        const std::string preset = j["preset"].get<std::string>();
        std::string model;
        if (j.contains("model") && j["model"].is_string())
            model = j["model"].get<std::string>();
        else if (preset == "fig1")
            model = "dahl";
        else if (preset == "fig2")
            model = "boucwen";
        else
            throw ConfigError("preset '" + preset + "' needs a 'model'");
        c = preset_config(model, preset);
    }
    if (j.contains("model")) {
        if (!j["model"].is_string()) throw ConfigError("'model' must be a string");
        c.model = j["model"].get<std::string>();
    }
    if (j.contains("params")) {
        if (!j["params"].is_object()) throw ConfigError("'params' must be an object");
        for (const auto& [key, value] : j["params"].items()) {
            if (!value.is_number()) throw ConfigError("parameter '" + key + "' must be a number");
            c.params[key] = value.get<double>();
        }
    }
    if (j.contains("input")) c.input = parse_input(j["input"]);
    c.y0 = number(j, "y0", c.y0);
    c.step = number(j, "step", c.step);
    c.quad_tol = number(j, "quad_tol", c.quad_tol);
    c.tol = number(j, "tol", c.tol);
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned()) throw ConfigError("'seed' must be a nonnegative integer");
        c.seed = j["seed"].get<std::uint64_t>();
    }
    c.random_inputs = integer(j, "random_inputs", c.random_inputs);
    if (j.contains("output_dir")) {
        if (!j["output_dir"].is_string()) throw ConfigError("'output_dir' must be a string");
        c.output_dir = j["output_dir"].get<std::string>();
    }
    if (c.model.empty()) throw ConfigError("config requires a model name");
    if (!(c.step > 0.0)) throw ConfigError("'step' must be > 0");
    if (!(c.quad_tol > 0.0)) throw ConfigError("'quad_tol' must be > 0");
    if (c.random_inputs < 0) throw ConfigError("'random_inputs' must be >= 0");
    return c;
}

json to_json(const RunConfig& c) {
    json j;
    j["model"] = c.model;
    j["params"] = json::object();
    for (const auto& [k, v] : c.params) j["params"][k] = v;
    if (c.preset) j["preset"] = *c.preset;
    j["input"] = to_json(c.input);
    j["y0"] = c.y0;
    j["step"] = c.step;
    j["quad_tol"] = c.quad_tol;
    j["tol"] = c.tol;
    j["seed"] = c.seed;
    j["random_inputs"] = c.random_inputs;
    j["output_dir"] = c.output_dir;
    return j;
}

RunConfig preset_config(const std::string& model, const std::string& preset) {
    RunConfig c;
    c.model = model;
    c.preset = preset;
    c.input.generator = "sine";
    c.input.amplitude = 2.0;
    c.input.period = 20.0;
    c.input.cycles = 5;
    c.input.chords = 256;
    if (preset == "fig1" && model == "dahl") {
        c.params = {{"rho", 1.5}, {"Fc", 0.75}, {"r", 3.0}};
    } else if (preset == "fig2" && model == "boucwen") {
        c.params = {{"alpha", 1.0}, {"beta", 1.0}, {"zeta", 1.0}, {"n", 3.0}};
    } else {
        throw ConfigError("unknown preset '" + preset + "' for model '" + model + "'");
    }
    return c;
}

DuhemModel make_model(const RunConfig& config) {
    try {
        return make_model(config.model, config.params);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

}  // namespace duhem
