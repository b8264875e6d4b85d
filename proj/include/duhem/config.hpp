#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "duhem/model.hpp"
#include "duhem/signal.hpp"

namespace duhem {

// Thrown for malformed or inconsistent run configuration (CLI exit code 2).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct InputSpec {
    // "breakpoints", "ramp", "triangle" or "sine"
    std::string generator = "triangle";
    std::vector<Breakpoint> breakpoints;
    double u0 = 0.0;
    double u1 = 1.0;
    double duration = 1.0;
    double amplitude = 2.0;
    double period = 1.0;
    int cycles = 5;
    int chords = 256;
    double offset = 0.0;

    bool operator==(const InputSpec& other) const = default;
};

struct RunConfig {
    std::string model;
    Params params;
    std::optional<std::string> preset;
    InputSpec input;
    double y0 = 0.0;
    double step = 1e-3;
    double quad_tol = 1e-8;
    double tol = -1.0;  // < 0: 1e-6 + 10 step
    std::uint64_t seed = 1;
    int random_inputs = 20;
    std::string output_dir = ".";

    bool operator==(const RunConfig& other) const = default;
};

// Strict parse: unknown keys, wrong types and unknown generators throw ConfigError.
RunConfig parse_config(const nlohmann::json& j);

// Canonical serialisation; parse_config(to_json(c)) == c and
// to_json(parse_config(to_json(c))) == to_json(c).
nlohmann::json to_json(const RunConfig& config);
nlohmann::json to_json(const InputSpec& input);

InputSpec parse_input(const nlohmann::json& j);
InputSignal make_input(const InputSpec& spec);

// Named parameter sets reproducing the two hysteresis-loop illustrations:
// "fig1" is the Dahl model with Fc = 0.75, rho = 1.5, r = 3 and "fig2" the
// Bouc-Wen model with alpha = beta = zeta = 1, n = 3, both driven by a
// five-cycle sampled sine of amplitude 2. Throws ConfigError for other names
// or a preset that does not belong to `model`.
RunConfig preset_config(const std::string& model, const std::string& preset);

DuhemModel make_model(const RunConfig& config);

}  // namespace duhem
