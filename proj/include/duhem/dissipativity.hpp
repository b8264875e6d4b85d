#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "duhem/curves.hpp"
#include "duhem/model.hpp"
#include "duhem/report.hpp"
#include "duhem/simulate.hpp"
#include "duhem/storage.hpp"

namespace duhem {

// Grid check of the sign condition on F: F >= 0 below the anhysteresis curve
// and F < 0 above it. Off-curve points within 1e-6 of the curve are skipped;
// above the curve F <= -1e-12 is demanded.
VerificationReport check_assumption_A(const DuhemModel& model, const Rectangle& region,
                                      std::size_t resolution = 200);

enum class Difference { forward, backward };

struct DissipationOptions {
    double step = 1e-3;     // simulation step in the input variable
    double tol = -1.0;      // < 0 selects 1e-6 + 10 step
    Difference difference = Difference::forward;
    StorageOptions storage = coarse_storage();

    // H along a trajectory is evaluated with a 1e-2 traversing-curve step.
    static StorageOptions coarse_storage() {
        StorageOptions o;
        o.curve.step = 1e-2;
        return o;
    }
};

struct DissipationResult {
    VerificationReport report;
    Trajectory trajectory;
    std::vector<double> storage;  // H at each trajectory sample
};

// Simulates the operator, evaluates H at every sample and checks the
// difference quotient of H against the supply rate y u'. Forward differences
// use (H[i+1] - H[i]) / dt <= y[i] u'; backward ones (H[i] - H[i-1]) / dt <= y[i] u'.
DissipationResult verify_dissipation(const DuhemModel& model, const InputSignal& input, double y0,
                                     const DissipationOptions& options = {});

struct SupplySeries {
    std::vector<double> integral;        // running int y u' dt, trapezoid in u
    std::vector<double> running_minimum;
    double minimum = 0.0;
};

// Trapezoid accumulation of the clockwise supply. Throws std::invalid_argument
// for fewer than two samples.
SupplySeries cw_supply_integral(const Trajectory& trajectory);

// Supply integral increments between consecutive cycle boundaries, i.e.
// S(t_{k+1}) - S(t_k) for the trajectory samples at those times.
std::vector<double> per_cycle_supply(const Trajectory& trajectory, const std::vector<double>& boundaries);

// The battery of checks run by the `verify` command for one model.
struct BatteryOptions {
    Rectangle region;              // working region for the grid checks
    double lemma1_epsilon = 1e-3;
    std::size_t grid_resolution = 200;
    double step = 1e-3;
    double tol = -1.0;             // < 0 selects 1e-6 + 10 step
    int random_inputs = 20;
    std::uint64_t seed = 1;
    std::vector<double> cycle_boundaries;  // empty: skip the loop checks
};

struct BatteryResult {
    std::vector<VerificationReport> reports;
    Trajectory trajectory;  // response to the configured input
    bool passed() const;
};

// Default working region for a catalog model: Dahl |sigma| <= 0.9 Fc, Bouc-Wen
// |sigma| <= 0.9 (alpha / (beta + zeta))^(1/n), exp_example |sigma| <= 4; the
// input range is [-5, 5] except [-4, 4] for exp_example.
Rectangle default_region(const DuhemModel& model);

enum class Orientation { clockwise, counterclockwise, degenerate };

const char* to_string(Orientation o);

struct LoopResult {
    Orientation orientation = Orientation::degenerate;
    double signed_area = 0.0;  // oint y du over the last full cycle
    std::size_t first_sample = 0;
    std::size_t last_sample = 0;
};

// Finds the last closed input cycle (the u-path leaves a value, turns at
// least twice and returns to it) and classifies it by the sign of oint y du.
// An input that never moves counts as a zero-amplitude cycle (degenerate).
// Throws std::invalid_argument when the trajectory has no closed cycle.
LoopResult loop_orientation(const Trajectory& trajectory);

// Existence conditions (lambda = 0), assumption (A), intersection hypotheses,
// forward dissipation on `input` and on seeded random inputs, backward
// dissipation on `input`, supply lower bound -H(y0, u0) and, when cycle
// boundaries are given, clockwise orientation of the last cycle plus
// convergence of the per-cycle supply (|increment change| < 1e-4 after 3 cycles).
BatteryResult run_battery(const DuhemModel& model, const InputSignal& input, double y0,
                          const BatteryOptions& options);

}  // namespace duhem
