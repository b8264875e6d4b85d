#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace duhem {

struct Breakpoint {
    double t = 0.0;
    double u = 0.0;

    bool operator==(const Breakpoint&) const = default;
};

// Piecewise-linear, hence absolutely continuous, input u(t). The first
// breakpoint sits at t = 0 and times strictly increase; u' is constant on
// each segment.
class InputSignal {
public:
    explicit InputSignal(std::vector<Breakpoint> breakpoints);

    std::span<const Breakpoint> breakpoints() const { return breakpoints_; }
    std::size_t segment_count() const { return breakpoints_.size() - 1; }
    double start_time() const { return breakpoints_.front().t; }
    double end_time() const { return breakpoints_.back().t; }

    // u(t) by linear interpolation; throws std::out_of_range outside [t0, t_last].
    double value(double t) const;

    // Slope of segment i (between breakpoints i and i + 1).
    double segment_rate(std::size_t i) const;

    // Total variation of u (arc length of the u-path).
    double total_variation() const;

private:
    std::vector<Breakpoint> breakpoints_;
};

// Returns u o warp^-1. `warp` is a strictly increasing piecewise-linear time
// map with warp(0) = 0 that covers the signal's time range. The result has a
// breakpoint at warp(t) for every input breakpoint and every warp knot inside
// the range, so its u-path is the input's u-path traversed at a new pace.
InputSignal rate_reparameterize(const InputSignal& input, const InputSignal& warp);

// Deterministic 64-bit generator (splitmix64) with a portable uniform mapping,
// so seeded signal families are identical on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next();
    double uniform();  // [0, 1)
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int uniform_int(int lo, int hi);  // inclusive

private:
    std::uint64_t state_;
};

namespace signals {

// u0 -> u1 linearly over [0, duration].
InputSignal ramp(double u0, double u1, double duration);

// Symmetric triangle wave about `offset`: offset -> offset + A -> offset - A -> offset,
// repeated `cycles` times, one cycle per `period`.
InputSignal triangle(double amplitude, double period, int cycles, double offset = 0.0);

// offset + A sin(2 pi t / period) approximated by `chords_per_period` linear chords.
InputSignal sine_sampled(double amplitude, double period, int cycles, int chords_per_period = 256,
                         double offset = 0.0);

// Piecewise-linear signal starting at u0 with between min_breakpoints and
// max_breakpoints breakpoints (inclusive), values uniform in [u0 - radius, u0 + radius]
// and segment durations |du| / speed with speed uniform in [min_speed, max_speed].
struct RandomSignalOptions {
    int min_breakpoints = 3;
    int max_breakpoints = 10;
    double radius = 3.0;
    double min_speed = 0.5;
    double max_speed = 3.0;
};
InputSignal random_piecewise_linear(Rng& rng, double u0, const RandomSignalOptions& options = {});

// Stretches a signal so it ends at `horizon`, holding the last value if it ends earlier.
InputSignal hold_until(const InputSignal& input, double horizon);

}  // namespace signals
}  // namespace duhem
