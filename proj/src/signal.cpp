#include "duhem/signal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace duhem {

InputSignal::InputSignal(std::vector<Breakpoint> breakpoints) : breakpoints_(std::move(breakpoints)) {
    if (breakpoints_.empty()) throw std::invalid_argument("input signal needs at least one breakpoint");
    if (breakpoints_.front().t != 0.0) throw std::invalid_argument("input signal must start at t = 0");
    for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
        if (!std::isfinite(breakpoints_[i].t) || !std::isfinite(breakpoints_[i].u))
            throw std::invalid_argument("input signal breakpoint " + std::to_string(i) + " is not finite");
        if (i > 0 && !(breakpoints_[i].t > breakpoints_[i - 1].t))
            throw std::invalid_argument("input signal times must be strictly increasing");
    }
}

double InputSignal::value(double t) const {
    if (t < start_time() || t > end_time())
        throw std::out_of_range("input signal evaluated outside its time range");
    auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t,
                               [](double v, const Breakpoint& b) { return v < b.t; });
    if (it == breakpoints_.end()) return breakpoints_.back().u;
    const auto& right = *it;
    const auto& left = *(it - 1);
    const double w = (t - left.t) / (right.t - left.t);
    return left.u + w * (right.u - left.u);
}

double InputSignal::segment_rate(std::size_t i) const {
    const auto& a = breakpoints_.at(i);
    const auto& b = breakpoints_.at(i + 1);
    return (b.u - a.u) / (b.t - a.t);
}

double InputSignal::total_variation() const {
    double tv = 0.0;
    for (std::size_t i = 1; i < breakpoints_.size(); ++i)
        tv += std::abs(breakpoints_[i].u - breakpoints_[i - 1].u);
    return tv;
}

InputSignal rate_reparameterize(const InputSignal& input, const InputSignal& warp) {
    const auto knots = warp.breakpoints();
    if (knots.front().u != 0.0) throw std::invalid_argument("warp must map 0 to 0");
    for (std::size_t i = 1; i < knots.size(); ++i)
        if (!(knots[i].u > knots[i - 1].u)) throw std::invalid_argument("warp must be strictly increasing");
    if (warp.end_time() < input.end_time())
        throw std::invalid_argument("warp does not cover the input's time range");

    // Old-time stamps: input breakpoints plus interior warp knots.
    std::vector<double> times;
    for (const auto& b : input.breakpoints()) times.push_back(b.t);
    for (const auto& k : knots)
        if (k.t > 0.0 && k.t < input.end_time()) times.push_back(k.t);
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());

    std::vector<Breakpoint> out;
    out.reserve(times.size());
    for (double t : times) out.push_back({warp.value(t), input.value(t)});
    out.front().t = 0.0;
    return InputSignal(std::move(out));
}

std::uint64_t Rng::next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

int Rng::uniform_int(int lo, int hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<int>(next() % span);
}

namespace signals {

InputSignal ramp(double u0, double u1, double duration) {
    if (!(duration > 0.0)) throw std::invalid_argument("ramp duration must be > 0");
    return InputSignal({{0.0, u0}, {duration, u1}});
}

InputSignal triangle(double amplitude, double period, int cycles, double offset) {
    if (!(period > 0.0) || cycles < 1) throw std::invalid_argument("triangle needs period > 0 and cycles >= 1");
    std::vector<Breakpoint> bps{{0.0, offset}};
    for (int c = 0; c < cycles; ++c) {
        const double t0 = c * period;
        bps.push_back({t0 + 0.25 * period, offset + amplitude});
        bps.push_back({t0 + 0.75 * period, offset - amplitude});
        bps.push_back({t0 + period, offset});
    }
    return InputSignal(std::move(bps));
}

InputSignal sine_sampled(double amplitude, double period, int cycles, int chords_per_period, double offset) {
    if (!(period > 0.0) || cycles < 1 || chords_per_period < 4)
        throw std::invalid_argument("sine_sampled needs period > 0, cycles >= 1, chords >= 4");
    std::vector<Breakpoint> bps;
    const int n = cycles * chords_per_period;
    bps.reserve(n + 1);
    for (int i = 0; i <= n; ++i) {
        const double t = period * static_cast<double>(i) / chords_per_period;
        const double phase = 2.0 * std::numbers::pi * static_cast<double>(i % chords_per_period) / chords_per_period;
        bps.push_back({t, offset + amplitude * std::sin(phase)});
    }
    return InputSignal(std::move(bps));
}

InputSignal random_piecewise_linear(Rng& rng, double u0, const RandomSignalOptions& o) {
    const int count = rng.uniform_int(o.min_breakpoints, o.max_breakpoints);
    std::vector<Breakpoint> bps{{0.0, u0}};
    double t = 0.0;
    double u = u0;
    for (int i = 1; i < count; ++i) {
        const double next_u = rng.uniform(u0 - o.radius, u0 + o.radius);
        const double speed = rng.uniform(o.min_speed, o.max_speed);
        const double dt = std::max(std::abs(next_u - u) / speed, 1e-3);
        t += dt;
        u = next_u;
        bps.push_back({t, u});
    }
    return InputSignal(std::move(bps));
}

InputSignal hold_until(const InputSignal& input, double horizon) {
    std::vector<Breakpoint> bps(input.breakpoints().begin(), input.breakpoints().end());
    if (horizon > bps.back().t) bps.push_back({horizon, bps.back().u});
    return InputSignal(std::move(bps));
}

}  // namespace signals
}  // namespace duhem
