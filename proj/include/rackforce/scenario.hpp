#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "rackforce/params.hpp"
#include "rackforce/signal.hpp"

namespace rackforce {

/// One runnable maneuver: driver inputs plus road description on a shared grid.
struct Scenario {
    std::string name;
    SignalTrace delta;    ///< road-wheel steering angle [rad]
    SignalTrace u;        ///< forward speed [m/s]
    RoadProfile road;
};

namespace detail {

inline constexpr double k_pi = 3.141592653589793;
inline constexpr double k_deg = k_pi / 180.0;

/// Quintic smoothstep: C^2 ramp from 0 at x<=0 to 1 at x>=1.
inline double smoothstep(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    return x * x * x * (10.0 + x * (-15.0 + 6.0 * x));
}

inline std::size_t sample_count(double duration_s, double rate_hz) {
    if (!(rate_hz > 0.0) || !(duration_s > 0.0))
        throw InvalidInputError("scenario: rate and duration must be positive");
    return static_cast<std::size_t>(std::llround(duration_s * rate_hz)) + 1;
}

} // namespace detail

/**
 * @brief Crowned-road crossing at moderate speed with gentle steering.
 *
 * The lateral slope ramps to +crown, holds, sweeps to -crown over crossing_s
 * (driving over the crown of the road), and holds. Steering is a small
 * sinusoid. Everything is zero through the lead-in so runs start at rest.
 */
struct Exp1Config {
    double rate_hz = 250.0;
    double duration_s = 16.0;
    double speed_kmh = 20.0;
    double lead_in_s = 2.0;
    double ramp_s = 1.0;
    double hold_s = 2.0;
    double crossing_s = 4.0;
    double crown_deg = 11.0;
    double steer_amp_deg = 5.0;
    double steer_period_s = 5.0;
};

inline Scenario gen_experiment1(const Exp1Config& c = {}) {
    const std::size_t n = detail::sample_count(c.duration_s, c.rate_hz);
    Scenario s{"exp1",
               make_constant_trace("delta", "rad", c.rate_hz, n, 0.0),
               make_constant_trace("speed", "m/s", c.rate_hz, n, c.speed_kmh / 3.6),
               {make_constant_trace("slope", "rad", c.rate_hz, n, 0.0), {}}};

    const double crown = c.crown_deg * detail::k_deg;
    const double amp = c.steer_amp_deg * detail::k_deg;
    const double t_ramp = c.lead_in_s;
    const double t_hold = t_ramp + c.ramp_s;
    const double t_cross = t_hold + c.hold_s;
    const double t_done = t_cross + c.crossing_s;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = s.delta.time_at(i);
        double theta = 0.0;
        if (t >= t_done)
            theta = -crown;
        else if (t >= t_cross)
            theta = crown * (1.0 - 2.0 * detail::smoothstep((t - t_cross) / c.crossing_s));
        else if (t >= t_hold)
            theta = crown;
        else if (t >= t_ramp)
            theta = crown * detail::smoothstep((t - t_ramp) / c.ramp_s);
        s.road.slope.samples[i] = theta;
        if (t >= c.lead_in_s && amp != 0.0)
            s.delta.samples[i] = amp * std::sin(2.0 * detail::k_pi * (t - c.lead_in_s) / c.steer_period_s);
    }
    return s;
}

/**
 * @brief Aggressive slalom on a constant lateral slope.
 *
 * The slope ramps to slope_deg and stays; after lead-in + ramp + settle the
 * steering runs a large sinusoid that drives the front tires deep into
 * saturation at slalom speed.
 */
struct Exp2Config {
    double rate_hz = 250.0;
    double duration_s = 24.0;
    double speed_kmh = 15.0;
    double lead_in_s = 2.0;
    double ramp_s = 1.0;
    double settle_s = 1.0;
    double slope_deg = 11.0;
    double steer_amp_deg = 60.0;
    double steer_period_s = 4.0;
};

inline Scenario gen_experiment2(const Exp2Config& c = {}) {
    const std::size_t n = detail::sample_count(c.duration_s, c.rate_hz);
    Scenario s{"exp2",
               make_constant_trace("delta", "rad", c.rate_hz, n, 0.0),
               make_constant_trace("speed", "m/s", c.rate_hz, n, c.speed_kmh / 3.6),
               {make_constant_trace("slope", "rad", c.rate_hz, n, 0.0), {}}};

    const double slope = c.slope_deg * detail::k_deg;
    const double amp = c.steer_amp_deg * detail::k_deg;
    const double t_ramp = c.lead_in_s;
    const double t_steer = t_ramp + c.ramp_s + c.settle_s;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = s.delta.time_at(i);
        double theta = slope;
        if (t < t_ramp)
            theta = 0.0;
        else if (t < t_ramp + c.ramp_s)
            theta = slope * detail::smoothstep((t - t_ramp) / c.ramp_s);
        s.road.slope.samples[i] = theta;
        if (t >= t_steer && amp != 0.0)
            s.delta.samples[i] = amp * std::sin(2.0 * detail::k_pi * (t - t_steer) / c.steer_period_s);
    }
    return s;
}

/**
 * @brief Cleat strip on a flat road.
 *
 * Thirteen rectangular cleats (four 1 cm, five 2 cm, four 3 cm high, all
 * equally long) spaced evenly along the track. Steering is either a sinusoid
 * or, with steer_hold set, a smooth ramp to a constant angle, which isolates
 * the cleat response from steering dynamics.
 */
struct Exp3Config {
    double rate_hz = 250.0;
    double duration_s = 26.0;
    double speed_kmh = 30.0;
    double lead_in_s = 2.0;
    double steer_amp_deg = 30.0;
    double steer_period_s = 4.0;
    bool steer_hold = false;
    double cleat_start_m = 30.0;
    double cleat_spacing_m = 12.0;
    double cleat_length_m = 0.04;
    std::vector<double> cleat_heights_m = {0.01, 0.01, 0.01, 0.01, 0.02, 0.02, 0.02,
                                           0.02, 0.02, 0.03, 0.03, 0.03, 0.03};
};

inline Scenario gen_experiment3(const Exp3Config& c = {}) {
    const std::size_t n = detail::sample_count(c.duration_s, c.rate_hz);
    Scenario s{"exp3",
               make_constant_trace("delta", "rad", c.rate_hz, n, 0.0),
               make_constant_trace("speed", "m/s", c.rate_hz, n, c.speed_kmh / 3.6),
               {make_constant_trace("slope", "rad", c.rate_hz, n, 0.0), {}}};

    const double amp = c.steer_amp_deg * detail::k_deg;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = s.delta.time_at(i);
        if (t < c.lead_in_s || amp == 0.0) continue;
        s.delta.samples[i] = c.steer_hold
                                 ? amp * detail::smoothstep(t - c.lead_in_s)
                                 : amp * std::sin(2.0 * detail::k_pi * (t - c.lead_in_s) / c.steer_period_s);
    }
    for (std::size_t i = 0; i < c.cleat_heights_m.size(); ++i)
        s.road.cleats.push_back({c.cleat_start_m + static_cast<double>(i) * c.cleat_spacing_m,
                                 c.cleat_heights_m[i], c.cleat_length_m});
    return s;
}

} // namespace rackforce
