#pragma once

#include <cmath>
#include <string>

#include "rackforce/errors.hpp"
#include "rackforce/params.hpp"

namespace rackforce {

/// Lateral state of the single-track model.
struct VehicleState {
    double v = 0.0;        ///< lateral velocity at the CG [m/s]
    double psi_dot = 0.0;  ///< yaw rate [rad/s]
};

/// Time derivative of VehicleState.
struct StateDeriv {
    double dv = 0.0;
    double dpsi_dot = 0.0;
};

/// Axle-level forces driving the lateral dynamics [N].
struct AxleForces {
    double F_yf = 0.0;
    double F_yr = 0.0;
    double F_xf = 0.0;
};

/// Static normal load per tire [N].
struct NormalLoads {
    double F_zf = 0.0;
    double F_zr = 0.0;
};

inline void require_speed(double u) {
    if (!(u >= k_u_min))
        throw SpeedTooLowError("forward speed " + std::to_string(u) + " m/s is below the " +
                               std::to_string(k_u_min) + " m/s minimum");
}

/**
 * @brief Small-angle lateral dynamics on a laterally inclined road.
 *
 * m*(dv + u*psi_dot) = F_yf + F_yr - m*g*sin(theta)
 * I*dpsi_dot         = l_f*F_yf - l_r*F_yr
 *
 * The steering angle only enters through the forces here; the front force is
 * applied unrotated.
 */
inline StateDeriv deriv_small_angle(const VehicleState& s, const AxleForces& f, double u,
                                    double theta, const VehicleParams& p) {
    require_speed(u);
    StateDeriv d;
    d.dv = (f.F_yf + f.F_yr) / p.m - u * s.psi_dot - p.g * std::sin(theta);
    d.dpsi_dot = (p.l_f * f.F_yf - p.l_r * f.F_yr) / p.I;
    return d;
}

/**
 * @brief Full-trigonometry variant: front-axle forces rotated by the steering angle.
 *
 * m*(dv + u*psi_dot) = F_xf*sin(delta) + F_yf*cos(delta) + F_yr - m*g*sin(theta)
 * I*dpsi_dot         = l_f*(F_xf*sin(delta) + F_yf*cos(delta)) - l_r*F_yr
 */
inline StateDeriv deriv_full(const VehicleState& s, const AxleForces& f, double u, double theta,
                             double delta, const VehicleParams& p) {
    require_speed(u);
    const double front = f.F_xf * std::sin(delta) + f.F_yf * std::cos(delta);
    StateDeriv d;
    d.dv = (front + f.F_yr) / p.m - u * s.psi_dot - p.g * std::sin(theta);
    d.dpsi_dot = (p.l_f * front - p.l_r * f.F_yr) / p.I;
    return d;
}

/**
 * @brief Static axle load split, per tire, on a laterally inclined road.
 *
 * F_zf = m*g*l_r*cos(theta) / (2*(l_f + l_r)), rear analogous with l_f.
 */
inline NormalLoads normal_forces(double theta, const VehicleParams& p) {
    const double base = p.m * p.g * std::cos(theta) / (2.0 * p.wheelbase());
    return {base * p.l_r, base * p.l_f};
}

/**
 * @brief One classical Runge-Kutta step of the lateral state.
 *
 * deriv(tau, state) is evaluated at stage offsets tau in {0, dt/2, dt}; the
 * caller interpolates its driving inputs to those times. Throws NumericError
 * if any stage produces a non-finite derivative.
 */
template <class F>
VehicleState step_rk4(const VehicleState& y, F&& deriv, double dt) {
    const auto advance = [](const VehicleState& s, const StateDeriv& k, double h) {
        return VehicleState{s.v + h * k.dv, s.psi_dot + h * k.dpsi_dot};
    };
    const StateDeriv k1 = deriv(0.0, y);
    const StateDeriv k2 = deriv(0.5 * dt, advance(y, k1, 0.5 * dt));
    const StateDeriv k3 = deriv(0.5 * dt, advance(y, k2, 0.5 * dt));
    const StateDeriv k4 = deriv(dt, advance(y, k3, dt));

    VehicleState out;
    out.v = y.v + dt / 6.0 * (k1.dv + 2.0 * k2.dv + 2.0 * k3.dv + k4.dv);
    out.psi_dot = y.psi_dot + dt / 6.0 * (k1.dpsi_dot + 2.0 * k2.dpsi_dot + 2.0 * k3.dpsi_dot + k4.dpsi_dot);
    if (!std::isfinite(out.v) || !std::isfinite(out.psi_dot))
        throw NumericError("integration produced a non-finite state");
    return out;
}

} // namespace rackforce
