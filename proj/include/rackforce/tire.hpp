#pragma once

#include <cmath>
#include <string>

#include "rackforce/errors.hpp"
#include "rackforce/params.hpp"
#include "rackforce/vehicle.hpp"

namespace rackforce {

/// Front and rear slip angles [rad]. Positive slip produces positive lateral force.
struct SlipAngles {
    double alpha_f = 0.0;
    double alpha_r = 0.0;
};

/**
 * @brief Small-angle slip kinematics of the single-track model.
 *
 * alpha_f = delta - (v + l_f*psi_dot)/u
 * alpha_r =       - (v - l_r*psi_dot)/u
 *
 * The sign convention makes the lateral loop restoring: a tire pushed sideways
 * develops a force opposing the drift.
 */
inline SlipAngles slip_angles(const VehicleState& s, double u, double delta,
                              const VehicleParams& p) {
    require_speed(u);
    return {delta - (s.v + p.l_f * s.psi_dot) / u, -(s.v - p.l_r * s.psi_dot) / u};
}

/// Arctangent slip kinematics, exact at large velocity angles.
inline SlipAngles slip_angles_exact(const VehicleState& s, double u, double delta,
                                    const VehicleParams& p) {
    require_speed(u);
    return {delta - std::atan((s.v + p.l_f * s.psi_dot) / u),
            -std::atan((s.v - p.l_r * s.psi_dot) / u)};
}

/**
 * @brief One tire's lateral output set.
 *
 * M_zf is the aligning moment of a single front tire about its steering axis;
 * rear tires report zero trail and moment because only front moments load the
 * rack. Forces are per tire.
 */
struct TireOutputs {
    double F_y = 0.0;     ///< lateral force [N]
    double t_p = 0.0;     ///< pneumatic trail [m]
    double M_zf = 0.0;    ///< steering-axis aligning moment [N m]
};

namespace detail {

inline double sgn(double x) { return (x > 0.0) - (x < 0.0); }

inline void require_load(double F_z, const char* who) {
    if (!(F_z > 0.0))
        throw InvalidInputError(std::string(who) + ": normal load must be positive, got " +
                                std::to_string(F_z));
}

inline constexpr double k_half_pi = 1.5707963267948966;

} // namespace detail

/**
 * @brief Linear tire with load-sensitive pneumatic trail.
 *
 * F_y = C_alpha * alpha. Front tires additionally report
 * t_p  = t_p0 * (1 - sgn(alpha) * C_af/(3*mu*F_z) * tan(alpha))
 * M_zf = -(t_p + t_m) * F_y
 * The trail shrinks as the contact patch approaches full sliding and goes
 * negative past it, which is what folds saturation awareness into an
 * otherwise linear force law.
 */
inline TireOutputs lt_tire(double alpha, double F_z, const TireParamsLT& tp, bool is_front,
                           double t_m) {
    detail::require_load(F_z, "lt_tire");
    if (!(std::abs(alpha) < detail::k_half_pi))
        throw InvalidSlipError("lt_tire: |slip| = " + std::to_string(std::abs(alpha)) +
                               " rad reaches the tan singularity at pi/2");
    TireOutputs out;
    out.F_y = (is_front ? tp.C_af : tp.C_ar) * alpha;
    if (!is_front) return out;
    out.t_p = tp.t_p0 * (1.0 - detail::sgn(alpha) * tp.C_af / (3.0 * tp.mu * F_z) * std::tan(alpha));
    out.M_zf = -(out.t_p + t_m) * out.F_y;
    return out;
}

/// Full-sliding onset scale of the brush model: sigma = theta_s * |alpha|.
inline double bt_theta_s(const TireParamsBT& tp, double F_z) {
    detail::require_load(F_z, "bt_theta_s");
    return 2.0 / 3.0 * tp.c_p * tp.a * tp.a / (tp.mu * F_z);
}

/**
 * @brief Brush tire with parabolic pressure distribution.
 *
 * With sigma = theta_s * |alpha|:
 *   F_y = sgn(alpha) * mu * F_z * (3*sigma - 3*sigma^2 + sigma^3), capped at
 *         mu*F_z once sigma >= 1 (full sliding).
 *   t_p = (a/3) * (1 - sigma)^3 / (1 - sigma + sigma^2/3), zero past sigma = 1.
 *   M_zf = -(t_p + t_m) * F_y  (front only)
 *
 * Both branches meet C^1-continuously at sigma = 1, and |F_y| <= mu*F_z holds
 * for every slip angle. The small-slip stiffness is 2*c_p*a^2.
 */
inline TireOutputs bt_tire(double alpha, double F_z, const TireParamsBT& tp, bool is_front,
                           double t_m) {
    const double theta_s = bt_theta_s(tp, F_z);
    const double sigma = theta_s * std::abs(alpha);
    const double mu_fz = tp.mu * F_z;

    TireOutputs out;
    if (sigma < 1.0)
        out.F_y = detail::sgn(alpha) * mu_fz * (3.0 * sigma - 3.0 * sigma * sigma + sigma * sigma * sigma);
    else
        out.F_y = detail::sgn(alpha) * mu_fz;
    if (!is_front) return out;

    if (sigma < 1.0) {
        const double om = 1.0 - sigma;
        out.t_p = tp.a / 3.0 * om * om * om / (1.0 - sigma + sigma * sigma / 3.0);
    }
    out.M_zf = -(out.t_p + t_m) * out.F_y;
    return out;
}

} // namespace rackforce
