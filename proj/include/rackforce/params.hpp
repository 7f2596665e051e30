#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "rackforce/signal.hpp"

namespace rackforce {

/// Minimum forward speed (m/s) for which the slip kinematics are evaluated.
inline constexpr double k_u_min = 1.0;

/**
 * @brief Planar two-track vehicle data reduced to the single-track model.
 *
 * Masses and inertias are total-vehicle; tire parameters elsewhere are
 * per tire, so axle forces double the tire values.
 */
struct VehicleParams {
    double m = 1972.0;    ///< vehicle mass [kg]
    double I = 3600.0;    ///< yaw inertia [kg m^2]
    double l_f = 1.40;    ///< CG to front axle [m]
    double l_r = 1.48;    ///< CG to rear axle [m]
    double i_p = 7.0;     ///< steering ratio, rack force per axle aligning moment [1/m]
    double t_m = 0.03;    ///< mechanical trail (caster offset) [m]
    double g = 9.81;      ///< gravity [m/s^2]

    double wheelbase() const { return l_f + l_r; }
};

/// Linear tire: constant cornering stiffness, load-aware pneumatic trail.
struct TireParamsLT {
    double C_af = 60000.0;       ///< front cornering stiffness per tire [N/rad]
    double C_ar = 60000.0;       ///< rear cornering stiffness per tire [N/rad]
    double t_p0 = 1.0 / 30.0;    ///< nominal pneumatic trail [m]
    double mu = 1.0;             ///< friction coefficient
};

/// Brush tire: parabolic pressure distribution over a contact patch of half length a.
struct TireParamsBT {
    double c_p = 3.0e6;    ///< tread stiffness per unit length squared [N/m^2]
    double a = 0.1;        ///< contact patch half length [m]
    double mu = 1.0;       ///< friction coefficient
};

/// Sine Magic Formula block (lateral force).
struct MagicLateral {
    double B_y = 9.3;     ///< stiffness factor
    double C_y = 1.3;     ///< shape factor
    double d_y = 1.0;     ///< peak scale; D_y = d_y * F_cN
    double E_y = -0.3;    ///< curvature factor
    double S_Hy = 0.0;    ///< horizontal shift [rad]
    double S_Vy = 0.0;    ///< vertical shift [N]
};

/// Cosine Magic Formula block (trail). D_t = d_t * a is the total trail lever.
struct MagicTrail {
    double B_t = 6.0;
    double C_t = 2.2;
    double d_t = 19.0 / 30.0;
    double E_t = -1.0;
    double S_Ht = 0.0;
};

/// Residual aligning moment block; D_r = d_r * a * F_cN.
struct MagicResidual {
    double B_r = 10.0;
    double d_r = 0.0;
};

/**
 * @brief Rigid-ring tire: Magic Formula curves fed by an enveloped road contact.
 *
 * The vertical channel (k_z, c_z) turns effective road height into the contact
 * load F_cN that scales the lateral and residual curves.
 */
struct TireParamsRR {
    MagicLateral mf_y{};
    MagicTrail mf_t{};
    MagicResidual mf_r{};
    double a = 0.1;           ///< contact patch half length [m]
    double k_z = 250000.0;    ///< vertical carcass stiffness [N/m]
    double c_z = 1000.0;      ///< vertical carcass damping [N s/m]
    double r0 = 0.35;         ///< unloaded tire radius [m]
    double ls = 0.2;          ///< tandem follower spacing [m]
};

/// One tire-parameter block per estimator kind, as carried by a config file.
struct TireSet {
    TireParamsLT lt{};
    TireParamsBT bt{};
    TireParamsRR rr{};
};

/// Rectangular road obstacle; position is the leading edge along the track [m].
struct Cleat {
    double position = 0.0;
    double height = 0.0;
    double length = 0.0;
};

/**
 * @brief Road description for one run: lateral slope trace plus cleat list.
 *
 * The slope trace shares the grid of the driver inputs. Cleats live in track
 * coordinates and only the rigid-ring estimator reacts to them.
 */
struct RoadProfile {
    SignalTrace slope;          ///< lateral road inclination theta [rad]
    std::vector<Cleat> cleats;
};

/// Collected parameter violations; empty means the set is usable.
struct ValidationReport {
    std::vector<std::string> violations;

    bool ok() const { return violations.empty(); }
    std::string to_string() const {
        std::string out;
        for (const auto& v : violations) {
            if (!out.empty()) out += "; ";
            out += v;
        }
        return out;
    }
};

namespace detail {

inline void require_positive(ValidationReport& r, double value, const char* name) {
    if (!(value > 0.0))
        r.violations.push_back(std::string(name) + " must be positive, got " + std::to_string(value));
}

inline void require_non_negative(ValidationReport& r, double value, const char* name) {
    if (!(value >= 0.0))
        r.violations.push_back(std::string(name) + " must be non-negative, got " + std::to_string(value));
}

} // namespace detail

inline ValidationReport validate_params(const VehicleParams& p) {
    ValidationReport r;
    detail::require_positive(r, p.m, "m");
    detail::require_positive(r, p.I, "I");
    detail::require_positive(r, p.l_f, "l_f");
    detail::require_positive(r, p.l_r, "l_r");
    detail::require_positive(r, p.i_p, "i_p");
    detail::require_non_negative(r, p.t_m, "t_m");
    detail::require_positive(r, p.g, "g");
    return r;
}

inline ValidationReport validate_params(const TireParamsLT& t) {
    ValidationReport r;
    detail::require_positive(r, t.C_af, "C_af");
    detail::require_positive(r, t.C_ar, "C_ar");
    detail::require_positive(r, t.t_p0, "t_p0");
    detail::require_positive(r, t.mu, "mu");
    return r;
}

inline ValidationReport validate_params(const TireParamsBT& t) {
    ValidationReport r;
    detail::require_positive(r, t.c_p, "c_p");
    detail::require_positive(r, t.a, "a");
    detail::require_positive(r, t.mu, "mu");
    return r;
}

inline ValidationReport validate_params(const TireParamsRR& t) {
    ValidationReport r;
    detail::require_positive(r, t.mf_y.B_y, "B_y");
    if (!(t.mf_y.C_y >= 1.0))
        r.violations.push_back("C_y must be >= 1 for a monotone low-slip branch, got " +
                               std::to_string(t.mf_y.C_y));
    detail::require_positive(r, t.mf_y.d_y, "d_y");
    detail::require_positive(r, t.mf_t.B_t, "B_t");
    detail::require_positive(r, t.mf_t.C_t, "C_t");
    detail::require_positive(r, t.mf_t.d_t, "d_t");
    detail::require_positive(r, t.mf_r.B_r, "B_r");
    detail::require_non_negative(r, t.mf_r.d_r, "d_r");
    detail::require_positive(r, t.a, "a (patch half length)");
    detail::require_positive(r, t.k_z, "k_z");
    detail::require_non_negative(r, t.c_z, "c_z");
    detail::require_positive(r, t.r0, "r0");
    detail::require_positive(r, t.ls, "ls");
    if (t.r0 > 0.0 && t.a > 0.0 && !(t.r0 > t.a))
        r.violations.push_back("r0 must exceed the patch half length a");
    return r;
}

inline ValidationReport validate_params(const VehicleParams& v, const TireSet& tires) {
    ValidationReport r = validate_params(v);
    for (const auto& part : {validate_params(tires.lt), validate_params(tires.bt),
                             validate_params(tires.rr)})
        r.violations.insert(r.violations.end(), part.violations.begin(), part.violations.end());
    return r;
}

/// Cleats must be non-overlapping, ahead of the start line, ordered by position.
inline ValidationReport validate_cleats(const std::vector<Cleat>& cleats) {
    ValidationReport r;
    double prev_end = -1.0e300;
    for (std::size_t i = 0; i < cleats.size(); ++i) {
        const Cleat& c = cleats[i];
        const std::string tag = "cleat " + std::to_string(i);
        if (!(c.height > 0.0)) r.violations.push_back(tag + ": height must be positive");
        if (!(c.length > 0.0)) r.violations.push_back(tag + ": length must be positive");
        if (!(c.position >= 0.0)) r.violations.push_back(tag + ": position must be non-negative");
        if (c.position <= prev_end)
            r.violations.push_back(tag + ": overlaps or reorders the previous cleat");
        prev_end = c.position + c.length;
    }
    return r;
}

/// Slope samples must stay clear of vertical; cleat list must be well formed.
inline ValidationReport validate_road(const RoadProfile& road) {
    ValidationReport r = validate_cleats(road.cleats);
    constexpr double half_pi = 1.5707963267948966;
    for (std::size_t i = 0; i < road.slope.samples.size(); ++i) {
        if (!(std::abs(road.slope.samples[i]) < half_pi)) {
            r.violations.push_back("slope[" + std::to_string(i) + "] = " +
                                   std::to_string(road.slope.samples[i]) +
                                   " rad is not inside (-pi/2, pi/2)");
            break;
        }
    }
    return r;
}

} // namespace rackforce
