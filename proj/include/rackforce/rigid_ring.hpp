#pragma once

#include <algorithm>
#include <cmath>
#include <span>

#include "rackforce/params.hpp"
#include "rackforce/tire.hpp"

namespace rackforce {

/// Effective road contact the enveloping stage hands to the rigid-ring tire.
struct EffectiveRoadPoint {
    double w = 0.0;           ///< effective height rise under the contact [m]
    double beta_slope = 0.0;  ///< effective forward slope [rad]
    double F_cN = 0.0;        ///< contact normal load [N]
};

/// Sine Magic Formula branch: D*sin(C*atan(B*x - E*(B*x - atan(B*x)))).
inline double magic_sine(double x, double B, double C, double D, double E) {
    const double bx = B * x;
    return D * std::sin(C * std::atan(bx - E * (bx - std::atan(bx))));
}

/// Cosine Magic Formula branch: D*cos(C*atan(B*x - E*(B*x - atan(B*x)))).
inline double magic_cosine(double x, double B, double C, double D, double E) {
    const double bx = B * x;
    return D * std::cos(C * std::atan(bx - E * (bx - std::atan(bx))));
}

/**
 * @brief Rigid-ring tire: Magic Formula force and trail scaled by the contact load.
 *
 * F_y  = magic_sine(S_Hy + tan(alpha); B_y, C_y, D_y, E_y) + S_Vy,  D_y = d_y * F_cN
 * t_p  = magic_cosine(S_Ht + tan(alpha); B_t, C_t, D_t, E_t),       D_t = d_t * a
 * M_zf = -t_p * F_y + D_r * cos(atan(B_r * tan(alpha))),            D_r = d_r * a * F_cN
 *
 * D_t already contains the mechanical trail share, so no separate t_m lever
 * is added. Rear tires report force only.
 */
inline TireOutputs rr_tire(double alpha, double F_z, const EffectiveRoadPoint& eff,
                           const TireParamsRR& tp, bool is_front) {
    detail::require_load(F_z, "rr_tire");
    if (!(eff.F_cN >= 0.0))
        throw InvalidInputError("rr_tire: contact load must be non-negative");

    const double ta = std::tan(alpha);
    const double D_y = tp.mf_y.d_y * eff.F_cN;
    TireOutputs out;
    out.F_y = magic_sine(tp.mf_y.S_Hy + ta, tp.mf_y.B_y, tp.mf_y.C_y, D_y, tp.mf_y.E_y) + tp.mf_y.S_Vy;
    if (!is_front) return out;

    const double D_t = tp.mf_t.d_t * tp.a;
    out.t_p = magic_cosine(tp.mf_t.S_Ht + ta, tp.mf_t.B_t, tp.mf_t.C_t, D_t, tp.mf_t.E_t);
    const double D_r = tp.mf_r.d_r * tp.a * eff.F_cN;
    out.M_zf = -out.t_p * out.F_y + D_r * std::cos(std::atan(tp.mf_r.B_r * ta));
    return out;
}

/**
 * @brief Two-point tandem follower turning cleat geometry into an effective road point.
 *
 * Each probe rides a basic curve: a circular cam of the unloaded tire radius
 * rolling over the rectangular cleat, so the lift ramps in before the edge
 * instead of stepping. Two probes ls apart are averaged into the effective
 * height (their difference gives the effective slope), which loads the
 * vertical residual stiffness/damping to produce F_cN.
 *
 * The damping term needs the previous deflection, so one instance owns the
 * memory of exactly one estimator run; call reset() before reusing it.
 */
class RoadEnveloper {
public:
    RoadEnveloper(const TireParamsRR& tp, double dt)
        : k_z_(tp.k_z), c_z_(tp.c_z), r0_(tp.r0), ls_(tp.ls), dt_(dt) {
        if (!(dt > 0.0)) throw InvalidInputError("RoadEnveloper: dt must be positive");
    }

    /// Basic-curve lift of a single probe at track position x.
    static double cam_height(std::span<const Cleat> cleats, double x, double r0) {
        double z = 0.0;
        for (const Cleat& c : cleats) {
            const double x1 = c.position + c.length;
            double lift = 0.0;
            if (x >= c.position && x <= x1) {
                lift = c.height;
            } else {
                const double d = x < c.position ? c.position - x : x - x1;
                const double reach_sq = c.height * (2.0 * r0 - c.height);
                if (d * d < reach_sq)
                    lift = c.height - r0 + std::sqrt(r0 * r0 - d * d);
            }
            z = std::max(z, lift);
        }
        return z;
    }

    /**
     * Advance the follower to track position x (contact center, moving at
     * x_dot > 0) under static load F_z and return the effective road point.
     */
    EffectiveRoadPoint step(std::span<const Cleat> cleats, double x, double x_dot, double F_z) {
        if (!(x_dot > 0.0))
            throw InvalidInputError("RoadEnveloper: follower must move forward");
        detail::require_load(F_z, "RoadEnveloper");

        const double z_lead = cam_height(cleats, x + 0.5 * ls_, r0_);
        const double z_trail = cam_height(cleats, x - 0.5 * ls_, r0_);

        EffectiveRoadPoint eff;
        eff.w = 0.5 * (z_lead + z_trail);
        eff.beta_slope = (z_lead - z_trail) / ls_;

        const double rho = std::max(0.0, F_z / k_z_ + eff.w);
        const double rho_dot = has_prev_ ? (rho - prev_rho_) / dt_ : 0.0;
        prev_rho_ = rho;
        has_prev_ = true;

        eff.F_cN = std::max(0.0, k_z_ * rho + c_z_ * rho_dot);
        return eff;
    }

    /// Drop the deflection memory (next step sees zero deflection rate).
    void reset() {
        prev_rho_ = 0.0;
        has_prev_ = false;
    }

private:
    double k_z_;
    double c_z_;
    double r0_;
    double ls_;
    double dt_;
    double prev_rho_ = 0.0;
    bool has_prev_ = false;
};

} // namespace rackforce
