#pragma once

#include <cmath>
#include <string>

#include "rackforce/estimator.hpp"

namespace rackforce {

/// Reference-model parameters: brush tire plus a slip relaxation length.
struct OracleParams {
    VehicleParams vehicle{};
    TireParamsBT tire{};
    double sigma_relax = 0.3;    ///< slip relaxation length [m]
};

inline ValidationReport validate_params(const OracleParams& p) {
    ValidationReport r = validate_params(p.vehicle);
    const ValidationReport t = validate_params(p.tire);
    r.violations.insert(r.violations.end(), t.violations.begin(), t.violations.end());
    if (!(p.sigma_relax > 0.0))
        r.violations.push_back("sigma_relax must be positive, got " + std::to_string(p.sigma_relax));
    return r;
}

/**
 * @brief Higher-fidelity reference run used as ground truth by the comparisons.
 *
 * Differences from the estimators: full-trigonometry dynamics (front forces
 * rotated by the steering angle), arctangent slip kinematics, and first-order
 * slip relaxation sigma_relax/u ahead of the brush tire, which delays the
 * force build-up the way a real carcass does.
 *
 * The relaxation states are advanced with the exact exponential solution of
 * the lag equation over each sample (target slip frozen at the step start and
 * reconstructed at the RK4 stage times), so the integration stays stable for
 * arbitrarily small relaxation lengths and converges to the unlagged brush
 * estimator as sigma_relax approaches zero.
 */
inline EstimationResult run_oracle(const SignalTrace& delta, const RoadProfile& road,
                                   const SignalTrace& u, const OracleParams& op) {
    require_aligned({&delta, &road.slope, &u});
    detail::check_speed_trace(u);
    if (const auto r = validate_params(op); !r.ok())
        throw InvalidInputError("run_oracle: " + r.to_string());
    if (const auto r = validate_road(road); !r.ok())
        throw InvalidInputError("run_oracle: " + r.to_string());

    const VehicleParams& vp = op.vehicle;
    const std::size_t n = delta.samples.size();
    const double dt = delta.dt();

    EstimationResult res{
        detail::blank_like(delta, "rf", "N"),
        detail::blank_like(delta, "m_zf", "N m"),
        detail::blank_like(delta, "slip_f", "rad"),
        detail::blank_like(delta, "slip_r", "rad"),
        detail::blank_like(delta, "f_yf", "N"),
        detail::blank_like(delta, "f_yr", "N"),
        {}};
    res.states.reserve(n);

    VehicleState state;
    // Relaxation states start on the instantaneous slips of the initial state.
    SlipAngles lag = slip_angles_exact(state, u.samples[0], delta.samples[0], vp);

    for (std::size_t k = 0; k < n; ++k) {
        const double d_k = delta.samples[k];
        const double th_k = road.slope.samples[k];
        const double u_k = u.samples[k];
        const NormalLoads loads = normal_forces(th_k, vp);

        const TireOutputs front = bt_tire(lag.alpha_f, loads.F_zf, op.tire, true, vp.t_m);
        const TireOutputs rear = bt_tire(lag.alpha_r, loads.F_zr, op.tire, false, vp.t_m);

        const double m_zf_axle = 2.0 * front.M_zf;
        res.rf.samples.push_back(vp.i_p * m_zf_axle);
        res.m_zf.samples.push_back(m_zf_axle);
        res.slip_f.samples.push_back(lag.alpha_f);
        res.slip_r.samples.push_back(lag.alpha_r);
        res.f_yf.samples.push_back(2.0 * front.F_y);
        res.f_yr.samples.push_back(2.0 * rear.F_y);
        res.states.push_back(state);

        if (k + 1 == n) break;

        // Lag target over this step: instantaneous slips at the step start.
        const SlipAngles inst = slip_angles_exact(state, u_k, d_k, vp);
        const SlipAngles lag_k = lag;
        const auto lagged_at = [&](double tau) {
            const double decay = std::exp(-u_k * tau / op.sigma_relax);
            return SlipAngles{inst.alpha_f + (lag_k.alpha_f - inst.alpha_f) * decay,
                              inst.alpha_r + (lag_k.alpha_r - inst.alpha_r) * decay};
        };

        const auto deriv = [&](double tau, const VehicleState& s) {
            const double f = tau / dt;
            const double dd = detail::lerp(d_k, delta.samples[k + 1], f);
            const double uu = detail::lerp(u_k, u.samples[k + 1], f);
            const double tt = detail::lerp(th_k, road.slope.samples[k + 1], f);
            const NormalLoads nl = normal_forces(tt, vp);
            const SlipAngles a = lagged_at(tau);
            const AxleForces ax{2.0 * bt_tire(a.alpha_f, nl.F_zf, op.tire, true, vp.t_m).F_y,
                                2.0 * bt_tire(a.alpha_r, nl.F_zr, op.tire, false, vp.t_m).F_y,
                                0.0};
            return deriv_full(s, ax, uu, tt, dd, vp);
        };
        try {
            state = step_rk4(state, deriv, dt);
        } catch (const NumericError& e) {
            throw NumericError("sample " + std::to_string(k) + ": " + e.what());
        }
        lag = lagged_at(dt);
    }
    return res;
}

} // namespace rackforce
