#pragma once

#include <functional>
#include <string>
#include <vector>

#include "rackforce/params.hpp"
#include "rackforce/rigid_ring.hpp"
#include "rackforce/signal.hpp"
#include "rackforce/tire.hpp"
#include "rackforce/vehicle.hpp"

namespace rackforce {

enum class EstimatorKind { lt, bt, rr };

inline const char* to_string(EstimatorKind k) {
    switch (k) {
        case EstimatorKind::lt: return "lt";
        case EstimatorKind::bt: return "bt";
        default: return "rr";
    }
}

/**
 * @brief Everything one estimator run produces, on the input grid.
 *
 * rf is the rack force [N]; m_zf the front-axle aligning moment [N m] (both
 * tires), so rf = i_p * m_zf sample for sample. f_yf/f_yr are axle lateral
 * forces, slips are in radians.
 */
struct EstimationResult {
    SignalTrace rf;
    SignalTrace m_zf;
    SignalTrace slip_f;
    SignalTrace slip_r;
    SignalTrace f_yf;
    SignalTrace f_yr;
    std::vector<VehicleState> states;
};

namespace detail {

inline double lerp(double a, double b, double f) { return a + f * (b - a); }

inline void check_speed_trace(const SignalTrace& u) {
    for (std::size_t i = 0; i < u.samples.size(); ++i)
        if (!(u.samples[i] >= k_u_min))
            throw SpeedTooLowError("speed[" + std::to_string(i) + "] = " +
                                   std::to_string(u.samples[i]) + " m/s is below the " +
                                   std::to_string(k_u_min) + " m/s minimum");
}

inline SignalTrace blank_like(const SignalTrace& grid, std::string name, std::string unit) {
    SignalTrace t{std::move(name), std::move(unit), grid.rate_hz, grid.t0, {}};
    t.samples.reserve(grid.samples.size());
    return t;
}

} // namespace detail

/**
 * @brief Closed-loop rack-force estimation over recorded driver inputs.
 *
 * Per sample: evaluate slips and tire outputs from the current state, record
 * them, then advance the lateral state one RK4 step with the driving inputs
 * interpolated to the stage times. For the rigid-ring kind the enveloping
 * follower is advanced once per sample and its contact load held across the
 * step. The state starts at rest, so scenarios include a lead-in.
 *
 * Inputs must share one grid; speed must stay above the model minimum.
 */
inline EstimationResult run_estimator(EstimatorKind kind, const SignalTrace& delta,
                                      const RoadProfile& road, const SignalTrace& u,
                                      const VehicleParams& vp, const TireSet& tires) {
    require_aligned({&delta, &road.slope, &u});
    detail::check_speed_trace(u);
    if (const auto r = validate_params(vp, tires); !r.ok())
        throw InvalidInputError("run_estimator: " + r.to_string());
    if (const auto r = validate_road(road); !r.ok())
        throw InvalidInputError("run_estimator: " + r.to_string());

    const std::size_t n = delta.samples.size();
    const double dt = delta.dt();
    const bool enveloped = kind == EstimatorKind::rr;

    // Front/rear kernels share a signature; lt/bt ignore the road point.
    std::function<TireOutputs(double, double, const EffectiveRoadPoint&, bool)> tire;
    switch (kind) {
        case EstimatorKind::lt:
            tire = [&](double a, double fz, const EffectiveRoadPoint&, bool front) {
                return lt_tire(a, fz, tires.lt, front, vp.t_m);
            };
            break;
        case EstimatorKind::bt:
            tire = [&](double a, double fz, const EffectiveRoadPoint&, bool front) {
                return bt_tire(a, fz, tires.bt, front, vp.t_m);
            };
            break;
        case EstimatorKind::rr:
            tire = [&](double a, double fz, const EffectiveRoadPoint& eff, bool front) {
                return rr_tire(a, fz, eff, tires.rr, front);
            };
            break;
    }

    EstimationResult res{
        detail::blank_like(delta, "rf", "N"),
        detail::blank_like(delta, "m_zf", "N m"),
        detail::blank_like(delta, "slip_f", "rad"),
        detail::blank_like(delta, "slip_r", "rad"),
        detail::blank_like(delta, "f_yf", "N"),
        detail::blank_like(delta, "f_yr", "N"),
        {}};
    res.states.reserve(n);

    RoadEnveloper follower(tires.rr, dt);
    VehicleState state;
    double x_cg = 0.0;

    for (std::size_t k = 0; k < n; ++k) {
        const double d_k = delta.samples[k];
        const double th_k = road.slope.samples[k];
        const double u_k = u.samples[k];
        const NormalLoads loads = normal_forces(th_k, vp);

        // Contact load for this sample; flat road reduces it to the static load.
        EffectiveRoadPoint eff_f{0.0, 0.0, loads.F_zf};
        EffectiveRoadPoint eff_r{0.0, 0.0, loads.F_zr};
        if (enveloped)
            eff_f = follower.step(road.cleats, x_cg + vp.l_f, u_k, loads.F_zf);

        const SlipAngles sl = slip_angles(state, u_k, d_k, vp);
        const TireOutputs front = tire(sl.alpha_f, loads.F_zf, eff_f, true);
        const TireOutputs rear = tire(sl.alpha_r, loads.F_zr, eff_r, false);

        const double m_zf_axle = 2.0 * front.M_zf;
        res.rf.samples.push_back(vp.i_p * m_zf_axle);
        res.m_zf.samples.push_back(m_zf_axle);
        res.slip_f.samples.push_back(sl.alpha_f);
        res.slip_r.samples.push_back(sl.alpha_r);
        res.f_yf.samples.push_back(2.0 * front.F_y);
        res.f_yr.samples.push_back(2.0 * rear.F_y);
        res.states.push_back(state);

        if (k + 1 == n) break;

        const auto deriv = [&](double tau, const VehicleState& s) {
            const double f = tau / dt;
            const double dd = detail::lerp(d_k, delta.samples[k + 1], f);
            const double uu = detail::lerp(u_k, u.samples[k + 1], f);
            const double tt = detail::lerp(th_k, road.slope.samples[k + 1], f);
            const NormalLoads nl = normal_forces(tt, vp);
            const SlipAngles a = slip_angles(s, uu, dd, vp);
            const AxleForces ax{2.0 * tire(a.alpha_f, nl.F_zf, eff_f, true).F_y,
                                2.0 * tire(a.alpha_r, nl.F_zr, eff_r, false).F_y, 0.0};
            return deriv_small_angle(s, ax, uu, tt, vp);
        };
        try {
            state = step_rk4(state, deriv, dt);
        } catch (const NumericError& e) {
            throw NumericError("sample " + std::to_string(k) + ": " + e.what());
        }
        x_cg += u_k * dt;
    }
    return res;
}

/// Rack-force split into steering-induced, road-induced, and coupling parts.
struct Decomposition {
    SignalTrace rf_total;
    SignalTrace rf_steering;
    SignalTrace rf_road;
    SignalTrace residual;
};

/**
 * @brief Three-run rack-force decomposition.
 *
 *   rf_steering: steering input over a flat, cleat-free road
 *   rf_road:     zero steering over the full road description
 *   rf_total:    the complete run
 *   residual:    rf_total - rf_steering - rf_road, sample-wise
 *
 * Each part is an independent full estimator run, so a zero-slope cleat-free
 * road makes rf_road identically zero and the residual vanishes bit-exactly.
 */
inline Decomposition decompose(EstimatorKind kind, const SignalTrace& delta,
                               const RoadProfile& road, const SignalTrace& u,
                               const VehicleParams& vp, const TireSet& tires) {
    require_aligned({&delta, &road.slope, &u});

    SignalTrace zero_delta = delta;
    std::fill(zero_delta.samples.begin(), zero_delta.samples.end(), 0.0);
    RoadProfile flat{road.slope, {}};
    std::fill(flat.slope.samples.begin(), flat.slope.samples.end(), 0.0);

    Decomposition d{run_estimator(kind, delta, road, u, vp, tires).rf,
                    run_estimator(kind, delta, flat, u, vp, tires).rf,
                    run_estimator(kind, zero_delta, road, u, vp, tires).rf, {}};
    d.rf_total.name = "rf_total";
    d.rf_steering.name = "rf_steering";
    d.rf_road.name = "rf_road";
    d.residual = detail::blank_like(delta, "residual", "N");
    for (std::size_t i = 0; i < d.rf_total.samples.size(); ++i)
        d.residual.samples.push_back(d.rf_total.samples[i] - d.rf_steering.samples[i] -
                                     d.rf_road.samples[i]);
    return d;
}

} // namespace rackforce
