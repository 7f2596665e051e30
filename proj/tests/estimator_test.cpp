#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "rackforce/estimator.hpp"
#include "rackforce/scenario.hpp"

using namespace rackforce;

namespace {

constexpr double k_rate = 250.0;

VehicleParams test_vehicle() {
    VehicleParams p;
    p.m = 1972.0;
    p.I = 3600.0;
    p.l_f = 1.40;
    p.l_r = 1.48;
    return p;
}

struct Inputs {
    SignalTrace delta;
    RoadProfile road;
    SignalTrace u;
};

Inputs quiet_inputs(double duration_s, double speed = 10.0) {
    const auto n = static_cast<std::size_t>(duration_s * k_rate) + 1;
    return {make_constant_trace("delta", "rad", k_rate, n, 0.0),
            {make_constant_trace("slope", "rad", k_rate, n, 0.0), {}},
            make_constant_trace("speed", "m/s", k_rate, n, speed)};
}

Inputs sine_steer_inputs(double duration_s, double amp, double period, double speed = 10.0) {
    Inputs in = quiet_inputs(duration_s, speed);
    for (std::size_t i = 0; i < in.delta.size(); ++i) {
        const double t = in.delta.time_at(i);
        if (t >= 1.0)
            in.delta.samples[i] = amp * std::sin(2.0 * 3.141592653589793 * (t - 1.0) / period);
    }
    return in;
}

} // namespace

TEST(Estimator, ZeroInputsGiveExactlyZeroRackForce) {
    const Inputs in = quiet_inputs(2.0);
    for (const auto kind : {EstimatorKind::lt, EstimatorKind::bt, EstimatorKind::rr}) {
        const auto r = run_estimator(kind, in.delta, in.road, in.u, test_vehicle(), TireSet{});
        for (std::size_t i = 0; i < r.rf.size(); ++i) {
            ASSERT_EQ(r.rf.samples[i], 0.0) << to_string(kind) << " sample " << i;
            ASSERT_EQ(r.f_yf.samples[i], 0.0);
            ASSERT_EQ(r.slip_f.samples[i], 0.0);
        }
    }
}

TEST(Estimator, OutputsShareTheInputGrid) {
    const Inputs in = sine_steer_inputs(3.0, 0.05, 2.0);
    const auto r = run_estimator(EstimatorKind::bt, in.delta, in.road, in.u, test_vehicle(), TireSet{});
    for (const SignalTrace* t : {&r.rf, &r.m_zf, &r.slip_f, &r.slip_r, &r.f_yf, &r.f_yr}) {
        ASSERT_EQ(t->size(), in.delta.size());
        ASSERT_EQ(t->rate_hz, k_rate);
    }
    ASSERT_EQ(r.states.size(), in.delta.size());
}

TEST(Estimator, RackForceIsSteeringRatioTimesAxleMoment) {
    const Inputs in = sine_steer_inputs(3.0, 0.05, 2.0);
    const auto p = test_vehicle();
    const auto r = run_estimator(EstimatorKind::lt, in.delta, in.road, in.u, p, TireSet{});
    for (std::size_t i = 0; i < r.rf.size(); ++i)
        ASSERT_DOUBLE_EQ(r.rf.samples[i], p.i_p * r.m_zf.samples[i]);
}

TEST(Estimator, RunsAreDeterministic) {
    const Inputs in = sine_steer_inputs(3.0, 0.08, 1.5);
    for (const auto kind : {EstimatorKind::lt, EstimatorKind::bt, EstimatorKind::rr}) {
        const auto a = run_estimator(kind, in.delta, in.road, in.u, test_vehicle(), TireSet{});
        const auto b = run_estimator(kind, in.delta, in.road, in.u, test_vehicle(), TireSet{});
        for (std::size_t i = 0; i < a.rf.size(); ++i)
            ASSERT_EQ(a.rf.samples[i], b.rf.samples[i]) << to_string(kind) << " sample " << i;
    }
}

TEST(Estimator, SteadySlopeMatchesClosedFormEquilibrium) {
    // delta = 0, theta const: solve the linear steady state independently and
    // compare against the integrated run once transients have died out.
    const double theta = 0.1, u = 10.0;
    const auto p = test_vehicle();
    const TireSet tires{};
    const double K_f = 2.0 * tires.lt.C_af, K_r = 2.0 * tires.lt.C_ar;

    // a11*v + a12*r = g*sin(theta); a21*v + a22*r = 0
    const double a11 = -(K_f + K_r) / (p.m * u);
    const double a12 = (-K_f * p.l_f + K_r * p.l_r) / (p.m * u) - u;
    const double a21 = (K_r * p.l_r - K_f * p.l_f) / u;
    const double a22 = -(K_f * p.l_f * p.l_f + K_r * p.l_r * p.l_r) / u;
    const double rhs = p.g * std::sin(theta);
    const double det = a11 * a22 - a12 * a21;
    const double v_ss = rhs * a22 / det;
    const double r_ss = -rhs * a21 / det;

    const double alpha_f = -(v_ss + p.l_f * r_ss) / u;
    const double F_zf = p.m * p.g * p.l_r * std::cos(theta) / (2.0 * p.wheelbase());
    const double t_p = tires.lt.t_p0 *
                       (1.0 - (alpha_f > 0 ? 1.0 : -1.0) * tires.lt.C_af /
                                  (3.0 * tires.lt.mu * F_zf) * std::tan(alpha_f));
    const double rf_ss = p.i_p * 2.0 * (-(t_p + p.t_m) * tires.lt.C_af * alpha_f);

    Inputs in = quiet_inputs(5.0, u);
    std::fill(in.road.slope.samples.begin(), in.road.slope.samples.end(), theta);
    const auto r = run_estimator(EstimatorKind::lt, in.delta, in.road, in.u, p, tires);
    EXPECT_NEAR(r.rf.samples.back() / rf_ss, 1.0, 1e-9);
    EXPECT_NEAR(r.states.back().v / v_ss, 1.0, 1e-9);
    EXPECT_NEAR(r.states.back().psi_dot / r_ss, 1.0, 1e-9);
}

TEST(Estimator, LinearTirePipelineIsLinearInSteering) {
    Inputs in = sine_steer_inputs(4.0, 0.02, 2.0);
    Inputs in2 = in;
    for (auto& d : in2.delta.samples) d *= 2.0;
    const auto a = run_estimator(EstimatorKind::lt, in.delta, in.road, in.u, test_vehicle(), TireSet{});
    const auto b = run_estimator(EstimatorKind::lt, in2.delta, in2.road, in2.u, test_vehicle(), TireSet{});
    for (std::size_t i = 0; i < a.rf.size(); ++i) {
        ASSERT_NEAR(b.slip_f.samples[i], 2.0 * a.slip_f.samples[i],
                    1e-9 * std::max(1.0, std::abs(a.slip_f.samples[i])));
        ASSERT_NEAR(b.f_yf.samples[i], 2.0 * a.f_yf.samples[i],
                    1e-9 * std::max(1.0, std::abs(a.f_yf.samples[i])));
        ASSERT_NEAR(b.f_yr.samples[i], 2.0 * a.f_yr.samples[i],
                    1e-9 * std::max(1.0, std::abs(a.f_yr.samples[i])));
    }
}

TEST(Estimator, CleatsAreInvisibleToLtAndBt) {
    Exp3Config cfg;
    cfg.duration_s = 8.0;
    cfg.steer_amp_deg = 3.0;
    cfg.steer_hold = true;
    cfg.cleat_start_m = 30.0;
    const Scenario with = gen_experiment3(cfg);
    Scenario without = with;
    without.road.cleats.clear();

    for (const auto kind : {EstimatorKind::lt, EstimatorKind::bt}) {
        const auto a = run_estimator(kind, with.delta, with.road, with.u, test_vehicle(), TireSet{});
        const auto b = run_estimator(kind, without.delta, without.road, without.u, test_vehicle(), TireSet{});
        for (std::size_t i = 0; i < a.rf.size(); ++i)
            ASSERT_EQ(a.rf.samples[i], b.rf.samples[i]) << to_string(kind) << " sample " << i;
    }

    const auto ra = run_estimator(EstimatorKind::rr, with.delta, with.road, with.u, test_vehicle(), TireSet{});
    const auto rb = run_estimator(EstimatorKind::rr, without.delta, without.road, without.u, test_vehicle(), TireSet{});
    double dev = 0.0;
    for (std::size_t i = 0; i < ra.rf.size(); ++i)
        dev = std::max(dev, std::abs(ra.rf.samples[i] - rb.rf.samples[i]));
    EXPECT_GT(dev, 1.0);    // the rigid ring must react to the cleats
}

TEST(Estimator, HalvingTheStepBarelyMovesTheResult) {
    Exp2Config c250;
    c250.duration_s = 12.0;
    Exp2Config c500 = c250;
    c500.rate_hz = 500.0;
    const Scenario s250 = gen_experiment2(c250);
    const Scenario s500 = gen_experiment2(c500);
    for (const auto kind : {EstimatorKind::lt, EstimatorKind::bt, EstimatorKind::rr}) {
        const auto a = run_estimator(kind, s250.delta, s250.road, s250.u, test_vehicle(), TireSet{});
        const auto b = run_estimator(kind, s500.delta, s500.road, s500.u, test_vehicle(), TireSet{});
        const double fa = a.rf.samples.back(), fb = b.rf.samples.back();
        ASSERT_GT(std::abs(fb), 1.0);
        EXPECT_LT(std::abs(fa - fb) / std::abs(fb), 1e-3) << to_string(kind);
    }
}

TEST(Estimator, RejectsMisalignedAndInvalidInputs) {
    Inputs in = quiet_inputs(2.0);
    SignalTrace short_delta = in.delta;
    short_delta.samples.pop_back();
    EXPECT_THROW(run_estimator(EstimatorKind::lt, short_delta, in.road, in.u, test_vehicle(), TireSet{}),
                 AlignmentError);

    SignalTrace slow = in.u;
    slow.samples[100] = 0.5;
    EXPECT_THROW(run_estimator(EstimatorKind::lt, in.delta, in.road, slow, test_vehicle(), TireSet{}),
                 SpeedTooLowError);

    VehicleParams bad = test_vehicle();
    bad.m = 0.0;
    EXPECT_THROW(run_estimator(EstimatorKind::lt, in.delta, in.road, in.u, bad, TireSet{}),
                 InvalidInputError);

    RoadProfile steep = in.road;
    steep.slope.samples[10] = 1.6;
    EXPECT_THROW(run_estimator(EstimatorKind::lt, in.delta, steep, in.u, test_vehicle(), TireSet{}),
                 InvalidInputError);
}

TEST(Decompose, DegenerateRoadLeavesZeroRoadShareBitExact) {
    const Inputs in = sine_steer_inputs(4.0, 0.3, 2.0, 6.0);
    for (const auto kind : {EstimatorKind::lt, EstimatorKind::bt, EstimatorKind::rr}) {
        const auto d = decompose(kind, in.delta, in.road, in.u, test_vehicle(), TireSet{});
        for (std::size_t i = 0; i < d.rf_road.size(); ++i) {
            ASSERT_EQ(d.rf_road.samples[i], 0.0) << to_string(kind) << " sample " << i;
            ASSERT_EQ(d.residual.samples[i], 0.0) << to_string(kind) << " sample " << i;
        }
    }
}

TEST(Decompose, DegenerateSteeringLeavesZeroSteeringShareBitExact) {
    Inputs in = quiet_inputs(4.0, 6.0);
    for (std::size_t i = 0; i < in.road.slope.size(); ++i) {
        const double t = in.road.slope.time_at(i);
        if (t >= 1.0) in.road.slope.samples[i] = 0.15 * std::sin(t - 1.0);
    }
    for (const auto kind : {EstimatorKind::lt, EstimatorKind::bt, EstimatorKind::rr}) {
        const auto d = decompose(kind, in.delta, in.road, in.u, test_vehicle(), TireSet{});
        for (std::size_t i = 0; i < d.rf_steering.size(); ++i) {
            ASSERT_EQ(d.rf_steering.samples[i], 0.0) << to_string(kind) << " sample " << i;
            ASSERT_EQ(d.residual.samples[i], 0.0) << to_string(kind) << " sample " << i;
        }
    }
}

TEST(Decompose, TotalMatchesDirectRunAndResidualCatchesCoupling) {
    Inputs in = sine_steer_inputs(6.0, 0.5, 2.0, 6.0);
    for (std::size_t i = 0; i < in.road.slope.size(); ++i) {
        const double t = in.road.slope.time_at(i);
        if (t >= 1.0) in.road.slope.samples[i] = 0.15 * std::sin(0.8 * (t - 1.0));
    }
    const auto d = decompose(EstimatorKind::bt, in.delta, in.road, in.u, test_vehicle(), TireSet{});
    const auto direct = run_estimator(EstimatorKind::bt, in.delta, in.road, in.u, test_vehicle(), TireSet{});
    double max_res = 0.0;
    for (std::size_t i = 0; i < d.rf_total.size(); ++i) {
        ASSERT_EQ(d.rf_total.samples[i], direct.rf.samples[i]);
        ASSERT_DOUBLE_EQ(d.residual.samples[i], d.rf_total.samples[i] - d.rf_steering.samples[i] -
                                                    d.rf_road.samples[i]);
        max_res = std::max(max_res, std::abs(d.residual.samples[i]));
    }
    // Saturating tires on slope + steering interact, so the coupling is real.
    EXPECT_GT(max_res, 1.0);
}
