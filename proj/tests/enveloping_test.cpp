#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "rackforce/rigid_ring.hpp"

using namespace rackforce;

namespace {

constexpr double k_fz = 4970.6725;
constexpr double k_dt = 0.004;

TireParamsRR tire() { return {}; }    // k_z 250k, c_z 1k, r0 0.35, ls 0.2

} // namespace

TEST(CamHeight, FlatEverywhereWithoutCleats) {
    for (double x = -5.0; x < 5.0; x += 0.1)
        EXPECT_DOUBLE_EQ(RoadEnveloper::cam_height({}, x, 0.35), 0.0);
}

TEST(CamHeight, FullHeightOnTopOfCleat) {
    const std::vector<Cleat> cleats{{10.0, 0.02, 0.04}};
    EXPECT_DOUBLE_EQ(RoadEnveloper::cam_height(cleats, 10.0, 0.35), 0.02);
    EXPECT_DOUBLE_EQ(RoadEnveloper::cam_height(cleats, 10.02, 0.35), 0.02);
    EXPECT_DOUBLE_EQ(RoadEnveloper::cam_height(cleats, 10.04, 0.35), 0.02);
}

TEST(CamHeight, QuarterCircleShoulder) {
    // 0.1 m short of the edge: lift = h - r0 + sqrt(r0^2 - d^2)
    //                               = 0.02 - 0.35 + sqrt(0.1225 - 0.01)
    const std::vector<Cleat> cleats{{10.0, 0.02, 0.04}};
    EXPECT_NEAR(RoadEnveloper::cam_height(cleats, 9.9, 0.35), 0.0054101966249685, 1e-15);
    EXPECT_NEAR(RoadEnveloper::cam_height(cleats, 10.14, 0.35), 0.0054101966249685, 1e-15);
}

TEST(CamHeight, ReachIsSqrtOfChord) {
    // Contact begins sqrt(2*r0*h - h^2) = 0.116619 m before the edge.
    const std::vector<Cleat> cleats{{10.0, 0.02, 0.04}};
    const double reach = 0.116619037896906;
    EXPECT_GT(RoadEnveloper::cam_height(cleats, 10.0 - reach + 1e-6, 0.35), 0.0);
    EXPECT_DOUBLE_EQ(RoadEnveloper::cam_height(cleats, 10.0 - reach - 1e-6, 0.35), 0.0);
}

TEST(CamHeight, ContinuousAtOnset) {
    const std::vector<Cleat> cleats{{10.0, 0.02, 0.04}};
    double prev = 0.0;
    double max_step = 0.0;
    for (double x = 9.8; x <= 10.3; x += 1e-4) {
        const double z = RoadEnveloper::cam_height(cleats, x, 0.35);
        max_step = std::max(max_step, std::abs(z - prev));
        prev = z;
    }
    // A 0.1 mm stride never jumps more than a small fraction of the height.
    EXPECT_LT(max_step, 0.02 / 10.0);
}

TEST(CamHeight, OverlappingReachTakesMax) {
    const std::vector<Cleat> a{{10.0, 0.01, 0.04}};
    const std::vector<Cleat> b{{10.2, 0.03, 0.04}};
    const std::vector<Cleat> both{{10.0, 0.01, 0.04}, {10.2, 0.03, 0.04}};
    for (double x = 9.8; x <= 10.5; x += 1e-3) {
        const double za = RoadEnveloper::cam_height(a, x, 0.35);
        const double zb = RoadEnveloper::cam_height(b, x, 0.35);
        ASSERT_DOUBLE_EQ(RoadEnveloper::cam_height(both, x, 0.35), std::max(za, zb));
    }
}

TEST(Enveloper, FlatRoadReturnsStaticLoad) {
    RoadEnveloper env(tire(), k_dt);
    for (int k = 0; k < 100; ++k) {
        const auto eff = env.step({}, 0.1 * k, 8.0, k_fz);
        ASSERT_DOUBLE_EQ(eff.w, 0.0);
        ASSERT_DOUBLE_EQ(eff.beta_slope, 0.0);
        ASSERT_DOUBLE_EQ(eff.F_cN, k_fz);
    }
}

TEST(Enveloper, FirstSampleHasNoDeflectionRate) {
    RoadEnveloper env(tire(), k_dt);
    // Long cleat so both probes (x +/- 0.1) sit on the flat top.
    const std::vector<Cleat> cleats{{0.0, 0.02, 0.24}};
    // Start right on the cleat: large deflection but rho_dot = 0 by contract.
    const auto eff = env.step(cleats, 0.12, 8.0, k_fz);
    EXPECT_DOUBLE_EQ(eff.w, 0.02);
    EXPECT_DOUBLE_EQ(eff.beta_slope, 0.0);
    EXPECT_DOUBLE_EQ(eff.F_cN, k_fz + 250000.0 * 0.02);
}

TEST(Enveloper, TwoProbeAverageAndSlope) {
    RoadEnveloper env(tire(), k_dt);
    // Leading probe (x + 0.1) on the cleat top, trailing probe (x - 0.1)
    // beyond the shoulder reach sqrt(h*(2*r0 - h)) = 0.1418 m, reading zero.
    const std::vector<Cleat> cleats{{10.0, 0.03, 0.1}};
    const auto eff = env.step(cleats, 9.92, 8.0, k_fz);
    EXPECT_DOUBLE_EQ(eff.w, 0.015);
    EXPECT_DOUBLE_EQ(eff.beta_slope, 0.03 / 0.2);
}

TEST(Enveloper, DampingBoostsRisingContact) {
    const std::vector<Cleat> cleats{{1.0, 0.02, 0.04}};
    TireParamsRR damped = tire();
    TireParamsRR undamped = tire();
    undamped.c_z = 0.0;
    RoadEnveloper env_d(damped, k_dt);
    RoadEnveloper env_u(undamped, k_dt);
    const double u = 8.0;
    double boost = 0.0;
    for (int k = 0; k < 80; ++k) {
        const double x = 0.5 + u * k_dt * k;
        const auto d = env_d.step(cleats, x, u, k_fz);
        const auto ud = env_u.step(cleats, x, u, k_fz);
        if (d.w > 0.0 && d.w < 0.02)
            boost = std::max(boost, d.F_cN - ud.F_cN);
    }
    EXPECT_GT(boost, 0.0);
}

TEST(Enveloper, ContactLoadNeverNegative) {
    // A collapsing static load makes rho drop fast; F_cN must clip at zero.
    RoadEnveloper env(tire(), k_dt);
    env.step({}, 0.0, 8.0, 5000.0);
    const auto eff = env.step({}, 0.032, 8.0, 1.0);
    EXPECT_GE(eff.F_cN, 0.0);
}

TEST(Enveloper, ResetDropsMemory) {
    RoadEnveloper env(tire(), k_dt);
    env.step({}, 0.0, 8.0, 1000.0);
    env.reset();
    // After reset the next sample is treated as the first: no rate term.
    const auto eff = env.step({}, 0.032, 8.0, 5000.0);
    EXPECT_DOUBLE_EQ(eff.F_cN, 5000.0);
}

TEST(Enveloper, EffectiveProfileWiderThanCleat) {
    // Support of w > 0 spans cleat length + 2*reach + follower spacing.
    const std::vector<Cleat> cleats{{10.0, 0.02, 0.04}};
    const double reach = 0.116619037896906;
    RoadEnveloper env(tire(), k_dt);
    double first = 0.0, last = 0.0;
    for (double x = 9.5; x <= 10.7; x += 1e-4) {
        env.reset();
        const auto eff = env.step(cleats, x, 8.0, k_fz);
        if (eff.w > 1e-12) {
            if (first == 0.0) first = x;
            last = x;
        }
    }
    const double support = last - first;
    const double expected = 0.04 + 2.0 * reach + 0.2;
    EXPECT_GT(support, 0.04 + 0.2);
    EXPECT_NEAR(support, expected, 1e-3);
}

TEST(Enveloper, RejectsBadDriving) {
    RoadEnveloper env(tire(), k_dt);
    EXPECT_THROW(env.step({}, 0.0, 0.0, k_fz), InvalidInputError);
    EXPECT_THROW(env.step({}, 0.0, -1.0, k_fz), InvalidInputError);
    EXPECT_THROW(env.step({}, 0.0, 8.0, 0.0), InvalidInputError);
    EXPECT_THROW(RoadEnveloper(tire(), 0.0), InvalidInputError);
}
