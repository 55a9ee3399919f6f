#include "tailsim/allocation.hpp"
#include "tailsim/errors.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

using namespace tailsim;

namespace {

const VehicleParams kP;
const double kHoverThrust = 2.25 * 9.81;

Wrench wrench(double f, double tx, double ty, double tz) {
    Wrench w;
    w.f_t = f;
    w.tau = Vec3(tx, ty, tz);
    return w;
}

bool contains(const std::vector<Vec2>& verts, const Vec2& v) {
    return std::any_of(verts.begin(), verts.end(),
                       [&](const Vec2& u) { return (u - v).norm() < 1e-12; });
}

}  // namespace

TEST(SeaMix, Hover) {
    const MixResult r = sea_mix(wrench(kHoverThrust, 0, 0, 0), kP);
    for (const auto& c : r.command.cyclic) {
        EXPECT_NEAR(c.c_nominal, 0.40, 1e-12);
        EXPECT_EQ(c.amplitude, 0.0);
    }
    EXPECT_EQ(r.command.servo[0], 0.0);
    EXPECT_EQ(r.command.servo[1], 0.0);
    EXPECT_FALSE(r.report.any());
}

TEST(SeaMix, PitchGoesToRotors) {
    const MixResult r = sea_mix(wrench(kHoverThrust, 0, 0.18, 0), kP);
    for (const auto& c : r.command.cyclic) {
        EXPECT_NEAR(c.amplitude, 0.1, 1e-12);
        EXPECT_EQ(c.phi, 0.0);
    }
    EXPECT_EQ(r.command.servo[0], 0.0);
    const MixResult n = sea_mix(wrench(kHoverThrust, 0, -0.18, 0), kP);
    EXPECT_NEAR(n.command.cyclic[0].amplitude, 0.1, 1e-12);
    EXPECT_EQ(n.command.cyclic[0].phi, kPi);
}

TEST(SeaMix, RollRows) {
    const double tx = 0.3;
    const MixResult r = sea_mix(wrench(kHoverThrust, tx, 0, 0), kP);
    const double base = kHoverThrust / (2 * kP.k_thrust);
    const double d = tx / (2 * kP.arm_l * kP.k_thrust);
    EXPECT_NEAR(r.command.cyclic[0].c_nominal, base - d, 1e-12);
    EXPECT_NEAR(r.command.cyclic[1].c_nominal, base + d, 1e-12);
}

TEST(SeaMix, YawClamp) {
    const double limit_tz = 2 * kP.k_elevon * kP.servo_limit;
    const MixResult r = sea_mix(wrench(kHoverThrust, 0, 0, 1.5 * limit_tz), kP);
    EXPECT_DOUBLE_EQ(r.command.servo[0], kP.servo_limit);
    EXPECT_DOUBLE_EQ(r.command.servo[1], kP.servo_limit);
    EXPECT_TRUE(r.report.flags[kD1]);
    EXPECT_TRUE(r.report.flags[kD2]);
    EXPECT_TRUE(r.report.axis_saturated[2]);
    EXPECT_NEAR(r.report.achieved.tau.z(), limit_tz, 1e-12);
}

TEST(SeaMix, AmplitudeBoundedByThrottleHeadroom) {
    const MixResult r = sea_mix(wrench(0.2 * 2 * kP.k_thrust, 0, 1.0, 0), kP);
    EXPECT_NEAR(r.command.cyclic[0].amplitude, 0.2, 1e-12);
    EXPECT_TRUE(r.report.flags[kA1]);
    EXPECT_TRUE(r.report.axis_saturated[1]);
    EXPECT_NEAR(r.report.achieved.tau.y(), 2 * kP.k_swash * 0.2, 1e-12);
}

TEST(SeaMix, MomentPriorityMovesThrottle) {
    const MixResult r = sea_mix(wrench(0.2 * 2 * kP.k_thrust, 0, 0.54, 0), kP,
                                SaturationPriority::Moment);
    EXPECT_NEAR(r.command.cyclic[0].amplitude, 0.3, 1e-12);
    EXPECT_NEAR(r.command.cyclic[0].c_nominal, 0.3, 1e-12);
    EXPECT_TRUE(r.report.flags[kC1]);
    EXPECT_FALSE(r.report.flags[kA1]);
    EXPECT_NEAR(r.report.achieved.tau.y(), 0.54, 1e-12);
}

TEST(CeaMix, YawOnlyMatchesSea) {
    const Wrench w = wrench(kHoverThrust, 0, 0, 0.1);
    const MixResult a = cea_mix(w, kP);
    const MixResult b = sea_mix(w, kP);
    EXPECT_EQ(a.command.servo, b.command.servo);
}

TEST(CeaMix, PitchYawCompeteForTravel) {
    const double each = 0.6 * kP.servo_limit * 2 * kP.k_elevon;
    const MixResult r = cea_mix(wrench(kHoverThrust, 0, each, each), kP);
    // delta1 = 1.2 limit -> clamped, delta2 = 0
    EXPECT_DOUBLE_EQ(r.command.servo[0], kP.servo_limit);
    EXPECT_NEAR(r.command.servo[1], 0.0, 1e-15);
    EXPECT_TRUE(r.report.flags[kD1]);
    EXPECT_TRUE(r.report.axis_saturated[1]);
    EXPECT_TRUE(r.report.axis_saturated[2]);
    const double lost = kP.k_ep * kP.servo_limit;
    EXPECT_NEAR(r.report.achieved.tau.y(), lost, 1e-12);
    EXPECT_NEAR(r.report.achieved.tau.z(), kP.k_elevon * kP.servo_limit, 1e-12);
    EXPECT_LT(r.report.achieved.tau.y(), each);
    // the same demand is comfortably inside SEA authority
    EXPECT_FALSE(sea_mix(wrench(kHoverThrust, 0, each, each), kP).report.any());
}

TEST(CeaMix, PurePitchIsAntisymmetric) {
    const MixResult r = cea_mix(wrench(kHoverThrust, 0, 0.1, 0), kP);
    EXPECT_DOUBLE_EQ(r.command.servo[0], -r.command.servo[1]);
    EXPECT_NEAR(forward_map(r.command, Variant::Cea, kP).tau.z(), 0.0, 1e-15);
    EXPECT_EQ(r.command.cyclic[0].amplitude, 0.0);
}

TEST(ForwardMap, Hover) {
    ActuatorCommand c;
    c.cyclic[0].c_nominal = c.cyclic[1].c_nominal = 0.4;
    const Wrench w = forward_map(c, Variant::Sea, kP);
    EXPECT_NEAR(w.f_t, 22.07, 0.005);
    EXPECT_NEAR(w.tau.x(), 0.0, 1e-15);
}

TEST(ForwardMap, CeaDifferentialElevons) {
    ActuatorCommand c;
    c.servo = {0.1, -0.1};
    const Wrench w = forward_map(c, Variant::Cea, kP);
    EXPECT_NEAR(w.tau.y(), 0.24, 1e-12);
    EXPECT_NEAR(w.tau.z(), 0.0, 1e-15);
}

TEST(ForwardMap, RoundTripProperty) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (Variant v : {Variant::Sea, Variant::Cea}) {
        int checked = 0;
        for (int i = 0; i < 2000; ++i) {
            const double c = 0.45 + 0.3 * u(rng);
            const auto lim = pitch_yaw_limits(v, c, kP);
            const Wrench w = wrench(2 * kP.k_thrust * c, 0.5 * u(rng), 0.45 * lim.tau_y_max * u(rng),
                                    0.45 * lim.tau_z_max * u(rng));
            const MixResult r = mix(v, w, kP);
            if (r.report.any()) continue;
            ++checked;
            const Wrench back = forward_map(r.command, v, kP);
            ASSERT_NEAR(back.f_t, w.f_t, 1e-9);
            ASSERT_NEAR((back.tau - w.tau).norm(), 0.0, 1e-9);
        }
        EXPECT_GT(checked, 1500);
    }
}

TEST(ForwardMap, ClampInvariants) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (Variant v : {Variant::Sea, Variant::Cea}) {
        for (int i = 0; i < 2000; ++i) {
            const MixResult r = mix(v, wrench(30 + 20 * u(rng), u(rng), u(rng), u(rng)), kP);
            for (const auto& c : r.command.cyclic) {
                ASSERT_GE(c.c_nominal - c.amplitude, -1e-12);
                ASSERT_LE(c.c_nominal + c.amplitude, 1 + 1e-12);
            }
            for (double d : r.command.servo) ASSERT_LE(std::abs(d), kP.servo_limit);
        }
    }
}

TEST(ReachableSet, SeaBoxCeaDiamond) {
    const double c = 0.4;
    const double ty_sea = 2 * kP.k_swash * c;
    const double ty_cea = 2 * kP.k_ep * kP.servo_limit;
    const double tz = 2 * kP.k_elevon * kP.servo_limit;

    const auto sea = reachable_pitch_yaw_vertices(Variant::Sea, c, kP);
    ASSERT_EQ(sea.size(), 4u);
    for (double sy : {-1.0, 1.0}) {
        for (double sz : {-1.0, 1.0}) EXPECT_TRUE(contains(sea, {sy * ty_sea, sz * tz}));
    }

    const auto cea = reachable_pitch_yaw_vertices(Variant::Cea, c, kP);
    ASSERT_EQ(cea.size(), 4u);
    EXPECT_TRUE(contains(cea, {ty_cea, 0}));
    EXPECT_TRUE(contains(cea, {-ty_cea, 0}));
    EXPECT_TRUE(contains(cea, {0, tz}));
    EXPECT_TRUE(contains(cea, {0, -tz}));
}

TEST(ReachableSet, Limits) {
    const auto s = pitch_yaw_limits(Variant::Sea, 0.4, kP);
    EXPECT_NEAR(s.tau_y_max, 0.72, 1e-12);
    EXPECT_NEAR(s.tau_z_max, 2 * 1.2 * kP.servo_limit, 1e-12);
    EXPECT_NEAR(pitch_yaw_limits(Variant::Sea, 0.8, kP).tau_y_max, 0.36, 1e-12);
    EXPECT_NEAR(pitch_yaw_limits(Variant::Cea, 0.4, kP).tau_y_max, 2 * 1.2 * kP.servo_limit, 1e-12);
}

TEST(SaturationDuty, Counts) {
    SaturationDuty d;
    EXPECT_EQ(d.any_duty(), 0.0);
    SaturationReport none, servo, thr;
    servo.flags[kD2] = true;
    thr.flags[kC1] = true;
    d.record(none);
    d.record(servo);
    d.record(thr);
    d.record(none);
    EXPECT_EQ(d.ticks(), 4);
    EXPECT_DOUBLE_EQ(d.any_duty(), 0.5);
    EXPECT_DOUBLE_EQ(d.servo_duty(), 0.25);
}

TEST(SaturationPriority, Parse) {
    EXPECT_EQ(parse_saturation_priority("moment"), SaturationPriority::Moment);
    EXPECT_EQ(to_string(parse_saturation_priority("thrust")), "thrust");
    EXPECT_THROW(parse_saturation_priority("both"), ParseError);
}
