#include "tailsim/config.hpp"
#include "tailsim/errors.hpp"
#include "tailsim/vehicle.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace tailsim;

TEST(VehicleParams, EmptyConfigGivesDefaults) {
    const VehicleParams p = load_params("");
    EXPECT_DOUBLE_EQ(p.mass, 2.25);
    EXPECT_DOUBLE_EQ(p.wing_span, 1.07);
    EXPECT_EQ(p, VehicleParams{});
}

TEST(VehicleParams, DefaultThrustGain) {
    // thrust-to-weight 2.5 shared by two motors
    EXPECT_NEAR(VehicleParams{}.k_thrust, 27.59, 0.005);
}

TEST(VehicleParams, NegativeMassNamesField) {
    try {
        load_params("[vehicle]\nmass = -1\n");
        FAIL() << "expected ValidationError";
    } catch (const ValidationError& e) {
        EXPECT_EQ(e.field(), "mass");
    }
}

TEST(VehicleParams, RejectsBadInvariants) {
    VehicleParams p;
    p.servo_limit = 0.0;
    EXPECT_THROW(validate(p), ValidationError);
    p = {};
    p.gamma0 = -kPi;
    EXPECT_THROW(validate(p), ValidationError);
    p.gamma0 = kPi;
    EXPECT_NO_THROW(validate(p));
    p = {};
    p.k_thrust = 10.0; // cannot lift 2.25 kg with two motors
    EXPECT_THROW(validate(p), ValidationError);
}

TEST(VehicleParams, UnknownKeyIsParseError) {
    EXPECT_THROW(load_params("[vehicle]\nwingspan = 1\n"), Error);
    EXPECT_THROW(load_params("[nonsense]\nmass = 1\n"), Error);
}

TEST(VehicleParams, SerializeRoundTrip) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.5, 1.5);
    for (int i = 0; i < 50; ++i) {
        VehicleParams p;
        p.mass *= u(rng);
        p.inertia *= u(rng);
        p.k_swash *= u(rng);
        p.gamma0 = u(rng) - 1.0;
        p.servo_limit = deg2rad(20.0 * u(rng));
        p.wing_cp_z = u(rng) - 1.0;
        ASSERT_EQ(load_params(serialize(p)), p);
    }
}

TEST(HoverSetpoint, Defaults) {
    const HoverSetpoint h = hover_setpoint(VehicleParams{});
    EXPECT_NEAR(h.thrust, 2.25 * 9.81, 1e-12);
    EXPECT_NEAR(h.throttle, 22.0725 / (2 * 27.590625), 1e-12);
    EXPECT_NEAR(h.throttle, 0.40, 1e-9);
}

TEST(HoverSetpoint, VanishingMass) {
    VehicleParams p;
    p.mass = 1e-9;
    EXPECT_NEAR(hover_setpoint(p).throttle, 0.0, 1e-9);
}

TEST(HoverSetpoint, Infeasible) {
    VehicleParams p;
    p.k_thrust = p.mass * kGravity / 2.0;
    EXPECT_THROW(hover_setpoint(p), InfeasibleError);
}
