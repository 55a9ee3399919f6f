#include "tailsim/errors.hpp"
#include "tailsim/propulsion.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace tailsim;

namespace {

// Mean swash moment over one revolution by midpoint quadrature of the
// instantaneous hub moment (arm term removed by zero thrust).
Vec2 quadrature_mean(const CyclicCommand& cmd, int motor, const VehicleParams& p, int n = 20000) {
    Vec2 sum = Vec2::Zero();
    for (int k = 0; k < n; ++k) {
        RotorState s;
        s.motor_index = motor;
        s.theta = (k + 0.5) * 2.0 * kPi / n;
        const Wrench w = cyclic_rotor_wrench(s, cmd, p);
        sum += Vec2(w.tau.x(), w.tau.y());
    }
    return sum / n;
}

}  // namespace

TEST(CyclicThrottle, ZeroAmplitude) {
    for (double th : {0.0, 1.0, 3.0, 5.5}) {
        EXPECT_DOUBLE_EQ(cyclic_throttle({0.37, 0.0, 1.2}, th, 1, 0.3), 0.37);
        EXPECT_DOUBLE_EQ(cyclic_throttle({0.37, 0.0, 1.2}, th, 2, 0.3), 0.37);
    }
}

TEST(CyclicThrottle, PeakAtPhaseMinusGamma) {
    const double phi = 0.8, g0 = 0.3;
    EXPECT_NEAR(cyclic_throttle({0.4, 0.1, phi}, phi - g0, 1, g0), 0.5, 1e-15);
    EXPECT_NEAR(cyclic_throttle({0.4, 0.1, phi}, phi + g0, 2, g0), 0.5, 1e-15);
}

TEST(CyclicThrottle, MotorTwoHandEvaluation) {
    EXPECT_NEAR(cyclic_throttle({0.4, 0.1, 0.0}, 0.0, 2, 0.3), 0.4955336489125606, 1e-12);
}

TEST(CyclicThrottle, ClampsToUnitRange) {
    EXPECT_DOUBLE_EQ(cyclic_throttle({0.95, 0.2, 0.0}, 0.0, 1, 0.0), 1.0);
    EXPECT_DOUBLE_EQ(cyclic_throttle({0.05, 0.2, kPi}, 0.0, 1, 0.0), 0.0);
}

TEST(MomentDirection, RoundTrip) {
    for (double a = -3.0; a < 3.1; a += 0.37) {
        const Vec2 t = moment_direction_to_torque(a, 2.0);
        EXPECT_NEAR(t.norm(), 2.0, 1e-12);
        EXPECT_NEAR(wrap_pi(torque_to_moment_direction(t) - a), 0.0, 1e-12);
    }
    const Vec2 pitch = moment_direction_to_torque(0.0, 1.0);
    EXPECT_NEAR(pitch.x(), 0.0, 1e-15);
    EXPECT_NEAR(pitch.y(), 1.0, 1e-15);
}

TEST(HubMoment, NoModulationNoMoment) {
    const Vec2 m = quadrature_mean({0.4, 0.0, 0.0}, 1, VehicleParams{});
    EXPECT_NEAR(m.norm(), 0.0, 1e-15);
}

TEST(HubMoment, CompensatedMeanPointsAlongPitch) {
    VehicleParams p;
    p.gamma0 = p.gamma_phys = 0.35;
    for (int motor : {1, 2}) {
        const Vec2 m = quadrature_mean({0.4, 0.1, 0.0}, motor, p);
        EXPECT_NEAR(m.x(), 0.0, 1e-9) << motor;
        EXPECT_NEAR(m.y(), 0.09, 1e-9) << motor;
    }
}

TEST(HubMoment, HalfTurnMiscalibrationFlipsMoment) {
    VehicleParams good, bad;
    bad.gamma0 = wrap_pi(good.gamma_phys + kPi);
    for (int motor : {1, 2}) {
        const CyclicCommand cmd{0.4, 0.1, 0.9};
        const Vec2 a = quadrature_mean(cmd, motor, good);
        const Vec2 b = quadrature_mean(cmd, motor, bad);
        EXPECT_NEAR((a + b).norm(), 0.0, 1e-9);
        EXPECT_GT(a.norm(), 0.08);
    }
}

TEST(AveragedWrench, ThrustAndArm) {
    const VehicleParams p;
    const Wrench w1 = averaged_rotor_wrench({0.4, 0.0, 0.0}, 1, p);
    EXPECT_NEAR(w1.f_t, 0.4 * 27.590625, 1e-12);
    EXPECT_NEAR(w1.f_t, 11.04, 0.005);
    EXPECT_NEAR(w1.tau.x(), -0.2 * w1.f_t, 1e-12);
    EXPECT_NEAR(averaged_rotor_wrench({0.4, 0.0, 0.0}, 2, p).tau.x(), 0.2 * w1.f_t, 1e-12);
}

TEST(AveragedWrench, SwashPitch) {
    const VehicleParams p;
    EXPECT_NEAR(averaged_rotor_wrench({0.4, 0.1, 0.0}, 1, p).tau.y(), 0.09, 1e-12);
    EXPECT_NEAR(averaged_rotor_wrench({0.4, 0.1, kPi}, 1, p).tau.y(), -0.09, 1e-12);
}

TEST(AveragedWrench, MatchesQuadratureForAnyDirection) {
    const VehicleParams p;
    for (double phi : {-2.5, -1.0, 0.3, 1.7, 3.0}) {
        for (int motor : {1, 2}) {
            const CyclicCommand cmd{0.45, 0.12, phi};
            const Vec2 q = quadrature_mean(cmd, motor, p);
            const Wrench w = averaged_rotor_wrench(cmd, motor, p);
            const double arm = (motor == 1 ? -1 : 1) * p.arm_l * w.f_t;
            EXPECT_NEAR(q.x(), w.tau.x() - arm, 1e-9);
            EXPECT_NEAR(q.y(), w.tau.y(), 1e-9);
        }
    }
}

TEST(RotorStep, RejectsLargeStep) {
    const VehicleParams p;
    RotorState s;
    EXPECT_THROW(rotor_step(s, {0.4, 0.1, 0.0}, 2.0 * max_cyclic_step(p), p), StepSizeError);
    EXPECT_NO_THROW(rotor_step(s, {0.4, 0.1, 0.0}, max_cyclic_step(p), p));
}

TEST(RotorStep, ThrustFollowsMotorLag) {
    const VehicleParams p;
    RotorState s;
    const double dt = max_cyclic_step(p) / 2;
    double t = 0.0;
    while (t < p.motor_tau) {
        s = rotor_step(s, {0.4, 0.0, 0.0}, dt, p).state;
        t += dt;
    }
    const double expect = p.k_thrust * 0.4 * (1.0 - std::exp(-t / p.motor_tau));
    EXPECT_NEAR(s.thrust_actual, expect, 1e-9);
}

TEST(Calibration, RecoversHingeLag) {
    VehicleParams p;
    p.gamma_phys = 0.35;
    p.gamma0 = 0.0;
    const double dt = max_cyclic_step(p) / 2;
    for (int motor : {1, 2}) {
        const auto tr = record_testbench({0.4, 0.1, 0.0}, motor, p, 20, dt);
        EXPECT_NEAR(calibrate_gamma0(tr), 0.35, 0.01) << motor;
    }
}

TEST(Calibration, NoLag) {
    VehicleParams p;
    p.gamma_phys = 0.0;
    p.gamma0 = 0.0;
    const auto tr = record_testbench({0.4, 0.1, 1.0}, 1, p, 20, max_cyclic_step(p) / 2);
    EXPECT_NEAR(calibrate_gamma0(tr), 0.0, 0.01);
}

TEST(Calibration, InsufficientData) {
    const VehicleParams p;
    const double dt = max_cyclic_step(p) / 2;
    EXPECT_THROW(calibrate_gamma0(record_testbench({0.4, 0.0, 0.0}, 1, p, 20, dt)),
                 InsufficientDataError);
    EXPECT_THROW(calibrate_gamma0(record_testbench({0.4, 0.1, 0.0}, 1, p, 3, dt)),
                 InsufficientDataError);
    EXPECT_THROW(calibrate_gamma0(TestbenchTrace{}), InsufficientDataError);
}
