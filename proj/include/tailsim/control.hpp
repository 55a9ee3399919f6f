#pragma once

// Cascaded multirotor controller in the usual PX4 arrangement:
// position (P) -> velocity (PID) -> thrust vector -> attitude setpoint ->
// attitude (quaternion P) -> body rate (PID) -> desired wrench.
//
// Loop rates: position 100 Hz, velocity 250 Hz, attitude and rate 1 kHz.

#include "tailsim/common.hpp"
#include "tailsim/frames.hpp"
#include "tailsim/vehicle.hpp"

#include <array>
#include <cstdint>

namespace tailsim {

struct PidGains {
    double p = 0.0;
    double i = 0.0;
    double d = 0.0;
    friend bool operator==(const PidGains&, const PidGains&) = default;
};

struct ControlGains {
    Vec3 pos_p{1.2, 1.2, 1.5};
    std::array<PidGains, 3> vel{{{3.0, 1.0, 0.0}, {3.0, 1.0, 0.0}, {4.0, 2.0, 0.0}}};
    Vec3 att_p{6.0, 6.0, 5.0};
    std::array<PidGains, 3> rate{{{0.5, 0.3, 0.004}, {0.25, 0.4, 0.002}, {0.6, 0.3, 0.0}}};

    double vel_i_limit = 3.0;          // m/s^2
    Vec3 rate_i_limit{0.3, 0.3, 0.3};  // N m
    double vel_max = 3.0;              // m/s
    double max_tilt = deg2rad(35.0);   // rad
    double max_rate = deg2rad(220.0);  // rad/s, per axis
    Vec3 tau_limit{1.5, 1.5, 1.5};     // N m
    double max_thrust_ratio = 0.95;    // of 2 * k_thrust

    friend bool operator==(const ControlGains&, const ControlGains&) = default;
};

void validate(const ControlGains& g);

enum class SetpointMode { Position, Velocity, Attitude };

struct Setpoint {
    SetpointMode mode = SetpointMode::Position;
    Vec3 position = Vec3::Zero();
    Vec3 velocity = Vec3::Zero();     // feed-forward in position mode
    Vec3 acceleration = Vec3::Zero(); // feed-forward
    double yaw = 0.0;                 // ENU heading of body x
    Quat attitude = Quat::Identity(); // attitude mode
    double thrust = 0.0;              // N, attitude mode
};

/// Body state the controller reads.
struct ControlState {
    Vec3 position = Vec3::Zero();
    Vec3 velocity = Vec3::Zero();
    Quat attitude = Quat::Identity();
    Vec3 omega = Vec3::Zero();
};

/// P law with velocity feed-forward, norm-clamped to vel_max.
Vec3 position_loop(const ControlState& s, const Setpoint& sp, const ControlGains& g);

struct VelocityLoopOutput {
    Vec3 thrust_world = Vec3::Zero(); // N
    bool saturated = false;
};

/// Velocity PID with gravity feed-forward; output thrust vector is limited in
/// tilt and magnitude. Conditional integration: the integrator is not advanced
/// on ticks where the output was limited.
class VelocityController {
public:
    VelocityLoopOutput update(const Vec3& velocity, const Vec3& velocity_d, const Vec3& accel_ff,
                              double dt, const ControlGains& g, const VehicleParams& p,
                              bool freeze_integrator = false);
    void reset();
    const Vec3& integrator() const { return integ_; }

private:
    Vec3 integ_ = Vec3::Zero();
    Vec3 prev_velocity_ = Vec3::Zero();
    bool has_prev_ = false;
};

struct AttitudeTarget {
    Quat attitude = Quat::Identity();
    double f_t = 0.0;
};

/// Aligns body -z with the thrust vector and fixes the heading of body x.
/// Throws DegenerateThrustError for |F| <= 0.1 N.
AttitudeTarget attitude_setpoint_from_thrust(const Vec3& thrust_world, double yaw);

/// Quaternion-error P law, invariant under sign flips of either quaternion.
Vec3 attitude_loop(const Quat& q, const Quat& q_d, const ControlGains& g);

/// Body-rate PID, derivative on measurement. Axes flagged in
/// `axis_saturated` keep their integrator unchanged this tick.
class RateController {
public:
    Vec3 update(const Vec3& omega, const Vec3& omega_d, double dt, const ControlGains& g,
                const std::array<bool, 3>& axis_saturated = {}, bool freeze_integrator = false);
    void reset();
    const Vec3& integrator() const { return integ_; }

private:
    Vec3 integ_ = Vec3::Zero();
    Vec3 prev_omega_ = Vec3::Zero();
    bool has_prev_ = false;
};

/// Everything the cascade produced on one tick.
struct ControlOutput {
    Wrench wrench;
    Quat attitude_d = Quat::Identity();
    Vec3 rate_d = Vec3::Zero();
    Vec3 velocity_d = Vec3::Zero();
};

/// Multi-rate cascade. Call `update` once per 1 kHz tick.
class CascadeController {
public:
    static constexpr double kTickSeconds = 0.001;
    static constexpr int kVelocityDivider = 4;  // 250 Hz
    static constexpr int kPositionDivider = 10; // 100 Hz

    CascadeController(ControlGains gains, VehicleParams params);

    /// `landed` freezes all integrators (vehicle resting on its gear).
    ControlOutput update(std::int64_t tick, const ControlState& s, const Setpoint& sp,
                         const std::array<bool, 3>& axis_saturated, bool landed);
    void reset();
    const ControlGains& gains() const { return gains_; }

private:
    ControlGains gains_;
    VehicleParams params_;
    VelocityController velocity_;
    RateController rate_;
    Vec3 velocity_d_ = Vec3::Zero();
    AttitudeTarget target_;
    bool have_target_ = false;
};

}  // namespace tailsim
