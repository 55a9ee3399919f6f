#pragma once

// Rigid-body state, load aggregation, integration and ground contact.

#include "tailsim/aero.hpp"
#include "tailsim/allocation.hpp"
#include "tailsim/common.hpp"
#include "tailsim/environment.hpp"
#include "tailsim/propulsion.hpp"
#include "tailsim/vehicle.hpp"

#include <array>
#include <optional>

namespace tailsim {

struct SimState {
    Vec3 position = Vec3::Zero();     // m, world
    Vec3 velocity = Vec3::Zero();     // m/s, world
    Quat attitude = Quat::Identity(); // body -> world
    Vec3 omega = Vec3::Zero();        // rad/s, body
    std::array<RotorState, 2> rotors{RotorState{1}, RotorState{2}};
    std::array<SurfaceState, 2> surfaces{};
    double time = 0.0;
    bool on_ground = false;
};

/// Environment seen by the airframe on one step.
struct EnvContext {
    const WindField* wind = nullptr;
    double contact_height = 0.0;  // height of the surface the gear rests on
    bool ground_effect = true;    // false: eta fixed at 1
    bool wing = true;             // false: no wing aerodynamics
    /// Held encoder angles the ESCs modulate against (cyclic fidelity).
    std::array<std::optional<double>, 2> encoder_theta{};
};

/// Loads acting on the vehicle, with a breakdown kept for diagnostics.
struct TotalLoads {
    Vec3 force_world = Vec3::Zero(); // includes gravity
    Vec3 torque_body = Vec3::Zero();
    Wrench rotor;      // thrust + rotor torques
    BodyLoads elevon;
    BodyLoads wing;
    Vec3 wind_com = Vec3::Zero();    // world wind at the CoM
};

/// Sums rotor, elevon, wing, trim, gear and gravity loads for the current
/// state. In averaged fidelity rotor loads come from the lagged rotor state;
/// in cyclic fidelity the lateral moment follows the instantaneous throttle.
TotalLoads total_wrench(const SimState& s, const ActuatorCommand& cmd, const EnvContext& env,
                        Fidelity fidelity, const VehicleParams& p);

/// Largest allowed rigid-body step for a fidelity.
double max_step(Fidelity fidelity, const VehicleParams& p);

/// Rigid-body step with loads held over the step. RK4 on velocity, position
/// and Euler's rotational equation (gyroscopic term included); attitude via
/// the exponential map of a fourth-order Magnus increment, then renormalised.
SimState integrate_step(const SimState& s, const TotalLoads& loads, double dt,
                        const VehicleParams& p, Fidelity fidelity = Fidelity::Averaged);

/// Resting contact on the gear. While the net vertical force points down and
/// the gear touches `contact_height`, the vehicle is pinned there; it lifts off
/// as soon as the net vertical force turns upward.
SimState ground_contact(const SimState& s, const TotalLoads& loads, double contact_height,
                        const VehicleParams& p);

/// Servo update: moves each deflection toward its latched command under the
/// rate limit and the travel limit.
std::array<SurfaceState, 2> advance_servos(const std::array<SurfaceState, 2>& s, double dt,
                                           const VehicleParams& p);

/// Height of the elevons above the floor used for ground effect.
double elevon_height(const SimState& s);

/// Mechanical energy (kinetic + gravitational potential) of the rigid body.
double mechanical_energy(const SimState& s, const VehicleParams& p, double g = kGravity);

}  // namespace tailsim
