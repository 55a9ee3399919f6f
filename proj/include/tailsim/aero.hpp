#pragma once

// Elevon and wing aerodynamics.
//
// Elevon moments scale with the local slipstream dynamic pressure relative to
// hover, and with a ground-effect factor that collapses elevon authority near
// the ground. Rotor thrust is not affected by ground proximity.
//
// The main wing is a flat plate cut into spanwise strips. Each strip sees its
// own relative airflow, so a wind field covering one half-span produces yaw
// and roll moments without any extra modelling.

#include "tailsim/frames.hpp"
#include "tailsim/vehicle.hpp"

#include <array>
#include <span>
#include <vector>

namespace tailsim {

struct SurfaceState {
    double delta = 0.0;     // rad, actual deflection
    double delta_cmd = 0.0; // rad, latched servo command
};

/// Body-frame force and torque.
struct BodyLoads {
    Vec3 force = Vec3::Zero();
    Vec3 torque = Vec3::Zero();

    BodyLoads& operator+=(const BodyLoads& o) {
        force += o.force;
        torque += o.torque;
        return *this;
    }
};

/// Momentum-theory slipstream speed behind one rotor, m/s.
double propwash_speed(double rotor_thrust, const VehicleParams& p);

/// Slipstream speed of one rotor at hover thrust.
double hover_propwash_speed(const VehicleParams& p);

/// Elevon effectiveness multiplier in [eta_min, 1] for a given height above ground.
double ground_effect_factor(double height, const VehicleParams& p);

/// Elevon loads. Common-mode deflection yaws (tau_z = k_elevon (d1 + d2) s),
/// differential deflection pitches (tau_y = k_ep (d1 - d2) s) and pushes along
/// body x; s = (v_local / v_hover)^2 * eta(height) per surface. `local_speed`
/// is the airspeed over each elevon.
BodyLoads elevon_wrench(const std::array<SurfaceState, 2>& surfaces,
                        const std::array<double, 2>& local_speed, double height,
                        const VehicleParams& p, bool ground_effect = true);

/// Spanwise strip centres in body coordinates.
std::vector<Vec3> wing_strip_points(const VehicleParams& p);

struct WingInputs {
    Vec3 velocity_body = Vec3::Zero(); // CoM velocity, body frame
    Vec3 omega_body = Vec3::Zero();    // body rates
    std::span<const Vec3> strip_wind_body; // wind at each strip, body frame
};

/// Flat-plate strip loads: C_L = 2 sin(a) cos(a), C_D = 2 sin^2(a) + c_d0, with
/// a the angle between the chord (body z) and the strip's relative airflow.
BodyLoads wing_wrench(const WingInputs& in, const VehicleParams& p);

/// Convenience overload: the same wind vector at every strip.
BodyLoads wing_wrench(const Vec3& velocity_body, const Vec3& wind_body, const VehicleParams& p);

}  // namespace tailsim
