#pragma once

// Physical parameters of the dual-rotor tail-sitter.
//
// Mass, span and thrust-to-weight ratio follow the flown prototype. Inertia,
// swashplateless gain (k_swash), elevon gains (k_elevon, k_ep), arm length and
// elevon/wing geometry are unvalidated defaults: they were picked to give
// realistic hover authority and are shared unchanged between the SEA and CEA
// variants, so only orderings between the two are meaningful.

#include "tailsim/frames.hpp"

#include <array>
#include <string>
#include <string_view>

namespace tailsim {

struct VehicleParams {
    double mass = 2.25;                          // kg
    Vec3 inertia{0.055, 0.020, 0.065};           // kg m^2, body diagonal
    double arm_l = 0.20;                         // m, body-y distance CoM -> motor
    double k_thrust = 2.5 * 2.25 * kGravity / 2; // N per unit throttle
    double k_swash = 0.9;                        // N m per unit sinusoid amplitude
    double k_elevon = 1.2;                       // N m per rad, yaw (common mode)
    double k_ep = 1.2;                           // N m per rad, pitch (differential)
    double gamma0 = 0.35;                        // rad, phase compensation used by the ESC
    double gamma_phys = 0.35;                    // rad, true hinge lag of the mechanism
    double k_lat = 2 * 0.9;                      // N m, within-revolution moment gain
    std::array<int, 2> rotor_dir{+1, -1};        // +1 CCW, -1 CW seen from the thrust side

    double servo_limit = deg2rad(11.0);       // rad
    double servo_rate_limit = deg2rad(400.0); // rad/s
    double servo_update_hz = 50.0;            // PWM command rate
    double motor_tau = 0.005;                 // s, throttle -> thrust lag
    double omega_max = 1200.0;                // rad/s
    double omega_hover = 650.0;               // rad/s
    double encoder_rate_hz = 910.0;

    double wing_area = 0.25;          // m^2
    double wing_span = 1.07;          // m
    double wing_cp_z = 0.0;           // m, body-z offset of the wing pressure line
    double wing_cp_travel = 0.03;     // m, aft shift of that line at 90 deg incidence
    int n_strips = 8;
    double c_d0 = 0.05;
    double elevon_area = 0.03;        // m^2 (descriptive)
    double elevon_arm = 0.18;         // m, body-z distance CoM -> elevon pressure center
    double k_efx = 1.2 / 0.18;        // N per rad at hover propwash
    double eta_min = 0.05;
    double rotor_disk_area = 0.049;   // m^2
    double ground_effect_height = 0.35; // m
    double air_density = 1.225;       // kg/m^3

    double gear_height = 0.12;    // m
    double gear_stiffness = 20.0; // N m / rad, stance restoring spring
    double trim_tau_y = 0.05;     // N m, residual canard trim moment

    friend bool operator==(const VehicleParams&, const VehicleParams&) = default;
};

/// Checks every invariant; throws ValidationError naming the first bad field.
void validate(const VehicleParams& p);

/// Parses a full configuration text and returns its validated vehicle part.
/// Unknown sections or keys are errors.
VehicleParams load_params(std::string_view config_text);

/// Emits the [vehicle] section; `load_params(serialize(p)) == p`.
std::string serialize(const VehicleParams& p);

struct HoverSetpoint {
    double thrust = 0.0;   // N
    double throttle = 0.0; // per motor
};

/// Steady hover thrust and per-motor throttle. Throws InfeasibleError when the
/// hover throttle would reach full scale.
HoverSetpoint hover_setpoint(const VehicleParams& p);

}  // namespace tailsim
