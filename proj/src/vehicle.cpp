#include "tailsim/vehicle.hpp"

#include "tailsim/config.hpp"
#include "tailsim/errors.hpp"

#include <cmath>
#include <string>

namespace tailsim {
namespace {

void require(bool ok, const char* field, const char* what) {
    if (!ok) throw ValidationError(field, what);
}

bool positive(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

void validate(const VehicleParams& p) {
    require(positive(p.mass), "mass", "must be > 0");
    require(positive(p.inertia.x()), "inertia_xx", "must be > 0");
    require(positive(p.inertia.y()), "inertia_yy", "must be > 0");
    require(positive(p.inertia.z()), "inertia_zz", "must be > 0");
    require(positive(p.arm_l), "arm_l", "must be > 0");
    require(positive(p.k_thrust), "k_thrust", "must be > 0");
    require(positive(p.k_swash), "k_swash", "must be > 0");
    require(positive(p.k_elevon), "k_elevon", "must be > 0");
    require(positive(p.k_ep), "k_ep", "must be > 0");
    require(2.0 * p.k_thrust >= p.mass * kGravity, "k_thrust",
            "two motors at full throttle cannot lift the vehicle");
    require(std::isfinite(p.gamma0) && p.gamma0 > -kPi && p.gamma0 <= kPi, "gamma0",
            "must lie in (-pi, pi]");
    require(std::isfinite(p.gamma_phys) && p.gamma_phys > -kPi && p.gamma_phys <= kPi,
            "gamma_phys", "must lie in (-pi, pi]");
    require(positive(p.k_lat), "k_lat", "must be > 0");
    require(p.rotor_dir[0] == 1 || p.rotor_dir[0] == -1, "rotor_dir_1", "must be +1 or -1");
    require(p.rotor_dir[1] == 1 || p.rotor_dir[1] == -1, "rotor_dir_2", "must be +1 or -1");
    require(positive(p.servo_limit), "servo_limit_deg", "must be > 0");
    require(positive(p.servo_rate_limit), "servo_rate_deg_s", "must be > 0");
    require(positive(p.servo_update_hz), "servo_update_hz", "must be > 0");
    require(positive(p.motor_tau), "motor_tau_s", "must be > 0");
    require(positive(p.omega_max), "omega_max", "must be > 0");
    require(positive(p.omega_hover) && p.omega_hover <= p.omega_max, "omega_hover",
            "must lie in (0, omega_max]");
    require(positive(p.encoder_rate_hz), "encoder_rate_hz", "must be > 0");
    require(positive(p.wing_area), "wing_area", "must be > 0");
    require(positive(p.wing_span), "wing_span", "must be > 0");
    require(std::isfinite(p.wing_cp_z), "wing_cp_z", "must be finite");
    require(std::isfinite(p.wing_cp_travel) && p.wing_cp_travel >= 0.0, "wing_cp_travel", "must be >= 0");
    require(p.n_strips >= 1 && p.n_strips <= 1000, "n_strips", "must lie in [1, 1000]");
    require(std::isfinite(p.c_d0) && p.c_d0 >= 0.0, "c_d0", "must be >= 0");
    require(positive(p.elevon_area), "elevon_area", "must be > 0");
    require(positive(p.elevon_arm), "elevon_arm", "must be > 0");
    require(std::isfinite(p.k_efx) && p.k_efx >= 0.0, "k_efx", "must be >= 0");
    require(std::isfinite(p.eta_min) && p.eta_min >= 0.0 && p.eta_min <= 1.0, "eta_min",
            "must lie in [0, 1]");
    require(positive(p.rotor_disk_area), "rotor_disk_area", "must be > 0");
    require(positive(p.ground_effect_height), "ground_effect_height", "must be > 0");
    require(positive(p.air_density), "air_density", "must be > 0");
    require(std::isfinite(p.gear_height) && p.gear_height >= 0.0, "gear_height", "must be >= 0");
    require(positive(p.gear_stiffness), "gear_stiffness", "must be > 0");
    require(std::isfinite(p.trim_tau_y), "trim_tau_y", "must be finite");
}

VehicleParams load_params(std::string_view config_text) {
    return load_config(config_text).vehicle;
}

std::string serialize(const VehicleParams& p) {
    Config c;
    c.vehicle = p;
    const std::string full = serialize_config(c);
    // Only the [vehicle] section: it is written first and ends at the next header.
    const auto start = full.find("[vehicle]");
    const auto end = full.find("\n[", start + 1);
    return full.substr(start, end == std::string::npos ? std::string::npos : end - start + 1);
}

HoverSetpoint hover_setpoint(const VehicleParams& p) {
    HoverSetpoint h;
    h.thrust = p.mass * kGravity;
    h.throttle = h.thrust / (2.0 * p.k_thrust);
    if (!(h.throttle < 1.0)) {
        throw InfeasibleError("hover throttle " + std::to_string(h.throttle) + " >= 1");
    }
    return h;
}

}  // namespace tailsim
