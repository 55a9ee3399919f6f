#pragma once

// Full run configuration: INI-style text with the sections
//   [vehicle]  physical parameters
//   [control]  gains and limits
//   [sim]      dt_s, fidelity, variant, seed, duration_s, ...
//   [wind]     background wind and fan-jet profile
//   [scenario] name and scenario-specific keys
// Missing keys take defaults; unknown sections or keys are errors.

#include "tailsim/allocation.hpp"
#include "tailsim/common.hpp"
#include "tailsim/control.hpp"
#include "tailsim/environment.hpp"
#include "tailsim/vehicle.hpp"

#include <cstdint>
#include <string>
#include <string_view>

namespace tailsim {

struct SimSettings {
    double dt_s = 0.001;
    Fidelity fidelity = Fidelity::Averaged;
    Variant variant = Variant::Sea;
    std::uint64_t seed = 1;
    double duration_s = 0.0; // 0: scenario default
    SaturationPriority saturation_priority = SaturationPriority::Thrust;
    double trace_rate_hz = 100.0;
    // Sensor noise (standard deviations); zero keeps the controller on true state.
    double noise_pos = 0.0;   // m
    double noise_vel = 0.0;   // m/s
    double noise_att = 0.0;   // rad
    double noise_gyro = 0.0;  // rad/s

    friend bool operator==(const SimSettings&, const SimSettings&) = default;
};

struct WindSettings {
    WindKind kind = WindKind::None; // background field for every scenario
    Vec3 uniform = Vec3::Zero();
    // Fan-jet profile used wherever a scenario places fans.
    double fan_v_ref = 4.5;
    double fan_d_ref = 1.0;
    double fan_jet_radius = 0.4;
    double fan_decay_exp = 1.0;
    double fan_spinup_s = 0.3;

    friend bool operator==(const WindSettings&, const WindSettings&) = default;
};

enum class Platform { Ground, Pedestal };
enum class TakeoffControl { Attitude, Position };

struct ScenarioSettings {
    std::string name = "fig8";

    // takeoff
    Platform platform = Platform::Ground;
    TakeoffControl takeoff_control = TakeoffControl::Attitude;
    double pedestal_height = 1.0;     // m
    double takeoff_ramp_s = 3.0;      // manual throttle ramp
    double takeoff_thrust_ratio = 1.15; // final manual thrust / weight
    double takeoff_climb = 1.0;       // m, position-mode ascent
    double takeoff_climb_s = 4.0;
    bool ground_effect = true;

    // common hover height for airborne scenarios
    double hover_height = 1.5;

    // fig8
    double fig8_length = 2.0;
    double fig8_width = 1.0;
    double fig8_period = 5.0;
    double fig8_edge_period = 7.5;
    double yaw_hold_speed = 0.2;

    // hover_gust
    double gust_on_s = 2.0;
    double gust_off_s = 7.0;
    double gust_v_scale = 1.0;

    // step (unbalanced fan)
    char step_axis = 'x';
    double step_v_ref = 3.5;
    double step_distance = 1.0;
    double step_out_s = 3.0;
    double step_back_s = 8.0;

    // transition
    double transition_pitch_deg = -65.0;
    double transition_ramp_s = 2.0;
    double transition_hold_s = 10.0;
    double transition_max_throttle = 0.8;
    bool wing_model = true;

    friend bool operator==(const ScenarioSettings&, const ScenarioSettings&) = default;
};

struct Config {
    VehicleParams vehicle;
    ControlGains control;
    SimSettings sim;
    WindSettings wind;
    ScenarioSettings scenario;

    friend bool operator==(const Config&, const Config&) = default;
};

/// Parses and validates configuration text. ParseError for malformed text or
/// unparseable values, ValidationError for invariant violations (names the key).
Config load_config(std::string_view text);

/// Reads a file and parses it; ConfigError if unreadable.
Config load_config_file(const std::string& path);

/// Full resolved configuration, every key written; round-trips through load_config.
std::string serialize_config(const Config& c);

/// Validates every section.
void validate(const Config& c);

/// Sets one key from outside a file ("section.key"), used by CLI overrides.
void set_config_value(Config& c, std::string_view section, std::string_view key,
                      std::string_view value);

}  // namespace tailsim
