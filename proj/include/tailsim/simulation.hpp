#pragma once

// Closed-loop scheduler: one `tick()` advances 1 ms of simulated time.
//
// Per tick: the cascade and mixer run once (1 kHz), servo commands are latched
// at 50 Hz, encoder angles are sampled at encoder_rate_hz with zero-order
// hold, and the airframe is stepped at dt (one step at averaged fidelity,
// several at cyclic fidelity).

#include "tailsim/allocation.hpp"
#include "tailsim/config.hpp"
#include "tailsim/control.hpp"
#include "tailsim/dynamics.hpp"
#include "tailsim/environment.hpp"

#include <cstdint>
#include <random>

namespace tailsim {

struct SimOptions {
    Variant variant = Variant::Sea;
    Fidelity fidelity = Fidelity::Averaged;
    double dt = 0.001;
    SaturationPriority priority = SaturationPriority::Thrust;
    double contact_height = 0.0;
    bool ground_effect = true;
    bool wing = true;
    std::uint64_t seed = 1;
    double noise_pos = 0.0;
    double noise_vel = 0.0;
    double noise_att = 0.0;
    double noise_gyro = 0.0;
};

/// Options for a config, taking variant/fidelity/dt/seed/noise from [sim].
SimOptions sim_options_from(const Config& c);

/// Vehicle at rest on its gear (or hovering at `height`, rotors at hover thrust).
SimState resting_state(const VehicleParams& p, double contact_height, double yaw);
SimState hover_state(const VehicleParams& p, const Vec3& position, double yaw);

class Simulator {
public:
    Simulator(const Config& cfg, SimOptions opts, WindField wind, SimState initial);

    /// Advances one 1 ms control period. Throws SimulationFault on non-finite values.
    void tick(const Setpoint& sp);

    const SimState& state() const { return state_; }
    const ActuatorCommand& command() const { return command_; }
    const SaturationReport& saturation() const { return saturation_; }
    const SaturationDuty& duty() const { return duty_; }
    const ControlOutput& control() const { return control_; }
    const TotalLoads& last_loads() const { return loads_; }
    const WindField& wind() const { return wind_; }
    std::int64_t tick_index() const { return tick_; }
    double time() const { return state_.time; }

private:
    ControlState measure();
    void physics_step(double dt);

    Config cfg_;
    SimOptions opts_;
    WindField wind_;
    SimState state_;
    CascadeController controller_;
    ActuatorCommand command_;
    SaturationReport saturation_;
    SaturationDuty duty_;
    ControlOutput control_;
    TotalLoads loads_;
    std::array<double, 2> encoder_held_{0.0, 0.0};
    double next_encoder_time_ = 0.0;
    std::int64_t tick_ = 0;
    int substeps_ = 1;
    std::mt19937_64 rng_;
};

}  // namespace tailsim
