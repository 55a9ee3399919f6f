#include "tailsim/simulation.hpp"

#include "tailsim/errors.hpp"

#include <algorithm>
#include <cmath>

namespace tailsim {
namespace {

bool finite_state(const SimState& s) {
    return s.position.allFinite() && s.velocity.allFinite() && s.attitude.coeffs().allFinite() &&
           s.omega.allFinite() && std::isfinite(s.rotors[0].thrust_actual) &&
           std::isfinite(s.rotors[1].thrust_actual);
}

}  // namespace

SimOptions sim_options_from(const Config& c) {
    SimOptions o;
    o.variant = c.sim.variant;
    o.fidelity = c.sim.fidelity;
    o.dt = c.sim.dt_s;
    o.priority = c.sim.saturation_priority;
    o.seed = c.sim.seed;
    o.noise_pos = c.sim.noise_pos;
    o.noise_vel = c.sim.noise_vel;
    o.noise_att = c.sim.noise_att;
    o.noise_gyro = c.sim.noise_gyro;
    return o;
}

SimState resting_state(const VehicleParams& p, double contact_height, double yaw) {
    SimState s;
    s.position = Vec3(0.0, 0.0, contact_height + p.gear_height);
    s.attitude = hover_attitude(yaw);
    s.on_ground = true;
    for (int j = 0; j < 2; ++j) s.rotors[j].omega = rotor_speed(0.0, j + 1, p);
    return s;
}

SimState hover_state(const VehicleParams& p, const Vec3& position, double yaw) {
    SimState s;
    s.position = position;
    s.attitude = hover_attitude(yaw);
    const double c = hover_setpoint(p).throttle;
    for (int j = 0; j < 2; ++j) {
        s.rotors[j].thrust_actual = 0.5 * p.mass * kGravity;
        s.rotors[j].omega = rotor_speed(c, j + 1, p);
    }
    return s;
}

Simulator::Simulator(const Config& cfg, SimOptions opts, WindField wind, SimState initial)
    : cfg_(cfg),
      opts_(opts),
      wind_(std::move(wind)),
      state_(std::move(initial)),
      controller_(cfg.control, cfg.vehicle),
      rng_(opts.seed) {
    validate(cfg_.vehicle);
    validate(cfg_.control);
    validate(wind_);
    const double tick = CascadeController::kTickSeconds;
    double dt = opts_.dt;
    if (opts_.fidelity == Fidelity::Cyclic) dt = std::min(dt, max_cyclic_step(cfg_.vehicle));
    if (!(dt > 0.0)) throw ValidationError("dt_s", "must be > 0");
    substeps_ = std::max(1, static_cast<int>(std::ceil(tick / dt - 1e-9)));
    for (int j = 0; j < 2; ++j) encoder_held_[j] = state_.rotors[j].theta;
    next_encoder_time_ = state_.time;
}

ControlState Simulator::measure() {
    ControlState m{state_.position, state_.velocity, state_.attitude, state_.omega};
    auto noisy = [this](Vec3& v, double sd) {
        if (sd <= 0.0) return;
        std::normal_distribution<double> n(0.0, sd);
        for (int k = 0; k < 3; ++k) v[k] += n(rng_);
    };
    noisy(m.position, opts_.noise_pos);
    noisy(m.velocity, opts_.noise_vel);
    noisy(m.omega, opts_.noise_gyro);
    if (opts_.noise_att > 0.0) {
        Vec3 e = Vec3::Zero();
        noisy(e, opts_.noise_att);
        const double a = e.norm();
        if (a > 0.0) m.attitude = (m.attitude * Quat(Eigen::AngleAxisd(a, e / a))).normalized();
    }
    return m;
}

void Simulator::physics_step(double dt) {
    const VehicleParams& p = cfg_.vehicle;
    EnvContext env;
    env.wind = &wind_;
    env.contact_height = opts_.contact_height;
    env.ground_effect = opts_.ground_effect;
    env.wing = opts_.wing;
    if (opts_.fidelity == Fidelity::Cyclic) env.encoder_theta = {encoder_held_[0], encoder_held_[1]};

    loads_ = total_wrench(state_, command_, env, opts_.fidelity, p);
    SimState next = integrate_step(state_, loads_, dt, p, opts_.fidelity);
    for (int j = 0; j < 2; ++j) {
        next.rotors[j] = opts_.fidelity == Fidelity::Cyclic
                             ? rotor_step(state_.rotors[j], command_.cyclic[j], dt, p, encoder_held_[j]).state
                             : rotor_step_averaged(state_.rotors[j], command_.cyclic[j], dt, p).state;
    }
    next.surfaces = advance_servos(state_.surfaces, dt, p);
    state_ = ground_contact(next, loads_, opts_.contact_height, p);
}

void Simulator::tick(const Setpoint& sp) {
    const VehicleParams& p = cfg_.vehicle;
    const ControlState meas = measure();
    control_ = controller_.update(tick_, meas, sp, saturation_.axis_saturated, state_.on_ground);
    if (!std::isfinite(control_.wrench.f_t) || !control_.wrench.tau.allFinite()) {
        throw SimulationFault(tick_, "non-finite control output");
    }

    const MixResult m = mix(opts_.variant, control_.wrench, p, opts_.priority);
    command_ = m.command;
    saturation_ = m.report;
    duty_.record(saturation_);

    const auto servo_period =
        std::max<std::int64_t>(1, std::llround(1.0 / (p.servo_update_hz * CascadeController::kTickSeconds)));
    if (tick_ % servo_period == 0) {
        for (int j = 0; j < 2; ++j) state_.surfaces[j].delta_cmd = command_.servo[j];
    }

    const double t0 = tick_ * CascadeController::kTickSeconds;
    const double dt = CascadeController::kTickSeconds / substeps_;
    for (int k = 0; k < substeps_; ++k) {
        if (opts_.fidelity == Fidelity::Cyclic && state_.time >= next_encoder_time_ - 1e-12) {
            for (int j = 0; j < 2; ++j) encoder_held_[j] = state_.rotors[j].theta;
            next_encoder_time_ += 1.0 / p.encoder_rate_hz;
        }
        physics_step(dt);
        if (!finite_state(state_)) {
            throw SimulationFault(tick_, "non-finite vehicle state");
        }
    }
    ++tick_;
    state_.time = t0 + CascadeController::kTickSeconds;
}

}  // namespace tailsim
