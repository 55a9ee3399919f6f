#include "tailsim/propulsion.hpp"

#include "tailsim/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace tailsim {
namespace {

double motor_arm_sign(int motor_index) { return motor_index == 1 ? -1.0 : 1.0; }

void check_index(int motor_index) {
    if (motor_index != 1 && motor_index != 2) {
        throw ValidationError("motor_index", "must be 1 or 2");
    }
}

// Hub moment at rotor angle theta for a throttle deviation dU = U - C.
Vec2 hub_moment(double d_u, double theta, int motor_index, const VehicleParams& p) {
    const double a = theta + gamma_sign(motor_index) * p.gamma_phys;
    return moment_direction_to_torque(a, p.k_lat * d_u);
}

double lag_gain(double dt, double tau) { return 1.0 - std::exp(-dt / tau); }

}  // namespace

int gamma_sign(int motor_index) { return motor_index == 1 ? 1 : -1; }

Vec2 moment_direction_to_torque(double alpha, double mag) {
    return {-mag * std::sin(alpha), mag * std::cos(alpha)};
}

double torque_to_moment_direction(const Vec2& tau_xy) {
    return std::atan2(-tau_xy.x(), tau_xy.y());
}

double cyclic_throttle(const CyclicCommand& cmd, double theta, int motor_index, double gamma0) {
    const double u =
        cmd.c_nominal + cmd.amplitude * std::cos(theta - cmd.phi + gamma_sign(motor_index) * gamma0);
    return std::clamp(u, 0.0, 1.0);
}

double rotor_speed(double throttle, int motor_index, const VehicleParams& p) {
    check_index(motor_index);
    const double u_hover = p.mass * kGravity / (2.0 * p.k_thrust);
    double w = p.omega_hover * (0.35 + 0.65 * throttle / u_hover);
    w = std::clamp(w, 0.0, p.omega_max);
    return p.rotor_dir[motor_index - 1] * w;
}

Wrench averaged_rotor_wrench(const CyclicCommand& cmd, int motor_index, const VehicleParams& p) {
    check_index(motor_index);
    Wrench w;
    w.f_t = p.k_thrust * cmd.c_nominal;
    const Vec2 m = moment_direction_to_torque(cmd.phi, p.k_swash * cmd.amplitude);
    w.tau.x() = m.x() + motor_arm_sign(motor_index) * p.arm_l * w.f_t;
    w.tau.y() = m.y();
    return w;
}

double max_cyclic_step(const VehicleParams& p) { return 2.0 * kPi / (50.0 * p.omega_max); }

Wrench cyclic_rotor_wrench(const RotorState& s, const CyclicCommand& cmd, const VehicleParams& p,
                           std::optional<double> encoder_theta) {
    const double u = cyclic_throttle(cmd, encoder_theta.value_or(s.theta), s.motor_index, p.gamma0);
    const Vec2 m = hub_moment(u - cmd.c_nominal, s.theta, s.motor_index, p);
    Wrench w;
    w.f_t = s.thrust_actual;
    w.tau.x() = m.x() + motor_arm_sign(s.motor_index) * p.arm_l * s.thrust_actual;
    w.tau.y() = m.y();
    return w;
}

RotorStepResult rotor_step(const RotorState& s, const CyclicCommand& cmd, double dt,
                           const VehicleParams& p, std::optional<double> encoder_theta) {
    check_index(s.motor_index);
    if (!(dt > 0.0) || dt > max_cyclic_step(p) * (1.0 + 1e-12)) {
        throw StepSizeError("cyclic rotor step " + std::to_string(dt) + " s exceeds " +
                            std::to_string(max_cyclic_step(p)) + " s");
    }
    RotorStepResult r;
    r.wrench = cyclic_rotor_wrench(s, cmd, p, encoder_theta);

    const double u = cyclic_throttle(cmd, encoder_theta.value_or(s.theta), s.motor_index, p.gamma0);
    r.state = s;
    r.state.thrust_actual += (p.k_thrust * u - s.thrust_actual) * lag_gain(dt, p.motor_tau);
    // Rotor inertia filters the per-revolution modulation out of the spin rate.
    r.state.omega = rotor_speed(cmd.c_nominal, s.motor_index, p);
    r.state.theta = wrap_two_pi(s.theta + s.omega * dt);
    r.state.moment_actual = Vec2::Zero();
    return r;
}

RotorStepResult rotor_step_averaged(const RotorState& s, const CyclicCommand& cmd, double dt,
                                    const VehicleParams& p) {
    check_index(s.motor_index);
    RotorStepResult r;
    r.wrench.f_t = s.thrust_actual;
    r.wrench.tau.x() = s.moment_actual.x() + motor_arm_sign(s.motor_index) * p.arm_l * s.thrust_actual;
    r.wrench.tau.y() = s.moment_actual.y();

    // A calibration error rotates the realised direction exactly as the cyclic model does.
    const double alpha = cmd.phi + gamma_sign(s.motor_index) * (p.gamma_phys - p.gamma0);
    const Vec2 target = moment_direction_to_torque(alpha, p.k_swash * cmd.amplitude);
    const double g = lag_gain(dt, p.motor_tau);
    r.state = s;
    r.state.thrust_actual += (p.k_thrust * cmd.c_nominal - s.thrust_actual) * g;
    r.state.moment_actual += (target - s.moment_actual) * g;
    r.state.omega = rotor_speed(cmd.c_nominal, s.motor_index, p);
    r.state.theta = wrap_two_pi(s.theta + s.omega * dt);
    return r;
}

double calibrate_gamma0(const TestbenchTrace& trace) {
    const auto& samples = trace.samples;
    if (samples.size() < 2) throw InsufficientDataError("test-stand trace is empty");

    // Count completed revolutions from wrap-arounds of the recorded angle.
    int wraps = 0;
    std::size_t first_wrap = 0;
    std::size_t last_wrap = 0;
    for (std::size_t i = 1; i < samples.size(); ++i) {
        if (std::abs(samples[i].theta - samples[i - 1].theta) > kPi) {
            if (wraps == 0) first_wrap = i;
            last_wrap = i;
            ++wraps;
        }
    }
    const int revolutions = wraps - 1;
    if (revolutions < 5) {
        throw InsufficientDataError("test-stand trace covers " + std::to_string(std::max(revolutions, 0)) +
                                    " whole revolutions, need at least 5");
    }

    // Bin by angle so uneven angular speed does not bias the mean.
    constexpr int kBins = 72;
    std::vector<Vec2> sum(kBins, Vec2::Zero());
    std::vector<int> count(kBins, 0);
    for (std::size_t i = first_wrap; i < last_wrap; ++i) {
        const int b = std::min(kBins - 1, static_cast<int>(wrap_two_pi(samples[i].theta) / (2.0 * kPi) * kBins));
        sum[b] += samples[i].moment;
        ++count[b];
    }
    Vec2 mean = Vec2::Zero();
    int filled = 0;
    for (int b = 0; b < kBins; ++b) {
        if (count[b] > 0) {
            mean += sum[b] / count[b];
            ++filled;
        }
    }
    if (filled < kBins / 2) throw InsufficientDataError("test-stand trace is too sparse in angle");
    mean /= filled;
    if (!(mean.norm() > 1e-12)) {
        throw InsufficientDataError("test-stand trace shows no mean moment (zero modulation)");
    }
    const double realised = torque_to_moment_direction(mean);
    const int s = gamma_sign(trace.motor_index);
    return wrap_pi(trace.gamma0_used + s * wrap_pi(realised - trace.phi));
}

TestbenchTrace record_testbench(const CyclicCommand& cmd, int motor_index, const VehicleParams& p,
                                double revolutions, double dt) {
    check_index(motor_index);
    TestbenchTrace tr;
    tr.motor_index = motor_index;
    tr.phi = cmd.phi;
    tr.gamma0_used = p.gamma0;

    RotorState s;
    s.motor_index = motor_index;
    s.omega = rotor_speed(cmd.c_nominal, motor_index, p);
    s.thrust_actual = p.k_thrust * cmd.c_nominal;

    double travelled = 0.0;
    const double goal = revolutions * 2.0 * kPi;
    while (travelled < goal) {
        const double u = cyclic_throttle(cmd, s.theta, motor_index, p.gamma0);
        tr.samples.push_back({s.theta, hub_moment(u - cmd.c_nominal, s.theta, motor_index, p)});
        const auto r = rotor_step(s, cmd, dt, p);
        travelled += std::abs(s.omega) * dt;
        s = r.state;
        if (s.omega == 0.0) break;
    }
    return tr;
}

}  // namespace tailsim
