#pragma once

// Motor + swashplateless hub model.
//
// Each motor runs a sinusoidally modulated throttle
//     U = C + A cos(theta - phi + s * gamma0),  s = +1 (motor 1), -1 (motor 2)
// where theta is the encoder rotor angle. The passive hinges turn the speed
// modulation into a cyclic blade-pitch change and hence a lateral moment.
// Two resolutions are provided: `rotor_step` resolves every revolution, and
// `averaged_rotor_wrench` is its cycle mean, which is what the mixer inverts.
//
// Lateral moments are handled as a "moment direction" angle in the body x-y
// plane. Angle 0 is body +y (positive pitch) and angles increase toward body
// -x, i.e. direction alpha maps to body torque (-sin alpha, cos alpha).

#include "tailsim/common.hpp"
#include "tailsim/frames.hpp"
#include "tailsim/vehicle.hpp"

#include <optional>
#include <span>
#include <vector>

namespace tailsim {

struct CyclicCommand {
    double c_nominal = 0.0; // nominal throttle C
    double amplitude = 0.0; // sinusoid amplitude A >= 0
    double phi = 0.0;       // moment direction, rad
};

struct RotorState {
    int motor_index = 1;         // 1 or 2
    double theta = 0.0;          // rad in [0, 2 pi)
    double omega = 0.0;          // rad/s, signed by spin direction
    double thrust_actual = 0.0;  // N, lagged thrust
    Vec2 moment_actual = Vec2::Zero(); // body (tau_x, tau_y) swash moment, averaged fidelity only
};

/// +1 for motor 1, -1 for motor 2: sign of gamma in the throttle law.
int gamma_sign(int motor_index);

/// Body torque (tau_x, tau_y) for a moment of magnitude `mag` at direction `alpha`.
Vec2 moment_direction_to_torque(double alpha, double mag);

/// Direction angle of a body (tau_x, tau_y) moment.
double torque_to_moment_direction(const Vec2& tau_xy);

/// Instantaneous motor throttle, clamped to [0, 1].
double cyclic_throttle(const CyclicCommand& cmd, double theta, int motor_index, double gamma0);

/// Spin speed map: affine in throttle around the hover point, signed by spin direction.
double rotor_speed(double throttle, int motor_index, const VehicleParams& p);

/// Cycle-averaged wrench of one motor (thrust, swash moment, roll arm).
Wrench averaged_rotor_wrench(const CyclicCommand& cmd, int motor_index, const VehicleParams& p);

/// Largest stable step for the revolution-resolved model (>= 50 samples per
/// revolution at omega_max).
double max_cyclic_step(const VehicleParams& p);

struct RotorStepResult {
    RotorState state;
    Wrench wrench; // instantaneous, evaluated at the start of the step
};

/// Advances one motor by `dt` at cyclic fidelity. `encoder_theta` is the angle
/// the ESC modulates against (held encoder sample); defaults to the true angle.
/// Throws StepSizeError if dt exceeds max_cyclic_step.
RotorStepResult rotor_step(const RotorState& s, const CyclicCommand& cmd, double dt,
                           const VehicleParams& p,
                           std::optional<double> encoder_theta = std::nullopt);

/// Averaged-fidelity counterpart: thrust and swash moment both follow the
/// motor lag toward the cycle-averaged values.
RotorStepResult rotor_step_averaged(const RotorState& s, const CyclicCommand& cmd, double dt,
                                    const VehicleParams& p);

/// Wrench of a rotor state at cyclic fidelity (no state advance).
Wrench cyclic_rotor_wrench(const RotorState& s, const CyclicCommand& cmd, const VehicleParams& p,
                           std::optional<double> encoder_theta = std::nullopt);

struct TestbenchSample {
    double theta = 0.0; // rad, rotor angle
    Vec2 moment = Vec2::Zero(); // measured body (tau_x, tau_y), N m
};

/// Test-stand record of one motor under a constant cyclic command.
struct TestbenchTrace {
    int motor_index = 1;
    double phi = 0.0;          // commanded moment direction
    double gamma0_used = 0.0;  // compensation active while recording
    std::vector<TestbenchSample> samples;
};

/// Fits the hinge lag from a test-stand trace: the mean moment over whole
/// revolutions (zeroth Fourier coefficient of the complex moment over theta)
/// gives the realised moment direction; its offset from the commanded
/// direction is the phase to compensate. Requires >= 5 revolutions and a
/// nonzero modulation; throws InsufficientDataError otherwise.
double calibrate_gamma0(const TestbenchTrace& trace);

/// Records a test-stand trace by stepping `rotor_step` for `revolutions` turns.
TestbenchTrace record_testbench(const CyclicCommand& cmd, int motor_index, const VehicleParams& p,
                                double revolutions, double dt);

}  // namespace tailsim
