#pragma once

// Control allocation: desired body wrench -> actuator commands.
//
// Both mixers share the thrust and roll rows (collective and differential
// throttle). They differ in pitch:
//   SEA  pitch -> swashplateless amplitude A with direction phi in {0, pi},
//        elevons carry yaw only.
//   CEA  pitch -> differential elevon deflection, yaw -> common mode, so the
//        two moments compete for the same servo travel.
//
// Saturation is applied after the closed-form inverse, never by
// optimisation. The achieved wrench is recomputed through `forward_map`.

#include "tailsim/common.hpp"
#include "tailsim/propulsion.hpp"
#include "tailsim/vehicle.hpp"

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

namespace tailsim {

enum class SaturationPriority {
    Thrust, // clamp C first, then shrink A to keep U in [0, 1]
    Moment, // keep A, move C toward 0.5 to make room
};

std::string_view to_string(SaturationPriority s);
SaturationPriority parse_saturation_priority(std::string_view s);

struct ActuatorCommand {
    std::array<CyclicCommand, 2> cyclic{};
    std::array<double, 2> servo{0.0, 0.0}; // rad
};

/// Indices into SaturationReport::flags.
enum ActuatorIndex : std::size_t { kC1 = 0, kC2, kA1, kA2, kD1, kD2, kNumActuators };

struct SaturationReport {
    std::array<bool, kNumActuators> flags{};
    Wrench demanded;
    Wrench achieved;
    /// Per body axis (x, y, z): achieved torque differs from demanded.
    std::array<bool, 3> axis_saturated{};

    bool any() const;
    bool servo_any() const { return flags[kD1] || flags[kD2]; }
};

/// Fraction of control ticks with at least one clamp active.
class SaturationDuty {
public:
    void record(const SaturationReport& r);
    double any_duty() const;
    double servo_duty() const;
    std::int64_t ticks() const { return ticks_; }

private:
    std::int64_t ticks_ = 0;
    std::int64_t any_ = 0;
    std::int64_t servo_ = 0;
};

struct MixResult {
    ActuatorCommand command;
    SaturationReport report;
};

MixResult sea_mix(const Wrench& desired, const VehicleParams& p,
                  SaturationPriority priority = SaturationPriority::Thrust);

MixResult cea_mix(const Wrench& desired, const VehicleParams& p,
                  SaturationPriority priority = SaturationPriority::Thrust);

MixResult mix(Variant variant, const Wrench& desired, const VehicleParams& p,
              SaturationPriority priority = SaturationPriority::Thrust);

/// Linear actuator -> wrench map the mixers invert.
Wrench forward_map(const ActuatorCommand& cmd, Variant variant, const VehicleParams& p);

/// Pitch/yaw torque limits at a given per-motor nominal throttle.
struct MomentLimits {
    double tau_y_max = 0.0;
    double tau_z_max = 0.0;
};
MomentLimits pitch_yaw_limits(Variant variant, double c_nominal, const VehicleParams& p);

/// Vertices of the reachable (tau_y, tau_z) set, found by pushing every
/// extreme actuator combination through `forward_map` and keeping the hull.
std::vector<Vec2> reachable_pitch_yaw_vertices(Variant variant, double c_nominal,
                                               const VehicleParams& p);

}  // namespace tailsim
