#pragma once

// Wind fields: none, uniform, or a set of fan jets.
//
// A fan jet is a cylinder about the fan axis. Inside it the axial speed is
//     v_ref * (d_ref / max(d, d_ref))^decay_exp
// with d the distance along the axis; the outer 20% of the radius is
// feathered to zero with a cosine ramp. Fans follow an on/off schedule with a
// first-order spin-up/spin-down.

#include "tailsim/frames.hpp"

#include <utility>
#include <vector>

namespace tailsim {

enum class WindKind { None, Uniform, Fan };

struct FanJet {
    Vec3 position = Vec3::Zero();
    Vec3 axis = Vec3::UnitX(); // unit vector, direction of the airflow
    double v_ref = 4.5;        // m/s at d_ref
    double d_ref = 1.0;        // m
    double jet_radius = 0.4;   // m
    double decay_exp = 1.0;
    double spinup_s = 0.3;     // first-order time constant of the schedule
    /// Active windows (t_on, t_off). Empty means always on at full speed.
    std::vector<std::pair<double, double>> schedule;
};

struct WindField {
    WindKind kind = WindKind::None;
    Vec3 uniform = Vec3::Zero();
    std::vector<FanJet> fans;
};

/// Checks field invariants; throws ValidationError.
void validate(const WindField& f);

/// Fan speed fraction in [0, 1] at time t from its schedule.
double fan_activity(const FanJet& fan, double t);

/// Wind velocity (world frame) at a point and time.
Vec3 wind_at(const Vec3& point, double t, const WindField& field);

}  // namespace tailsim
