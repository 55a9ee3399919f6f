#include "tailsim/environment.hpp"

#include "tailsim/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace tailsim {
namespace {

// Short axial entry ramp just in front of the fan keeps the field continuous
// across the fan plane.
constexpr double kEntryRamp = 0.05;  // m

double approach(double from, double to, double elapsed, double tau) {
    if (tau <= 0.0) return to;
    return to + (from - to) * std::exp(-elapsed / tau);
}

double cosine_ramp(double x) {
    // 1 at x <= 0, 0 at x >= 1.
    if (x <= 0.0) return 1.0;
    if (x >= 1.0) return 0.0;
    return 0.5 * (1.0 + std::cos(kPi * x));
}

Vec3 fan_wind(const FanJet& fan, const Vec3& point, double t) {
    const double a = fan_activity(fan, t);
    if (a <= 0.0) return Vec3::Zero();
    const Vec3 axis = fan.axis.normalized();
    const Vec3 rel = point - fan.position;
    const double d = rel.dot(axis);
    if (d <= 0.0) return Vec3::Zero();
    const double r = (rel - d * axis).norm();
    const double edge = 0.8 * fan.jet_radius;
    const double radial = cosine_ramp((r - edge) / (fan.jet_radius - edge));
    if (radial <= 0.0) return Vec3::Zero();
    const double entry = 1.0 - cosine_ramp(d / kEntryRamp);
    const double speed = fan.v_ref * std::pow(fan.d_ref / std::max(d, fan.d_ref), fan.decay_exp);
    return a * radial * entry * speed * axis;
}

}  // namespace

void validate(const WindField& f) {
    for (const auto& fan : f.fans) {
        if (!(fan.v_ref >= 0.0)) throw ValidationError("fan_v_ref", "must be >= 0");
        if (!(fan.d_ref > 0.0)) throw ValidationError("fan_d_ref", "must be > 0");
        if (!(fan.jet_radius > 0.0)) throw ValidationError("fan_jet_radius", "must be > 0");
        if (!(fan.decay_exp >= 0.0)) throw ValidationError("fan_decay_exp", "must be >= 0");
        if (!(fan.spinup_s >= 0.0)) throw ValidationError("fan_spinup_s", "must be >= 0");
        if (!(fan.axis.norm() > 0.0)) throw ValidationError("fan_axis", "must be nonzero");
        double last = -std::numeric_limits<double>::infinity();
        for (const auto& [on, off] : fan.schedule) {
            if (!(off >= on) || on < last) {
                throw ValidationError("fan_schedule", "windows must be ordered and non-overlapping");
            }
            last = off;
        }
    }
    if (!f.uniform.allFinite()) throw ValidationError("uniform", "must be finite");
}

double fan_activity(const FanJet& fan, double t) {
    if (fan.schedule.empty()) return 1.0;
    double level = 0.0;
    double since = -std::numeric_limits<double>::infinity();
    for (const auto& [on, off] : fan.schedule) {
        if (t < on) break;
        level = std::isfinite(since) ? approach(level, 0.0, on - since, fan.spinup_s) : 0.0;
        if (t < off) return approach(level, 1.0, t - on, fan.spinup_s);
        level = approach(level, 1.0, off - on, fan.spinup_s);
        since = off;
    }
    return std::isfinite(since) ? approach(level, 0.0, t - since, fan.spinup_s) : 0.0;
}

Vec3 wind_at(const Vec3& point, double t, const WindField& field) {
    switch (field.kind) {
    case WindKind::None:
        return Vec3::Zero();
    case WindKind::Uniform:
        return field.uniform;
    case WindKind::Fan: {
        Vec3 w = field.uniform;
        for (const auto& fan : field.fans) w += fan_wind(fan, point, t);
        return w;
    }
    }
    return Vec3::Zero();
}

}  // namespace tailsim
