#include "tailsim/allocation.hpp"

#include "tailsim/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace tailsim {
namespace {

bool clamp_into(double& v, double lo, double hi) {
    const double c = std::clamp(v, lo, hi);
    const bool changed = c != v;
    v = c;
    return changed;
}

bool differs(double a, double b) { return std::abs(a - b) > 1e-9 * (1.0 + std::abs(b)); }

// Thrust and roll rows shared by both mixers.
void mix_collective(const Wrench& w, const VehicleParams& p, ActuatorCommand& cmd) {
    const double base = w.f_t / (2.0 * p.k_thrust);
    const double roll = w.tau.x() / (2.0 * p.arm_l * p.k_thrust);
    cmd.cyclic[0].c_nominal = base - roll;
    cmd.cyclic[1].c_nominal = base + roll;
}

void saturate(ActuatorCommand& cmd, const VehicleParams& p, SaturationPriority priority,
              SaturationReport& rep) {
    for (int i = 0; i < 2; ++i) {
        auto& c = cmd.cyclic[i];
        bool c_flag = clamp_into(c.c_nominal, 0.0, 1.0);
        bool a_flag = false;
        if (priority == SaturationPriority::Moment) {
            a_flag = clamp_into(c.amplitude, 0.0, 0.5);
            c_flag = clamp_into(c.c_nominal, c.amplitude, 1.0 - c.amplitude) || c_flag;
        } else {
            a_flag = clamp_into(c.amplitude, 0.0, std::min(c.c_nominal, 1.0 - c.c_nominal));
        }
        rep.flags[kC1 + i] = c_flag;
        rep.flags[kA1 + i] = a_flag;
    }
    for (int j = 0; j < 2; ++j) {
        rep.flags[kD1 + j] = clamp_into(cmd.servo[j], -p.servo_limit, p.servo_limit);
    }
}

MixResult finish(const Wrench& desired, ActuatorCommand cmd, Variant variant,
                 const VehicleParams& p, SaturationPriority priority) {
    MixResult r;
    saturate(cmd, p, priority, r.report);
    r.command = cmd;
    r.report.demanded = desired;
    r.report.achieved = forward_map(cmd, variant, p);
    for (int k = 0; k < 3; ++k) {
        r.report.axis_saturated[k] = differs(r.report.achieved.tau[k], desired.tau[k]);
    }
    return r;
}

// Andrew's monotone chain, counter-clockwise, collinear points dropped.
std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
    std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
        return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const Vec2& a, const Vec2& b) { return (a - b).norm() < 1e-12; }),
              pts.end());
    if (pts.size() < 3) return pts;
    const auto cross = [](const Vec2& o, const Vec2& a, const Vec2& b) {
        return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
    };
    std::vector<Vec2> h(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 1e-15) --k;
        h[k++] = pts[i];
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
        while (k >= t && cross(h[k - 2], h[k - 1], pts[i - 1]) <= 1e-15) --k;
        h[k++] = pts[i - 1];
    }
    h.resize(k - 1);
    return h;
}

}  // namespace

std::string_view to_string(SaturationPriority s) {
    return s == SaturationPriority::Thrust ? "thrust" : "moment";
}

SaturationPriority parse_saturation_priority(std::string_view s) {
    if (s == "thrust") return SaturationPriority::Thrust;
    if (s == "moment") return SaturationPriority::Moment;
    throw ParseError("saturation_priority: '" + std::string(s) + "' (expected thrust|moment)");
}

bool SaturationReport::any() const {
    return std::any_of(flags.begin(), flags.end(), [](bool b) { return b; });
}

void SaturationDuty::record(const SaturationReport& r) {
    ++ticks_;
    if (r.any()) ++any_;
    if (r.servo_any()) ++servo_;
}

double SaturationDuty::any_duty() const {
    return ticks_ == 0 ? 0.0 : static_cast<double>(any_) / static_cast<double>(ticks_);
}

double SaturationDuty::servo_duty() const {
    return ticks_ == 0 ? 0.0 : static_cast<double>(servo_) / static_cast<double>(ticks_);
}

MixResult sea_mix(const Wrench& desired, const VehicleParams& p, SaturationPriority priority) {
    ActuatorCommand cmd;
    mix_collective(desired, p, cmd);
    const double a = std::abs(desired.tau.y()) / (2.0 * p.k_swash);
    const double phi = desired.tau.y() >= 0.0 ? 0.0 : kPi;
    for (auto& c : cmd.cyclic) {
        c.amplitude = a;
        c.phi = phi;
    }
    const double d = desired.tau.z() / (2.0 * p.k_elevon);
    cmd.servo = {d, d};
    return finish(desired, cmd, Variant::Sea, p, priority);
}

MixResult cea_mix(const Wrench& desired, const VehicleParams& p, SaturationPriority priority) {
    ActuatorCommand cmd;
    mix_collective(desired, p, cmd);
    const double pitch = desired.tau.y() / (2.0 * p.k_ep);
    const double yaw = desired.tau.z() / (2.0 * p.k_elevon);
    cmd.servo = {yaw + pitch, yaw - pitch};
    return finish(desired, cmd, Variant::Cea, p, priority);
}

MixResult mix(Variant variant, const Wrench& desired, const VehicleParams& p,
              SaturationPriority priority) {
    return variant == Variant::Sea ? sea_mix(desired, p, priority) : cea_mix(desired, p, priority);
}

Wrench forward_map(const ActuatorCommand& cmd, Variant variant, const VehicleParams& p) {
    const auto& c = cmd.cyclic;
    Wrench w;
    w.f_t = p.k_thrust * (c[0].c_nominal + c[1].c_nominal);
    w.tau.x() = p.arm_l * p.k_thrust * (c[1].c_nominal - c[0].c_nominal) -
                p.k_swash * (c[0].amplitude * std::sin(c[0].phi) + c[1].amplitude * std::sin(c[1].phi));
    if (variant == Variant::Sea) {
        w.tau.y() = p.k_swash * (c[0].amplitude * std::cos(c[0].phi) + c[1].amplitude * std::cos(c[1].phi));
    } else {
        w.tau.y() = p.k_ep * (cmd.servo[0] - cmd.servo[1]);
    }
    w.tau.z() = p.k_elevon * (cmd.servo[0] + cmd.servo[1]);
    return w;
}

MomentLimits pitch_yaw_limits(Variant variant, double c_nominal, const VehicleParams& p) {
    MomentLimits m;
    m.tau_z_max = 2.0 * p.k_elevon * p.servo_limit;
    if (variant == Variant::Sea) {
        const double c = std::clamp(c_nominal, 0.0, 1.0);
        m.tau_y_max = 2.0 * p.k_swash * std::min(c, 1.0 - c);
    } else {
        m.tau_y_max = 2.0 * p.k_ep * p.servo_limit;
    }
    return m;
}

std::vector<Vec2> reachable_pitch_yaw_vertices(Variant variant, double c_nominal,
                                               const VehicleParams& p) {
    const double c = std::clamp(c_nominal, 0.0, 1.0);
    const double a_max = variant == Variant::Sea ? std::min(c, 1.0 - c) : 0.0;
    const double lim = p.servo_limit;
    std::vector<Vec2> pts;
    for (double a1 : {0.0, a_max}) {
        for (double a2 : {0.0, a_max}) {
            for (double f1 : {0.0, kPi}) {
                for (double f2 : {0.0, kPi}) {
                    for (double d1 : {-lim, lim}) {
                        for (double d2 : {-lim, lim}) {
                            ActuatorCommand cmd;
                            cmd.cyclic[0] = {c, a1, f1};
                            cmd.cyclic[1] = {c, a2, f2};
                            cmd.servo = {d1, d2};
                            const Wrench w = forward_map(cmd, variant, p);
                            pts.emplace_back(w.tau.y(), w.tau.z());
                        }
                    }
                }
            }
        }
    }
    return convex_hull(std::move(pts));
}

}  // namespace tailsim
