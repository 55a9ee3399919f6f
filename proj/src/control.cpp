#include "tailsim/control.hpp"

#include "tailsim/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace tailsim {
namespace {

void require(bool ok, const std::string& field, const char* what) {
    if (!ok) throw ValidationError(field, what);
}

bool finite_nonneg(double v) { return std::isfinite(v) && v >= 0.0; }
bool positive(double v) { return std::isfinite(v) && v > 0.0; }

constexpr const char* kAxis[3] = {"x", "y", "z"};

}  // namespace

void validate(const ControlGains& g) {
    for (int k = 0; k < 3; ++k) {
        const std::string a = kAxis[k];
        require(positive(g.pos_p[k]), "pos_p_" + a, "must be > 0");
        require(positive(g.vel[k].p), "vel_p_" + a, "must be > 0");
        require(finite_nonneg(g.vel[k].i), "vel_i_" + a, "must be >= 0");
        require(finite_nonneg(g.vel[k].d), "vel_d_" + a, "must be >= 0");
        require(positive(g.att_p[k]), "att_p_" + a, "must be > 0");
        require(positive(g.rate[k].p), "rate_p_" + a, "must be > 0");
        require(finite_nonneg(g.rate[k].i), "rate_i_" + a, "must be >= 0");
        require(finite_nonneg(g.rate[k].d), "rate_d_" + a, "must be >= 0");
        require(positive(g.rate_i_limit[k]), "rate_i_limit_" + a, "must be > 0");
        require(positive(g.tau_limit[k]), "tau_limit_" + a, "must be > 0");
    }
    require(positive(g.vel_i_limit), "vel_i_limit", "must be > 0");
    require(positive(g.vel_max), "vel_max", "must be > 0");
    require(positive(g.max_tilt) && g.max_tilt < 0.5 * kPi, "max_tilt_deg", "must lie in (0, 90)");
    require(positive(g.max_rate), "max_rate_dps", "must be > 0");
    require(positive(g.max_thrust_ratio) && g.max_thrust_ratio <= 1.0, "max_thrust_ratio",
            "must lie in (0, 1]");
}

Vec3 position_loop(const ControlState& s, const Setpoint& sp, const ControlGains& g) {
    Vec3 v = g.pos_p.cwiseProduct(sp.position - s.position) + sp.velocity;
    const double n = v.norm();
    if (n > g.vel_max) v *= g.vel_max / n;
    return v;
}

VelocityLoopOutput VelocityController::update(const Vec3& velocity, const Vec3& velocity_d,
                                              const Vec3& accel_ff, double dt,
                                              const ControlGains& g, const VehicleParams& p,
                                              bool freeze_integrator) {
    const Vec3 e = velocity_d - velocity;
    Vec3 accel = accel_ff + integ_;
    for (int k = 0; k < 3; ++k) {
        accel[k] += g.vel[k].p * e[k];
        if (has_prev_ && dt > 0.0) accel[k] -= g.vel[k].d * (velocity[k] - prev_velocity_[k]) / dt;
    }
    accel.z() += kGravity;
    Vec3 f = p.mass * accel;

    // Vertical first, then whatever tilt and magnitude allow horizontally.
    VelocityLoopOutput out;
    const double f_max = g.max_thrust_ratio * 2.0 * p.k_thrust;
    const double f_z_min = 0.1 * p.mass * kGravity;
    const double fz = std::clamp(f.z(), f_z_min, f_max);
    out.saturated = fz != f.z();
    const double h_max = std::min(fz * std::tan(g.max_tilt), std::sqrt(f_max * f_max - fz * fz));
    Vec3 fh(f.x(), f.y(), 0.0);
    const double h = fh.norm();
    if (h > h_max) {
        fh *= h_max / h;
        out.saturated = true;
    }
    out.thrust_world = Vec3(fh.x(), fh.y(), fz);

    if (!freeze_integrator && !out.saturated) {
        for (int k = 0; k < 3; ++k) {
            integ_[k] = std::clamp(integ_[k] + g.vel[k].i * e[k] * dt, -g.vel_i_limit, g.vel_i_limit);
        }
    }
    prev_velocity_ = velocity;
    has_prev_ = true;
    return out;
}

void VelocityController::reset() { *this = VelocityController{}; }

AttitudeTarget attitude_setpoint_from_thrust(const Vec3& thrust_world, double yaw) {
    const double f = thrust_world.norm();
    if (!(f > 0.1)) {
        throw DegenerateThrustError("thrust vector magnitude " + std::to_string(f) + " N <= 0.1 N");
    }
    const Vec3 z_b = -thrust_world / f;
    const Vec3 heading(std::cos(yaw), std::sin(yaw), 0.0);
    Vec3 x_b = heading - heading.dot(z_b) * z_b;
    Vec3 y_b;
    if (x_b.norm() > 1e-6) {
        x_b.normalize();
        y_b = z_b.cross(x_b);
    } else {
        // Thrust along the heading: fix the wing direction instead.
        const Vec3 side(-std::sin(yaw), std::cos(yaw), 0.0);
        y_b = (side - side.dot(z_b) * z_b).normalized();
        x_b = y_b.cross(z_b);
    }
    Mat3 r;
    r.col(0) = x_b;
    r.col(1) = y_b;
    r.col(2) = z_b;
    AttitudeTarget t;
    t.attitude = Quat(r).normalized();
    t.f_t = f;
    return t;
}

Vec3 attitude_loop(const Quat& q, const Quat& q_d, const ControlGains& g) {
    const Quat e = q.conjugate() * q_d;
    const double s = e.w() >= 0.0 ? 2.0 : -2.0;
    Vec3 w = g.att_p.cwiseProduct(s * e.vec());
    for (int k = 0; k < 3; ++k) w[k] = std::clamp(w[k], -g.max_rate, g.max_rate);
    return w;
}

Vec3 RateController::update(const Vec3& omega, const Vec3& omega_d, double dt,
                            const ControlGains& g, const std::array<bool, 3>& axis_saturated,
                            bool freeze_integrator) {
    const Vec3 e = omega_d - omega;
    Vec3 tau;
    for (int k = 0; k < 3; ++k) {
        double d_term = 0.0;
        if (has_prev_ && dt > 0.0) d_term = -g.rate[k].d * (omega[k] - prev_omega_[k]) / dt;
        tau[k] = std::clamp(g.rate[k].p * e[k] + integ_[k] + d_term, -g.tau_limit[k], g.tau_limit[k]);
        if (!freeze_integrator && !axis_saturated[k]) {
            integ_[k] = std::clamp(integ_[k] + g.rate[k].i * e[k] * dt, -g.rate_i_limit[k],
                                   g.rate_i_limit[k]);
        }
    }
    prev_omega_ = omega;
    has_prev_ = true;
    return tau;
}

void RateController::reset() { *this = RateController{}; }

CascadeController::CascadeController(ControlGains gains, VehicleParams params)
    : gains_(std::move(gains)), params_(std::move(params)) {}

void CascadeController::reset() {
    velocity_.reset();
    rate_.reset();
    velocity_d_ = Vec3::Zero();
    target_ = {};
    have_target_ = false;
}

ControlOutput CascadeController::update(std::int64_t tick, const ControlState& s,
                                        const Setpoint& sp,
                                        const std::array<bool, 3>& axis_saturated, bool landed) {
    ControlOutput out;
    if (sp.mode == SetpointMode::Attitude) {
        target_ = {sp.attitude.normalized(), sp.thrust};
        have_target_ = true;
        velocity_d_ = s.velocity;
    } else {
        if (sp.mode == SetpointMode::Position) {
            if (!have_target_ || tick % kPositionDivider == 0) velocity_d_ = position_loop(s, sp, gains_);
        } else {
            velocity_d_ = sp.velocity;
        }
        if (!have_target_ || tick % kVelocityDivider == 0) {
            const auto v = velocity_.update(s.velocity, velocity_d_, sp.acceleration,
                                            kVelocityDivider * kTickSeconds, gains_, params_, landed);
            if (!v.thrust_world.allFinite()) {
                throw SimulationFault(tick, "non-finite thrust setpoint");
            }
            target_ = attitude_setpoint_from_thrust(v.thrust_world, sp.yaw);
            have_target_ = true;
        }
    }
    out.velocity_d = velocity_d_;
    out.attitude_d = target_.attitude;
    out.rate_d = attitude_loop(s.attitude, target_.attitude, gains_);
    out.wrench.f_t = target_.f_t;
    out.wrench.tau = rate_.update(s.omega, out.rate_d, kTickSeconds, gains_, axis_saturated, landed);
    return out;
}

}  // namespace tailsim
