#include "tailsim/dynamics.hpp"

#include "tailsim/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace tailsim {
namespace {

Vec3 euler_rhs(const Vec3& w, const Vec3& tau, const Vec3& inertia) {
    const Vec3 h = inertia.cwiseProduct(w);
    return (tau - w.cross(h)).cwiseQuotient(inertia);
}

Quat exp_map(const Vec3& theta) {
    const double a = theta.norm();
    if (a < 1e-12) {
        return Quat(1.0, 0.5 * theta.x(), 0.5 * theta.y(), 0.5 * theta.z()).normalized();
    }
    const Vec3 v = std::sin(0.5 * a) / a * theta;
    return Quat(std::cos(0.5 * a), v.x(), v.y(), v.z());
}

// Stance of the gear: springs the tail back to straight down and damps all rates.
Vec3 gear_torque(const SimState& s, const VehicleParams& p) {
    const Mat3 r = s.attitude.toRotationMatrix();
    const Vec3 tail_world = r.col(2);
    const Vec3 axis_world = tail_world.cross(Vec3(0.0, 0.0, -1.0));
    const Vec3 spring = p.gear_stiffness * (r.transpose() * axis_world);
    Vec3 damping;
    for (int k = 0; k < 3; ++k) {
        damping[k] = 2.0 * std::sqrt(p.gear_stiffness * p.inertia[k]) * s.omega[k];
    }
    return Vec3(spring.x(), spring.y(), 0.0) - damping;
}

}  // namespace

double elevon_height(const SimState& s) { return s.position.z(); }

double max_step(Fidelity fidelity, const VehicleParams& p) {
    return fidelity == Fidelity::Cyclic ? max_cyclic_step(p) : 0.001;
}

TotalLoads total_wrench(const SimState& s, const ActuatorCommand& cmd, const EnvContext& env,
                        Fidelity fidelity, const VehicleParams& p) {
    TotalLoads out;
    const Mat3 r = s.attitude.toRotationMatrix();
    const Mat3 rt = r.transpose();

    std::array<double, 2> thrust{};
    for (int j = 0; j < 2; ++j) {
        const RotorState& rs = s.rotors[j];
        Wrench w;
        if (fidelity == Fidelity::Cyclic) {
            w = cyclic_rotor_wrench(rs, cmd.cyclic[j], p, env.encoder_theta[j]);
        } else {
            w.f_t = rs.thrust_actual;
            w.tau.x() = rs.moment_actual.x() + (j == 0 ? -1.0 : 1.0) * p.arm_l * rs.thrust_actual;
            w.tau.y() = rs.moment_actual.y();
        }
        thrust[j] = w.f_t;
        out.rotor.f_t += w.f_t;
        out.rotor.tau += w.tau;
    }

    const WindField* wind = env.wind;
    out.wind_com = wind ? wind_at(s.position, s.time, *wind) : Vec3::Zero();
    const Vec3 air_body = rt * (s.velocity - out.wind_com);

    std::array<double, 2> local{};
    for (int j = 0; j < 2; ++j) {
        const double vp = propwash_speed(thrust[j], p);
        local[j] = std::sqrt(vp * vp + air_body.z() * air_body.z());
    }
    out.elevon = elevon_wrench(s.surfaces, local, elevon_height(s), p, env.ground_effect);

    if (env.wing) {
        const auto pts = wing_strip_points(p);
        std::vector<Vec3> strip_wind(pts.size(), Vec3::Zero());
        if (wind) {
            for (std::size_t i = 0; i < pts.size(); ++i) {
                strip_wind[i] = rt * wind_at(s.position + r * pts[i], s.time, *wind);
            }
        }
        out.wing = wing_wrench(WingInputs{rt * s.velocity, s.omega, strip_wind}, p);
    }

    Vec3 force_body = Vec3(0.0, 0.0, -out.rotor.f_t) + out.elevon.force + out.wing.force;
    out.torque_body = out.rotor.tau + out.elevon.torque + out.wing.torque;
    out.torque_body.y() += p.trim_tau_y;
    if (s.on_ground) out.torque_body += gear_torque(s, p);

    out.force_world = r * force_body + Vec3(0.0, 0.0, -p.mass * kGravity);
    return out;
}

SimState integrate_step(const SimState& s, const TotalLoads& loads, double dt,
                        const VehicleParams& p, Fidelity fidelity) {
    if (!(dt > 0.0) || dt > max_step(fidelity, p) * (1.0 + 1e-9)) {
        throw StepSizeError("step " + std::to_string(dt) + " s exceeds the " +
                            std::string(to_string(fidelity)) + " limit " +
                            std::to_string(max_step(fidelity, p)) + " s");
    }
    SimState n = s;
    const Vec3 a = loads.force_world / p.mass;
    n.position = s.position + dt * s.velocity + 0.5 * dt * dt * a;
    n.velocity = s.velocity + dt * a;

    const Vec3& tau = loads.torque_body;
    const Vec3& in = p.inertia;
    const Vec3 w1 = s.omega;
    const Vec3 k1 = euler_rhs(w1, tau, in);
    const Vec3 w2 = s.omega + 0.5 * dt * k1;
    const Vec3 k2 = euler_rhs(w2, tau, in);
    const Vec3 w3 = s.omega + 0.5 * dt * k2;
    const Vec3 k3 = euler_rhs(w3, tau, in);
    const Vec3 w4 = s.omega + dt * k3;
    const Vec3 k4 = euler_rhs(w4, tau, in);
    n.omega = s.omega + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    const Vec3 theta = dt / 6.0 * (w1 + 2.0 * w2 + 2.0 * w3 + w4) +
                       dt * dt / 12.0 * s.omega.cross(n.omega);
    n.attitude = (s.attitude * exp_map(theta)).normalized();
    n.time = s.time + dt;
    return n;
}

SimState ground_contact(const SimState& s, const TotalLoads& loads, double contact_height,
                        const VehicleParams& p) {
    SimState n = s;
    const double rest_z = contact_height + p.gear_height;
    if (n.position.z() > rest_z + 1e-12) {
        n.on_ground = false;
        return n;
    }
    if (loads.force_world.z() <= 0.0) {
        n.position.z() = rest_z;
        n.velocity.setZero();
        n.on_ground = true;
    } else {
        n.position.z() = rest_z;
        n.velocity.z() = std::max(0.0, n.velocity.z());
        n.on_ground = false;
    }
    return n;
}

std::array<SurfaceState, 2> advance_servos(const std::array<SurfaceState, 2>& s, double dt,
                                           const VehicleParams& p) {
    auto out = s;
    const double step = p.servo_rate_limit * dt;
    for (auto& e : out) {
        const double target = std::clamp(e.delta_cmd, -p.servo_limit, p.servo_limit);
        e.delta = std::clamp(e.delta + std::clamp(target - e.delta, -step, step), -p.servo_limit,
                             p.servo_limit);
    }
    return out;
}

double mechanical_energy(const SimState& s, const VehicleParams& p, double g) {
    const double kin = 0.5 * p.mass * s.velocity.squaredNorm() +
                       0.5 * s.omega.dot(p.inertia.cwiseProduct(s.omega));
    return kin + p.mass * g * s.position.z();
}

}  // namespace tailsim
