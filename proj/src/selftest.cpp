#include "tailsim/selftest.hpp"

#include "tailsim/allocation.hpp"
#include "tailsim/dynamics.hpp"
#include "tailsim/propulsion.hpp"
#include "tailsim/scenarios.hpp"

#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <complex>
#include <random>

namespace tailsim {
namespace {

template <class Fn>
PropertyResult timed(const std::string& name, Fn&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    PropertyResult r;
    r.name = name;
    try {
        fn(r);
    } catch (const std::exception& e) {
        r.passed = false;
        r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

// Point-in-convex-polygon for a counter-clockwise vertex list.
bool inside_hull(const std::vector<Vec2>& hull, const Vec2& q) {
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const Vec2& a = hull[i];
        const Vec2& b = hull[(i + 1) % hull.size()];
        const double c = (b.x() - a.x()) * (q.y() - a.y()) - (b.y() - a.y()) * (q.x() - a.x());
        if (c < -1e-12) return false;
    }
    return true;
}

struct CycleAverage {
    double thrust = 0.0;
    Vec2 swash = Vec2::Zero();
};

// Time average of the cyclic rotor model over whole revolutions, with the
// roll-arm share of the thrust removed.
CycleAverage cyclic_average(const CyclicCommand& cmd, int motor, const VehicleParams& p,
                            int revolutions) {
    RotorState s;
    s.motor_index = motor;
    s.omega = rotor_speed(cmd.c_nominal, motor, p);
    s.thrust_actual = p.k_thrust * cmd.c_nominal;
    const double dt = 0.5 * max_cyclic_step(p);
    // Let the thrust lag settle before averaging.
    for (int k = 0; k < 2000; ++k) s = rotor_step(s, cmd, dt, p).state;

    const double goal = 2.0 * kPi * revolutions;
    double travelled = 0.0;
    double time = 0.0;
    double thrust = 0.0;
    Vec2 tau = Vec2::Zero();
    while (travelled < goal) {
        const double step_angle = std::abs(s.omega) * dt;
        // Trim the final step so the window closes on a whole revolution.
        const double h = travelled + step_angle > goal ? dt * (goal - travelled) / step_angle : dt;
        const auto r = rotor_step(s, cmd, h, p);
        thrust += r.wrench.f_t * h;
        tau += Vec2(r.wrench.tau.x(), r.wrench.tau.y()) * h;
        time += h;
        travelled += std::abs(s.omega) * h;
        s = r.state;
    }
    CycleAverage out;
    out.thrust = thrust / time;
    const double arm = (motor == 1 ? -1.0 : 1.0) * p.arm_l;
    out.swash = tau / time - Vec2(arm * out.thrust, 0.0);
    return out;
}

}  // namespace

PropertyResult check_mixer_round_trip(const Config& cfg, int samples) {
    return timed("mixer_round_trip", [&](PropertyResult& r) {
        const VehicleParams& p = cfg.vehicle;
        std::mt19937_64 rng(cfg.sim.seed);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        double worst = 0.0;
        int flagged = 0;
        for (int i = 0; i < samples; ++i) {
            // Draw inside the unsaturated region with a 10% margin.
            const double c1 = 0.45 + 0.35 * u(rng);
            const double c2 = 0.45 + 0.35 * u(rng);
            Wrench w;
            w.f_t = p.k_thrust * (c1 + c2);
            w.tau.x() = p.arm_l * p.k_thrust * (c2 - c1);
            const double a_max = 0.9 * std::min({c1, c2, 1.0 - c1, 1.0 - c2});
            for (Variant v : {Variant::Sea, Variant::Cea}) {
                Wrench d = w;
                if (v == Variant::Sea) {
                    d.tau.y() = 2.0 * p.k_swash * a_max * u(rng);
                    d.tau.z() = 2.0 * p.k_elevon * 0.9 * p.servo_limit * u(rng);
                } else {
                    const double a = 0.9 * u(rng);
                    const double b = (0.9 - std::abs(a)) * u(rng);
                    d.tau.y() = 2.0 * p.k_ep * p.servo_limit * a;
                    d.tau.z() = 2.0 * p.k_elevon * p.servo_limit * b;
                }
                const MixResult m = mix(v, d, p);
                if (m.report.any()) ++flagged;
                const Wrench back = forward_map(m.command, v, p);
                worst = std::max(worst, std::abs(back.f_t - d.f_t));
                worst = std::max(worst, (back.tau - d.tau).cwiseAbs().maxCoeff());
            }
        }
        r.passed = worst <= 1e-9 && flagged == 0;
        r.detail = fmt::format("{} wrenches per variant, max component error {:.3g}, saturated {}",
                               samples, worst, flagged);
    });
}

PropertyResult check_cyclic_identities(const Config& cfg) {
    return timed("cyclic_identities", [&](PropertyResult& r) {
        constexpr int kGrid = 4096;
        double worst_mean = 0.0;
        double worst_amp = 0.0;
        for (int motor : {1, 2}) {
            for (double phi : {0.0, 0.7, kPi, -2.1}) {
                const CyclicCommand cmd{0.4, 0.1, phi};
                double mean = 0.0;
                std::complex<double> h1 = 0.0;
                for (int k = 0; k < kGrid; ++k) {
                    const double th = 2.0 * kPi * k / kGrid;
                    const double u = cyclic_throttle(cmd, th, motor, cfg.vehicle.gamma0);
                    mean += u;
                    h1 += u * std::polar(1.0, -th);
                }
                mean /= kGrid;
                const double amp = 2.0 * std::abs(h1) / kGrid;
                worst_mean = std::max(worst_mean, std::abs(mean - cmd.c_nominal));
                worst_amp = std::max(worst_amp, std::abs(amp - cmd.amplitude));
            }
        }
        r.passed = worst_mean <= 1e-9 && worst_amp <= 1e-9;
        r.detail = fmt::format("mean error {:.3g}, first-harmonic amplitude error {:.3g}", worst_mean,
                               worst_amp);
    });
}

PropertyResult check_cross_fidelity(const Config& cfg) {
    return timed("cross_fidelity", [&](PropertyResult& r) {
        const VehicleParams& p = cfg.vehicle;
        double worst_mag = 0.0;
        double worst_dir = 0.0;
        double worst_thrust = 0.0;
        const CyclicCommand cmds[] = {{0.4, 0.1, 0.0}, {0.4, 0.1, kPi}, {0.5, 0.2, 1.0}, {0.3, 0.05, -2.0}};
        for (int motor : {1, 2}) {
            for (const auto& cmd : cmds) {
                const CycleAverage c = cyclic_average(cmd, motor, p, 20);
                const Wrench a = averaged_rotor_wrench(cmd, motor, p);
                const double arm = (motor == 1 ? -1.0 : 1.0) * p.arm_l;
                const Vec2 ref(a.tau.x() - arm * a.f_t, a.tau.y());
                worst_mag = std::max(worst_mag, std::abs(c.swash.norm() / ref.norm() - 1.0));
                worst_dir = std::max(worst_dir, std::abs(wrap_pi(torque_to_moment_direction(c.swash) -
                                                                 torque_to_moment_direction(ref))));
                worst_thrust = std::max(worst_thrust, std::abs(c.thrust / a.f_t - 1.0));
            }
        }
        r.passed = worst_mag <= 0.02 && worst_dir <= deg2rad(2.0) && worst_thrust <= 0.02;
        r.detail = fmt::format("moment magnitude {:.3f}%, direction {:.3f} deg, thrust {:.3f}%",
                               100.0 * worst_mag, rad2deg(worst_dir), 100.0 * worst_thrust);
    });
}

PropertyResult check_gamma0_calibration(const Config& cfg) {
    return timed("gamma0_calibration", [&](PropertyResult& r) {
        double worst = 0.0;
        for (double perturb : {0.0, 0.1, -0.15}) {
            VehicleParams p = cfg.vehicle;
            p.gamma_phys = wrap_pi(cfg.vehicle.gamma_phys + perturb);
            for (int motor : {1, 2}) {
                const auto trace = record_testbench({0.4, 0.1, 0.0}, motor, p, 8.0,
                                                    0.5 * max_cyclic_step(p));
                worst = std::max(worst, std::abs(wrap_pi(calibrate_gamma0(trace) - p.gamma_phys)));
            }
        }
        r.passed = worst <= 0.01;
        r.detail = fmt::format("max recovery error {:.2e} rad", worst);
    });
}

PropertyResult check_reachable_sets(const Config& cfg) {
    return timed("reachable_sets", [&](PropertyResult& r) {
        const VehicleParams& p = cfg.vehicle;
        const double c = hover_setpoint(p).throttle;
        int wrong = 0;
        int total = 0;
        constexpr int kGrid = 100;
        for (Variant v : {Variant::Sea, Variant::Cea}) {
            const auto hull = reachable_pitch_yaw_vertices(v, c, p);
            const MomentLimits lim = pitch_yaw_limits(v, c, p);
            for (int i = 0; i < kGrid; ++i) {
                for (int j = 0; j < kGrid; ++j) {
                    const double a = -1.2 + 2.4 * (i + 0.5) / kGrid;
                    const double b = -1.2 + 2.4 * (j + 0.5) / kGrid;
                    const bool expect = v == Variant::Sea ? (std::abs(a) <= 1.0 && std::abs(b) <= 1.0)
                                                          : (std::abs(a) + std::abs(b) <= 1.0);
                    const Vec2 tau(a * lim.tau_y_max, b * lim.tau_z_max);
                    Wrench w;
                    w.f_t = 2.0 * p.k_thrust * c;
                    w.tau = Vec3(0.0, tau.x(), tau.y());
                    const bool feasible = !mix(v, w, p).report.any();
                    if (inside_hull(hull, tau) != expect) ++wrong;
                    if (feasible != expect) ++wrong;
                    ++total;
                }
            }
        }
        r.passed = wrong == 0;
        r.detail = fmt::format("{} grid points per variant pair, {} misclassified", total, wrong);
    });
}

PropertyResult check_energy_drift(const Config& cfg) {
    return timed("energy_drift", [&](PropertyResult& r) {
        const VehicleParams& p = cfg.vehicle;
        SimState s;
        s.position = Vec3(0.0, 0.0, 50.0);
        s.velocity = Vec3(1.0, -2.0, 3.0);
        s.omega = Vec3(1.5, -0.8, 2.0);
        s.attitude = quat_from_euler({0.2, -0.3, 1.0});
        TotalLoads loads;
        loads.force_world = Vec3(0.0, 0.0, -p.mass * kGravity);
        const double e0 = mechanical_energy(s, p);
        double worst = 0.0;
        for (int k = 0; k < 10000; ++k) {
            s = integrate_step(s, loads, 0.001, p);
            worst = std::max(worst, std::abs(mechanical_energy(s, p) - e0) / std::abs(e0));
        }
        r.passed = worst < 1e-6;
        r.detail = fmt::format("max relative drift {:.3g} over 10 s", worst);
    });
}

PropertyResult check_quaternion_norm(const Config& cfg) {
    return timed("quaternion_norm", [&](PropertyResult& r) {
        const VehicleParams& p = cfg.vehicle;
        std::mt19937_64 rng(cfg.sim.seed);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        SimState s;
        s.omega = Vec3(3.0, -2.0, 4.0);
        TotalLoads loads;
        double worst = 0.0;
        for (int k = 0; k < 10000; ++k) {
            loads.torque_body = Vec3(u(rng), u(rng), u(rng));
            s = integrate_step(s, loads, 0.001, p);
            worst = std::max(worst, std::abs(s.attitude.norm() - 1.0));
        }
        r.passed = worst < 1e-12;
        r.detail = fmt::format("max |norm - 1| {:.3g} over 10000 steps", worst);
    });
}

PropertyResult check_trace_determinism(const Config& cfg) {
    return timed("trace_determinism", [&](PropertyResult& r) {
        Config c = cfg;
        c.scenario.name = "hover_gust";
        c.sim.duration_s = 3.0;
        const std::string a = trace_csv(run_scenario(c));
        const std::string b = trace_csv(run_scenario(c));
        r.passed = a == b && !a.empty();
        r.detail = fmt::format("two runs, {} bytes, {}", a.size(), a == b ? "identical" : "different");
    });
}

std::vector<PropertyResult> run_selftest(const Config& cfg) {
    return {check_mixer_round_trip(cfg), check_cyclic_identities(cfg), check_cross_fidelity(cfg),
            check_gamma0_calibration(cfg), check_reachable_sets(cfg),  check_energy_drift(cfg),
            check_quaternion_norm(cfg),   check_trace_determinism(cfg)};
}

}  // namespace tailsim
