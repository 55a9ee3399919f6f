#include "tailsim/scenarios.hpp"

#include "tailsim/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace tailsim {

const char* const kTraceHeader =
    "t,px,py,pz,vx,vy,vz,qw,qx,qy,qz,roll,pitch,yaw,wx,wy,wz,px_d,py_d,pz_d,roll_d,pitch_d,yaw_d,"
    "C1,C2,A1,A2,phi1,phi2,d1,d2,sat_any,wind_x,wind_y,wind_z";

namespace {

constexpr double kTick = CascadeController::kTickSeconds;
constexpr double kPrerollS = 3.0; // settle period before airborne scenarios, not recorded
constexpr double kStepSettleS = 8.0;
constexpr double kStepSpinupS = 1.0;

double smoothstep(double u) {
    u = std::clamp(u, 0.0, 1.0);
    return u * u * (3.0 - 2.0 * u);
}

double smoothstep_rate(double u) {
    if (u <= 0.0 || u >= 1.0) return 0.0;
    return 6.0 * u * (1.0 - u);
}

// What a scenario wants on one tick: the controller setpoint plus the
// reference the errors are measured against.
struct Command {
    Setpoint sp;
    Vec3 position_ref = Vec3::Zero();
    double yaw_ref = 0.0;
};

struct Tick {
    double t = 0.0;
    SimState state;
    EulerAngles euler;
    EulerAngles euler_d;
    Vec3 position_ref = Vec3::Zero();
    double yaw_ref = 0.0;
};

struct RunSpec {
    SimOptions opts;
    WindField wind;
    SimState initial;
    double preroll = 0.0;
    double duration = 0.0;
};

// Runs the closed loop, keeps every control tick for statistics and a
// decimated copy for the CSV trace.
template <class CommandFn>
std::vector<Tick> run_loop(const Config& cfg, const RunSpec& spec, CommandFn&& command,
                           ScenarioReport& report) {
    // Shift fan schedules so scenario time zero follows the settle period.
    WindField wind = spec.wind;
    for (auto& fan : wind.fans) {
        for (auto& [on, off] : fan.schedule) {
            on += spec.preroll;
            off += spec.preroll;
        }
    }
    Simulator sim(cfg, spec.opts, std::move(wind), spec.initial);

    const auto preroll_ticks = static_cast<std::int64_t>(std::llround(spec.preroll / kTick));
    const double duration = cfg.sim.duration_s > 0.0 ? cfg.sim.duration_s : spec.duration;
    const auto run_ticks = static_cast<std::int64_t>(std::llround(duration / kTick));
    const auto decimate =
        std::max<std::int64_t>(1, std::llround(1.0 / (cfg.sim.trace_rate_hz * kTick)));

    const Command first = command(0.0, sim.state());
    for (std::int64_t k = 0; k < preroll_ticks; ++k) sim.tick(first.sp);
    // Duty is counted over the recorded part only.
    SaturationDuty duty;

    std::vector<Tick> ticks;
    ticks.reserve(static_cast<std::size_t>(run_ticks));
    for (std::int64_t k = 0; k < run_ticks; ++k) {
        const double t = k * kTick;
        const Command c = command(t, sim.state());
        sim.tick(c.sp);
        duty.record(sim.saturation());

        Tick row;
        row.t = (k + 1) * kTick;
        row.state = sim.state();
        row.euler = euler_from_quat(row.state.attitude);
        row.euler_d = euler_from_quat(sim.control().attitude_d);
        row.position_ref = c.position_ref;
        row.yaw_ref = c.yaw_ref;
        ticks.push_back(row);

        if ((k + 1) % decimate == 0) {
            TraceSample s;
            s.t = row.t;
            s.position = row.state.position;
            s.velocity = row.state.velocity;
            s.attitude = row.state.attitude;
            s.euler = row.euler;
            s.omega = row.state.omega;
            s.position_d = c.position_ref;
            s.euler_d = row.euler_d;
            s.command = sim.command();
            s.sat_any = sim.saturation().any();
            s.wind = sim.last_loads().wind_com;
            report.trace.push_back(s);
        }
    }
    report.servo_duty = duty.servo_duty();
    report.any_duty = duty.any_duty();
    report.metrics["servo_duty"] = report.servo_duty;
    report.metrics["any_duty"] = report.any_duty;
    return ticks;
}

template <class Fn>
std::vector<double> series(const std::vector<Tick>& ticks, Fn&& fn, double t_from = -1.0) {
    std::vector<double> out;
    out.reserve(ticks.size());
    for (const auto& r : ticks) {
        if (r.t >= t_from) out.push_back(fn(r));
    }
    return out;
}

// How far an angle has gone past a target, measured away from zero.
double sign_beyond(double angle, double target) {
    return std::max(0.0, (angle - target) * (target < 0.0 ? -1.0 : 1.0));
}

double deg_err(double a, double b) { return std::abs(rad2deg(wrap_pi(a - b))); }

void add_stats(ScenarioReport& r, const std::string& key, const std::vector<double>& abs_err) {
    r.stats[key] = error_stats(abs_err);
}

ScenarioReport make_report(const std::string& name, const Config& cfg) {
    ScenarioReport r;
    r.scenario = name;
    r.variant = cfg.sim.variant;
    return r;
}

RunSpec base_spec(const Config& cfg) {
    RunSpec s;
    s.opts = sim_options_from(cfg);
    s.opts.ground_effect = cfg.scenario.ground_effect;
    s.opts.wing = cfg.scenario.wing_model;
    s.wind.kind = cfg.wind.kind;
    s.wind.uniform = cfg.wind.uniform;
    return s;
}

FanJet make_fan(const Config& cfg, const Vec3& position, double v_ref) {
    FanJet f;
    f.position = position;
    f.axis = Vec3::UnitX();
    f.v_ref = v_ref;
    f.d_ref = cfg.wind.fan_d_ref;
    f.jet_radius = cfg.wind.fan_jet_radius;
    f.decay_exp = cfg.wind.fan_decay_exp;
    f.spinup_s = cfg.wind.fan_spinup_s;
    return f;
}

Setpoint hold_position(const Vec3& p, double yaw) {
    Setpoint sp;
    sp.mode = SetpointMode::Position;
    sp.position = p;
    sp.yaw = yaw;
    return sp;
}

}  // namespace

const std::vector<std::string>& scenario_names() {
    static const std::vector<std::string> names{"takeoff", "fig8",   "hover_gust", "step",
                                                "step_x",  "step_y", "transition"};
    return names;
}

// ---------------------------------------------------------------------------

ScenarioReport run_takeoff(const Config& cfg) {
    const auto& sc = cfg.scenario;
    const auto& p = cfg.vehicle;
    ScenarioReport report = make_report("takeoff", cfg);

    RunSpec spec = base_spec(cfg);
    const double contact = sc.platform == Platform::Pedestal ? sc.pedestal_height : 0.0;
    spec.opts.contact_height = contact;
    spec.initial = resting_state(p, contact, 0.0);
    const Vec3 start = spec.initial.position;
    const double weight = p.mass * kGravity;
    const bool attitude_mode = sc.takeoff_control == TakeoffControl::Attitude;
    spec.duration = attitude_mode ? sc.takeoff_ramp_s + 2.0 : sc.takeoff_climb_s + 3.0;

    auto command = [&](double t, const SimState&) {
        Command c;
        if (attitude_mode) {
            c.sp.mode = SetpointMode::Attitude;
            c.sp.attitude = hover_attitude(0.0);
            c.sp.thrust = sc.takeoff_thrust_ratio * weight * std::min(1.0, t / sc.takeoff_ramp_s);
            c.position_ref = start;
        } else {
            const double u = t / sc.takeoff_climb_s;
            c.sp = hold_position(start + Vec3(0.0, 0.0, sc.takeoff_climb * smoothstep(u)), 0.0);
            c.sp.velocity.z() = sc.takeoff_climb * smoothstep_rate(u) / sc.takeoff_climb_s;
            c.position_ref = c.sp.position;
        }
        return c;
    };
    const auto ticks = run_loop(cfg, spec, command, report);

    const auto pitch = series(ticks, [](const Tick& r) { return deg_err(r.euler.pitch, r.euler_d.pitch); });
    const auto xerr = series(ticks, [](const Tick& r) { return std::abs(r.state.position.x() - r.position_ref.x()); });
    add_stats(report, "pitch_err_deg", pitch);
    add_stats(report, "x_err_m", xerr);
    report.metrics["max_pitch_err_deg"] = report.stats["pitch_err_deg"].max;
    report.metrics["max_x_err_m"] = report.stats["x_err_m"].max;
    double liftoff = -1.0;
    for (const auto& r : ticks) {
        if (!r.state.on_ground && r.state.position.z() > start.z() + 1e-6) {
            liftoff = r.t;
            break;
        }
    }
    report.metrics["liftoff_s"] = liftoff;
    report.metrics["final_height_m"] = ticks.back().state.position.z() - contact;
    report.flown["max_pitch_err_deg"] = "8.6 (CEA ground) / 2.1 (CEA pedestal) / 1.4 (SEA ground)";
    report.flown["max_x_err_m"] = "0.04 (SEA) / 0.79 (CEA), position mode";
    return report;
}

// ---------------------------------------------------------------------------

Fig8Reference::Fig8Reference(const ScenarioSettings& s)
    : length_(s.fig8_length),
      width_(s.fig8_width),
      period_(s.fig8_period),
      edge_(s.fig8_edge_period),
      total_(2.0 * s.fig8_edge_period + 2.0 * s.fig8_period),
      height_(s.hover_height) {}

std::array<double, 4> Fig8Reference::cycle_ends() const {
    return {edge_, edge_ + period_, edge_ + 2.0 * period_, total_};
}

// Phase of the Lissajous figure. The edge cycles ramp the phase rate with a
// smoothstep over 2 (edge - period) seconds, then cruise, so each cycle still
// covers exactly one turn.
double Fig8Reference::phase(double t, double* rate, double* rate_dot) const {
    const double w0 = 2.0 * kPi / period_;
    const double ramp = 2.0 * (edge_ - period_);
    auto edge_cycle = [&](double tau, double* r, double* rd) {
        if (ramp > 0.0 && tau < ramp) {
            const double u = tau / ramp;
            *r = w0 * smoothstep(u);
            *rd = w0 * smoothstep_rate(u) / ramp;
            return w0 * ramp * (u * u * u - 0.5 * u * u * u * u);
        }
        *r = w0;
        *rd = 0.0;
        return w0 * (0.5 * ramp + (tau - ramp));
    };
    double r = 0.0;
    double rd = 0.0;
    double psi = 0.0;
    if (t <= 0.0) {
        psi = 0.0;
    } else if (t < edge_) {
        psi = edge_cycle(t, &r, &rd);
    } else if (t < edge_ + 2.0 * period_) {
        psi = 2.0 * kPi + w0 * (t - edge_);
        r = w0;
    } else if (t < total_) {
        psi = 8.0 * kPi - edge_cycle(total_ - t, &r, &rd);
        rd = -rd;
    } else {
        psi = 8.0 * kPi;
    }
    if (rate) *rate = r;
    if (rate_dot) *rate_dot = rd;
    return psi;
}

TrajectoryPoint Fig8Reference::at(double t) const {
    double w = 0.0;
    double wd = 0.0;
    const double psi = phase(t, &w, &wd);
    const double a = 0.5 * length_;
    const double b = 0.5 * width_;
    TrajectoryPoint p;
    p.position = Vec3(a * std::sin(psi), b * std::sin(2.0 * psi), height_);
    p.velocity = Vec3(a * std::cos(psi) * w, 2.0 * b * std::cos(2.0 * psi) * w, 0.0);
    p.acceleration = Vec3(a * (-std::sin(psi) * w * w + std::cos(psi) * wd),
                          2.0 * b * (-2.0 * std::sin(2.0 * psi) * w * w + std::cos(2.0 * psi) * wd),
                          0.0);
    return p;
}

double YawFromVelocity::update(const Vec3& velocity) {
    if (std::hypot(velocity.x(), velocity.y()) >= hold_speed_) {
        yaw_ = std::atan2(velocity.y(), velocity.x());
    }
    return yaw_;
}

ScenarioReport run_fig8(const Config& cfg) {
    const auto& sc = cfg.scenario;
    ScenarioReport report = make_report("fig8", cfg);
    const Fig8Reference ref(sc);
    // Heading of the path tangent at the start point.
    const double yaw0 = std::atan2(sc.fig8_width, 0.5 * sc.fig8_length);

    RunSpec spec = base_spec(cfg);
    spec.initial = hover_state(cfg.vehicle, ref.at(0.0).position, yaw0);
    spec.preroll = kPrerollS;
    spec.duration = ref.duration();

    YawFromVelocity yaw(sc.yaw_hold_speed, yaw0);
    auto command = [&](double t, const SimState&) {
        const TrajectoryPoint tp = ref.at(t);
        Command c;
        c.sp = hold_position(tp.position, yaw.update(tp.velocity));
        c.sp.velocity = tp.velocity;
        c.sp.acceleration = tp.acceleration;
        c.position_ref = tp.position;
        c.yaw_ref = c.sp.yaw;
        return c;
    };
    const auto ticks = run_loop(cfg, spec, command, report);

    add_stats(report, "pos_err_m",
              series(ticks, [](const Tick& r) { return (r.state.position - r.position_ref).norm(); }));
    add_stats(report, "yaw_err_deg", series(ticks, [](const Tick& r) { return deg_err(r.euler.yaw, r.yaw_ref); }));
    report.metrics["median_pos_err_cm"] = 100.0 * report.stats["pos_err_m"].median;
    report.metrics["max_pos_err_cm"] = 100.0 * report.stats["pos_err_m"].max;
    report.metrics["median_yaw_err_deg"] = report.stats["yaw_err_deg"].median;
    report.metrics["max_yaw_err_deg"] = report.stats["yaw_err_deg"].max;
    report.flown["median_pos_err_cm"] = "14.17 (SEA) / 15.35 (CEA)";
    report.flown["max_pos_err_cm"] = "38.91 (SEA) / 40.64 (CEA)";
    report.flown["median_yaw_err_deg"] = "19.5 (SEA) / 27.1 (CEA)";
    report.flown["max_yaw_err_deg"] = "87.9 (SEA) / 119.3 (CEA)";
    return report;
}

// ---------------------------------------------------------------------------

ScenarioReport run_hover_gust(const Config& cfg) {
    const auto& sc = cfg.scenario;
    const auto& p = cfg.vehicle;
    ScenarioReport report = make_report("hover_gust", cfg);
    const Vec3 hover(0.0, 0.0, sc.hover_height);

    RunSpec spec = base_spec(cfg);
    spec.wind.kind = WindKind::Fan;
    for (double side : {-1.0, 1.0}) {
        FanJet f = make_fan(cfg, hover + Vec3(-1.0, side * 0.25 * p.wing_span, 0.0),
                            cfg.wind.fan_v_ref * sc.gust_v_scale);
        f.schedule = {{sc.gust_on_s, sc.gust_off_s}};
        spec.wind.fans.push_back(f);
    }
    spec.initial = hover_state(p, hover, 0.0);
    spec.preroll = kPrerollS;
    spec.duration = 10.0;

    auto command = [&](double, const SimState&) {
        Command c;
        c.sp = hold_position(hover, 0.0);
        c.position_ref = hover;
        return c;
    };
    const auto ticks = run_loop(cfg, spec, command, report);

    add_stats(report, "x_err_m", series(ticks, [](const Tick& r) { return std::abs(r.state.position.x() - r.position_ref.x()); }));
    add_stats(report, "pitch_err_deg", series(ticks, [](const Tick& r) { return deg_err(r.euler.pitch, r.euler_d.pitch); }));
    report.metrics["median_x_err_cm"] = 100.0 * report.stats["x_err_m"].median;
    report.metrics["max_x_err_cm"] = 100.0 * report.stats["x_err_m"].max;
    report.metrics["median_pitch_err_deg"] = report.stats["pitch_err_deg"].median;
    report.metrics["max_pitch_err_deg"] = report.stats["pitch_err_deg"].max;
    report.flown["median_x_err_cm"] = "1.77 (SEA) / 3.83 (CEA)";
    report.flown["max_x_err_cm"] = "6.60 (SEA) / 7.92 (CEA)";
    report.flown["median_pitch_err_deg"] = "1.32 (SEA) / 1.09 (CEA)";
    report.flown["max_pitch_err_deg"] = "4.08 (SEA) / 5.78 (CEA)";
    return report;
}

// ---------------------------------------------------------------------------

ScenarioReport run_step_disturbance(const Config& cfg) {
    const auto& sc = cfg.scenario;
    const auto& p = cfg.vehicle;
    const char axis = sc.step_axis;
    ScenarioReport report = make_report(axis == 'y' ? "step_y" : "step_x", cfg);
    const Vec3 hover(0.0, 0.0, sc.hover_height);
    const Vec3 away = axis == 'y' ? Vec3(0.0, sc.step_distance, 0.0) : Vec3(sc.step_distance, 0.0, 0.0);

    RunSpec spec = base_spec(cfg);
    spec.wind.kind = WindKind::Fan;
    // One jet on the +y half of the wing, brought up gently during the settle
    // period and left running.
    FanJet fan = make_fan(cfg, hover + Vec3(-1.0, 0.25 * p.wing_span, 0.0), sc.step_v_ref);
    fan.spinup_s = kStepSpinupS;
    fan.schedule = {{-kStepSettleS, 1e9}};
    spec.wind.fans.push_back(fan);
    spec.initial = hover_state(p, hover, 0.0);
    spec.preroll = kStepSettleS;
    spec.duration = sc.step_back_s + 4.0;

    auto command = [&](double t, const SimState&) {
        Command c;
        const bool out = t >= sc.step_out_s && t < sc.step_back_s;
        c.position_ref = out ? Vec3(hover + away) : hover;
        c.sp = hold_position(c.position_ref, 0.0);
        return c;
    };
    const auto ticks = run_loop(cfg, spec, command, report);

    const auto yaw_all = series(ticks, [](const Tick& r) { return deg_err(r.euler.yaw, r.yaw_ref); });
    const auto yaw_back = series(ticks, [](const Tick& r) { return deg_err(r.euler.yaw, r.yaw_ref); }, sc.step_back_s);
    add_stats(report, "yaw_err_deg", yaw_all);
    add_stats(report, "yaw_err_return_deg", yaw_back);
    add_stats(report, "roll_err_deg", series(ticks, [](const Tick& r) { return deg_err(r.euler.roll, r.euler_d.roll); }));
    add_stats(report, "pitch_err_deg", series(ticks, [](const Tick& r) { return deg_err(r.euler.pitch, r.euler_d.pitch); }));
    report.metrics["max_yaw_err_deg"] = report.stats["yaw_err_deg"].max;
    report.metrics["max_yaw_err_return_deg"] = report.stats["yaw_err_return_deg"].max;
    report.metrics["max_roll_err_deg"] = report.stats["roll_err_deg"].max;
    report.metrics["max_pitch_err_deg"] = report.stats["pitch_err_deg"].max;
    if (axis == 'y') {
        report.flown["max_yaw_err_return_deg"] = "8.4 (SEA) / 22.1 (CEA)";
    } else {
        report.flown["max_yaw_err_return_deg"] = "31.2 (CEA)";
        report.flown["max_roll_err_deg"] = "8.2 (CEA)";
    }
    return report;
}

// ---------------------------------------------------------------------------

ScenarioReport run_transition(const Config& cfg) {
    const auto& sc = cfg.scenario;
    const auto& p = cfg.vehicle;
    ScenarioReport report = make_report("transition", cfg);
    const Vec3 hover(0.0, 0.0, sc.hover_height);
    constexpr double kHoverS = 1.0;
    const double pitch_target = deg2rad(sc.transition_pitch_deg);

    RunSpec spec = base_spec(cfg);
    spec.initial = hover_state(p, hover, 0.0);
    spec.preroll = kPrerollS;
    spec.duration = kHoverS + sc.transition_ramp_s + sc.transition_hold_s;

    const double f_cap = sc.transition_max_throttle * 2.0 * p.k_thrust;
    auto pitch_at = [&](double t) {
        return pitch_target * std::clamp((t - kHoverS) / sc.transition_ramp_s, 0.0, 1.0);
    };
    auto command = [&](double t, const SimState& s) {
        Command c;
        c.sp.mode = SetpointMode::Attitude;
        c.sp.attitude = quat_from_euler({0.0, pitch_at(t), 0.0});
        // Altitude hold through the nose's vertical component.
        const Vec3 nose = s.attitude * kThrustAxisBody;
        const double up = std::max(nose.z(), 0.2);
        const double accel = kGravity + 2.0 * (hover.z() - s.position.z()) - 2.0 * s.velocity.z();
        c.sp.thrust = std::clamp(p.mass * accel / up, 0.0, f_cap);
        c.position_ref = Vec3(s.position.x(), s.position.y(), hover.z());
        return c;
    };
    const auto ticks = run_loop(cfg, spec, command, report);

    const double hold_from = kHoverS + sc.transition_ramp_s;
    double overshoot = 0.0;
    double min_z = hover.z();
    for (const auto& r : ticks) {
        const double beyond = sign_beyond(r.euler.pitch, pitch_target);
        overshoot = std::max(overshoot, beyond);
        min_z = std::min(min_z, r.state.position.z());
    }
    const double end = ticks.back().t;
    const auto steady = series(ticks, [&](const Tick& r) { return deg_err(r.euler.pitch, pitch_target); },
                               std::max(hold_from, end - 3.0));
    add_stats(report, "pitch_err_hold_deg",
              series(ticks, [&](const Tick& r) { return deg_err(r.euler.pitch, pitch_target); }, hold_from));
    add_stats(report, "roll_err_deg", series(ticks, [](const Tick& r) { return deg_err(r.euler.roll, 0.0); }));
    add_stats(report, "yaw_err_deg", series(ticks, [](const Tick& r) { return deg_err(r.euler.yaw, 0.0); }));
    const auto& last = ticks.back().state;
    const Vec3 wind = wind_at(last.position, last.time, spec.wind);
    report.metrics["pitch_overshoot_deg"] = rad2deg(overshoot);
    report.metrics["steady_pitch_err_deg"] = error_stats(steady).median;
    report.metrics["final_airspeed_ms"] = (last.velocity - wind).norm();
    report.metrics["final_ground_speed_ms"] = last.velocity.norm();
    report.metrics["altitude_loss_m"] = hover.z() - min_z;
    report.metrics["max_roll_err_deg"] = report.stats["roll_err_deg"].max;
    report.metrics["max_yaw_err_deg"] = report.stats["yaw_err_deg"].max;
    report.flown["pitch_target_deg"] = "-65";
    report.flown["final_airspeed_ms"] = "9.6";
    report.flown["max_roll_err_deg"] = "5.3";
    report.flown["max_yaw_err_deg"] = "3.8";
    return report;
}

// ---------------------------------------------------------------------------

ScenarioReport run_scenario(const Config& cfg) {
    const std::string& name = cfg.scenario.name;
    if (name == "takeoff") return run_takeoff(cfg);
    if (name == "fig8") return run_fig8(cfg);
    if (name == "hover_gust") return run_hover_gust(cfg);
    if (name == "transition") return run_transition(cfg);
    if (name == "step" || name == "step_x" || name == "step_y") {
        Config c = cfg;
        if (name != "step") c.scenario.step_axis = name.back();
        return run_step_disturbance(c);
    }
    throw ConfigError("unknown scenario '" + name + "'");
}

std::string trace_csv(const ScenarioReport& r) {
    std::string out = kTraceHeader;
    out += '\n';
    for (const auto& s : r.trace) {
        const auto& c = s.command;
        fmt::format_to(std::back_inserter(out),
                       "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},"
                       "{},{},{},{},{},{},{},{},{},{},{},{}\n",
                       s.t, s.position.x(), s.position.y(), s.position.z(), s.velocity.x(),
                       s.velocity.y(), s.velocity.z(), s.attitude.w(), s.attitude.x(),
                       s.attitude.y(), s.attitude.z(), s.euler.roll, s.euler.pitch, s.euler.yaw,
                       s.omega.x(), s.omega.y(), s.omega.z(), s.position_d.x(), s.position_d.y(),
                       s.position_d.z(), s.euler_d.roll, s.euler_d.pitch, s.euler_d.yaw,
                       c.cyclic[0].c_nominal, c.cyclic[1].c_nominal, c.cyclic[0].amplitude,
                       c.cyclic[1].amplitude, c.cyclic[0].phi, c.cyclic[1].phi, c.servo[0],
                       c.servo[1], s.sat_any ? 1 : 0, s.wind.x(), s.wind.y(), s.wind.z());
    }
    return out;
}

std::string stats_text(const ScenarioReport& r) {
    std::string out;
    fmt::format_to(std::back_inserter(out), "scenario={}\nvariant={}\nsamples={}\n", r.scenario,
                   to_string(r.variant), r.trace.size());
    for (const auto& [k, v] : r.metrics) fmt::format_to(std::back_inserter(out), "{}={}\n", k, v);
    for (const auto& [k, s] : r.stats) {
        fmt::format_to(std::back_inserter(out), "{}.median={}\n{}.q25={}\n{}.q75={}\n{}.max={}\n", k,
                       s.median, k, s.q25, k, s.q75, k, s.max);
    }
    for (const auto& [k, v] : r.flown) fmt::format_to(std::back_inserter(out), "flown.{}={}\n", k, v);
    return out;
}

}  // namespace tailsim
