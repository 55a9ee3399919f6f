#include "tailsim/config.hpp"

#include "tailsim/errors.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <vector>

namespace tailsim {
namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

double parse_double(std::string_view key, std::string_view text) {
    const std::string s = trim(text);
    double v = 0.0;
    const auto* first = s.data();
    const auto* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec == std::errc::result_out_of_range) {
        // from_chars rejects overflow; strtod gives the saturated value.
        v = std::strtod(s.c_str(), nullptr);
        ptr = last;
        ec = {};
    }
    if (s.empty() || ec != std::errc{} || ptr != last) {
        throw ParseError(fmt::format("{}: '{}' is not a number", key, s));
    }
    return v;
}

long long parse_int(std::string_view key, std::string_view text) {
    const std::string s = trim(text);
    long long v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
        throw ParseError(fmt::format("{}: '{}' is not an integer", key, s));
    }
    return v;
}

std::uint64_t parse_u64(std::string_view key, std::string_view text) {
    const std::string s = trim(text);
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
        throw ParseError(fmt::format("{}: '{}' is not an unsigned integer", key, s));
    }
    return v;
}

bool parse_bool(std::string_view key, std::string_view text) {
    const std::string s = trim(text);
    if (s == "true" || s == "1" || s == "on" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "off" || s == "no") return false;
    throw ParseError(fmt::format("{}: '{}' is not a boolean", key, s));
}

// Shortest decimal text t such that parse(t) * scale reproduces x exactly,
// when one exists near x / scale.
std::string format_scaled(double x, double scale) {
    if (scale == 1.0) return fmt::format("{}", x);
    const double d = x / scale;
    for (int k = 0; k <= 4; ++k) {
        for (double toward : {HUGE_VAL, -HUGE_VAL}) {
            double c = d;
            for (int j = 0; j < k; ++j) c = std::nextafter(c, toward);
            if (c * scale == x) return fmt::format("{}", c);
        }
    }
    return fmt::format("{}", d);
}

struct Field {
    std::string key;
    std::function<std::string(const Config&)> get;
    std::function<void(Config&, std::string_view)> set;
};

struct Section {
    std::string name;
    std::vector<Field> fields;
};

template <class Acc>
Field number(std::string key, Acc acc, double scale = 1.0) {
    return Field{
        key,
        [acc, scale](const Config& c) { return format_scaled(acc(c), scale); },
        [acc, scale, key](Config& c, std::string_view v) { acc(c) = parse_double(key, v) * scale; }};
}

template <class Acc>
Field integer(std::string key, Acc acc) {
    return Field{key, [acc](const Config& c) { return fmt::format("{}", acc(c)); },
                 [acc, key](Config& c, std::string_view v) {
                     acc(c) = static_cast<std::remove_reference_t<decltype(acc(c))>>(
                         parse_int(key, v));
                 }};
}

template <class Acc>
Field boolean(std::string key, Acc acc) {
    return Field{key, [acc](const Config& c) { return std::string(acc(c) ? "true" : "false"); },
                 [acc, key](Config& c, std::string_view v) { acc(c) = parse_bool(key, v); }};
}

template <class Acc>
std::vector<Field> vec3(const std::string& prefix, const std::array<const char*, 3>& suffix,
                        Acc acc) {
    std::vector<Field> out;
    for (int i = 0; i < 3; ++i) {
        out.push_back(number(prefix + suffix[i], [acc, i](auto& c) -> auto& { return acc(c)[i]; }));
    }
    return out;
}

constexpr std::array<const char*, 3> kXyz{"x", "y", "z"};

template <class Acc>
std::vector<Field> pid3(const std::string& prefix, Acc acc) {
    std::vector<Field> out;
    for (const char* term : {"p", "i", "d"}) {
        for (int i = 0; i < 3; ++i) {
            const std::string key = prefix + "_" + term + "_" + kXyz[i];
            const char t = term[0];
            out.push_back(number(key, [acc, i, t](auto& c) -> auto& {
                auto& g = acc(c)[i];
                return t == 'p' ? g.p : (t == 'i' ? g.i : g.d);
            }));
        }
    }
    return out;
}

void append(std::vector<Field>& dst, std::vector<Field> src) {
    for (auto& f : src) dst.push_back(std::move(f));
}

std::string_view to_string(WindKind k) {
    switch (k) {
    case WindKind::None: return "none";
    case WindKind::Uniform: return "uniform";
    case WindKind::Fan: return "fan";
    }
    return "none";
}

WindKind parse_wind_kind(std::string_view s) {
    if (s == "none") return WindKind::None;
    if (s == "uniform") return WindKind::Uniform;
    if (s == "fan") return WindKind::Fan;
    throw ParseError("kind: '" + std::string(s) + "' (expected none|uniform|fan)");
}

std::vector<Section> build_sections() {
    std::vector<Section> out;

    Section v{"vehicle", {}};
    auto& f = v.fields;
    f.push_back(number("mass", [](auto& c) -> auto& { return c.vehicle.mass; }));
    append(f, vec3("inertia_", {"xx", "yy", "zz"}, [](auto& c) -> auto& { return c.vehicle.inertia; }));
    f.push_back(number("arm_l", [](auto& c) -> auto& { return c.vehicle.arm_l; }));
    f.push_back(number("k_thrust", [](auto& c) -> auto& { return c.vehicle.k_thrust; }));
    f.push_back(number("k_swash", [](auto& c) -> auto& { return c.vehicle.k_swash; }));
    f.push_back(number("k_elevon", [](auto& c) -> auto& { return c.vehicle.k_elevon; }));
    f.push_back(number("k_ep", [](auto& c) -> auto& { return c.vehicle.k_ep; }));
    f.push_back(number("gamma0", [](auto& c) -> auto& { return c.vehicle.gamma0; }));
    f.push_back(number("gamma_phys", [](auto& c) -> auto& { return c.vehicle.gamma_phys; }));
    f.push_back(number("k_lat", [](auto& c) -> auto& { return c.vehicle.k_lat; }));
    f.push_back(integer("rotor_dir_1", [](auto& c) -> auto& { return c.vehicle.rotor_dir[0]; }));
    f.push_back(integer("rotor_dir_2", [](auto& c) -> auto& { return c.vehicle.rotor_dir[1]; }));
    f.push_back(number("servo_limit_deg", [](auto& c) -> auto& { return c.vehicle.servo_limit; },
                       kPi / 180.0));
    f.push_back(number("servo_rate_deg_s",
                       [](auto& c) -> auto& { return c.vehicle.servo_rate_limit; }, kPi / 180.0));
    f.push_back(number("servo_update_hz", [](auto& c) -> auto& { return c.vehicle.servo_update_hz; }));
    f.push_back(number("motor_tau_s", [](auto& c) -> auto& { return c.vehicle.motor_tau; }));
    f.push_back(number("omega_max", [](auto& c) -> auto& { return c.vehicle.omega_max; }));
    f.push_back(number("omega_hover", [](auto& c) -> auto& { return c.vehicle.omega_hover; }));
    f.push_back(number("encoder_rate_hz", [](auto& c) -> auto& { return c.vehicle.encoder_rate_hz; }));
    f.push_back(number("wing_area", [](auto& c) -> auto& { return c.vehicle.wing_area; }));
    f.push_back(number("wing_span", [](auto& c) -> auto& { return c.vehicle.wing_span; }));
    f.push_back(number("wing_cp_z", [](auto& c) -> auto& { return c.vehicle.wing_cp_z; }));
    f.push_back(number("wing_cp_travel", [](auto& c) -> auto& { return c.vehicle.wing_cp_travel; }));
    f.push_back(integer("n_strips", [](auto& c) -> auto& { return c.vehicle.n_strips; }));
    f.push_back(number("c_d0", [](auto& c) -> auto& { return c.vehicle.c_d0; }));
    f.push_back(number("elevon_area", [](auto& c) -> auto& { return c.vehicle.elevon_area; }));
    f.push_back(number("elevon_arm", [](auto& c) -> auto& { return c.vehicle.elevon_arm; }));
    f.push_back(number("k_efx", [](auto& c) -> auto& { return c.vehicle.k_efx; }));
    f.push_back(number("eta_min", [](auto& c) -> auto& { return c.vehicle.eta_min; }));
    f.push_back(number("rotor_disk_area", [](auto& c) -> auto& { return c.vehicle.rotor_disk_area; }));
    f.push_back(number("ground_effect_height",
                       [](auto& c) -> auto& { return c.vehicle.ground_effect_height; }));
    f.push_back(number("air_density", [](auto& c) -> auto& { return c.vehicle.air_density; }));
    f.push_back(number("gear_height", [](auto& c) -> auto& { return c.vehicle.gear_height; }));
    f.push_back(number("gear_stiffness", [](auto& c) -> auto& { return c.vehicle.gear_stiffness; }));
    f.push_back(number("trim_tau_y", [](auto& c) -> auto& { return c.vehicle.trim_tau_y; }));
    out.push_back(std::move(v));

    Section ctl{"control", {}};
    auto& g = ctl.fields;
    append(g, vec3("pos_p_", kXyz, [](auto& c) -> auto& { return c.control.pos_p; }));
    append(g, pid3("vel", [](auto& c) -> auto& { return c.control.vel; }));
    append(g, vec3("att_p_", kXyz, [](auto& c) -> auto& { return c.control.att_p; }));
    append(g, pid3("rate", [](auto& c) -> auto& { return c.control.rate; }));
    g.push_back(number("vel_i_limit", [](auto& c) -> auto& { return c.control.vel_i_limit; }));
    append(g, vec3("rate_i_limit_", kXyz, [](auto& c) -> auto& { return c.control.rate_i_limit; }));
    g.push_back(number("vel_max", [](auto& c) -> auto& { return c.control.vel_max; }));
    g.push_back(number("max_tilt_deg", [](auto& c) -> auto& { return c.control.max_tilt; },
                       kPi / 180.0));
    g.push_back(number("max_rate_dps", [](auto& c) -> auto& { return c.control.max_rate; },
                       kPi / 180.0));
    append(g, vec3("tau_limit_", kXyz, [](auto& c) -> auto& { return c.control.tau_limit; }));
    g.push_back(number("max_thrust_ratio", [](auto& c) -> auto& { return c.control.max_thrust_ratio; }));
    out.push_back(std::move(ctl));

    Section sim{"sim", {}};
    auto& s = sim.fields;
    s.push_back(number("dt_s", [](auto& c) -> auto& { return c.sim.dt_s; }));
    s.push_back(Field{"fidelity", [](const Config& c) { return std::string(to_string(c.sim.fidelity)); },
                      [](Config& c, std::string_view t) { c.sim.fidelity = parse_fidelity(trim(t)); }});
    s.push_back(Field{"variant", [](const Config& c) { return std::string(to_string(c.sim.variant)); },
                      [](Config& c, std::string_view t) { c.sim.variant = parse_variant(trim(t)); }});
    s.push_back(Field{"seed", [](const Config& c) { return fmt::format("{}", c.sim.seed); },
                      [](Config& c, std::string_view t) { c.sim.seed = parse_u64("seed", t); }});
    s.push_back(number("duration_s", [](auto& c) -> auto& { return c.sim.duration_s; }));
    s.push_back(Field{"saturation_priority",
                      [](const Config& c) { return std::string(to_string(c.sim.saturation_priority)); },
                      [](Config& c, std::string_view t) {
                          c.sim.saturation_priority = parse_saturation_priority(trim(t));
                      }});
    s.push_back(number("trace_rate_hz", [](auto& c) -> auto& { return c.sim.trace_rate_hz; }));
    s.push_back(number("noise_pos", [](auto& c) -> auto& { return c.sim.noise_pos; }));
    s.push_back(number("noise_vel", [](auto& c) -> auto& { return c.sim.noise_vel; }));
    s.push_back(number("noise_att", [](auto& c) -> auto& { return c.sim.noise_att; }));
    s.push_back(number("noise_gyro", [](auto& c) -> auto& { return c.sim.noise_gyro; }));
    out.push_back(std::move(sim));

    Section wind{"wind", {}};
    auto& w = wind.fields;
    w.push_back(Field{"kind", [](const Config& c) { return std::string(to_string(c.wind.kind)); },
                      [](Config& c, std::string_view t) { c.wind.kind = parse_wind_kind(trim(t)); }});
    append(w, vec3("uniform_", kXyz, [](auto& c) -> auto& { return c.wind.uniform; }));
    w.push_back(number("fan_v_ref", [](auto& c) -> auto& { return c.wind.fan_v_ref; }));
    w.push_back(number("fan_d_ref", [](auto& c) -> auto& { return c.wind.fan_d_ref; }));
    w.push_back(number("fan_jet_radius", [](auto& c) -> auto& { return c.wind.fan_jet_radius; }));
    w.push_back(number("fan_decay_exp", [](auto& c) -> auto& { return c.wind.fan_decay_exp; }));
    w.push_back(number("fan_spinup_s", [](auto& c) -> auto& { return c.wind.fan_spinup_s; }));
    out.push_back(std::move(wind));

    Section sc{"scenario", {}};
    auto& n = sc.fields;
    n.push_back(Field{"name", [](const Config& c) { return c.scenario.name; },
                      [](Config& c, std::string_view t) { c.scenario.name = trim(t); }});
    n.push_back(Field{"platform",
                      [](const Config& c) {
                          return std::string(c.scenario.platform == Platform::Ground ? "ground"
                                                                                     : "pedestal");
                      },
                      [](Config& c, std::string_view t) {
                          const auto s = trim(t);
                          if (s == "ground") c.scenario.platform = Platform::Ground;
                          else if (s == "pedestal") c.scenario.platform = Platform::Pedestal;
                          else throw ParseError("platform: '" + s + "' (expected ground|pedestal)");
                      }});
    n.push_back(Field{"control",
                      [](const Config& c) {
                          return std::string(c.scenario.takeoff_control == TakeoffControl::Attitude
                                                 ? "attitude"
                                                 : "position");
                      },
                      [](Config& c, std::string_view t) {
                          const auto s = trim(t);
                          if (s == "attitude") c.scenario.takeoff_control = TakeoffControl::Attitude;
                          else if (s == "position") c.scenario.takeoff_control = TakeoffControl::Position;
                          else throw ParseError("control: '" + s + "' (expected attitude|position)");
                      }});
    n.push_back(number("pedestal_height", [](auto& c) -> auto& { return c.scenario.pedestal_height; }));
    n.push_back(number("takeoff_ramp_s", [](auto& c) -> auto& { return c.scenario.takeoff_ramp_s; }));
    n.push_back(number("takeoff_thrust_ratio",
                       [](auto& c) -> auto& { return c.scenario.takeoff_thrust_ratio; }));
    n.push_back(number("takeoff_climb", [](auto& c) -> auto& { return c.scenario.takeoff_climb; }));
    n.push_back(number("takeoff_climb_s", [](auto& c) -> auto& { return c.scenario.takeoff_climb_s; }));
    n.push_back(boolean("ground_effect", [](auto& c) -> auto& { return c.scenario.ground_effect; }));
    n.push_back(number("hover_height", [](auto& c) -> auto& { return c.scenario.hover_height; }));
    n.push_back(number("fig8_length", [](auto& c) -> auto& { return c.scenario.fig8_length; }));
    n.push_back(number("fig8_width", [](auto& c) -> auto& { return c.scenario.fig8_width; }));
    n.push_back(number("fig8_period", [](auto& c) -> auto& { return c.scenario.fig8_period; }));
    n.push_back(number("fig8_edge_period", [](auto& c) -> auto& { return c.scenario.fig8_edge_period; }));
    n.push_back(number("yaw_hold_speed", [](auto& c) -> auto& { return c.scenario.yaw_hold_speed; }));
    n.push_back(number("gust_on_s", [](auto& c) -> auto& { return c.scenario.gust_on_s; }));
    n.push_back(number("gust_off_s", [](auto& c) -> auto& { return c.scenario.gust_off_s; }));
    n.push_back(number("gust_v_scale", [](auto& c) -> auto& { return c.scenario.gust_v_scale; }));
    n.push_back(Field{"axis", [](const Config& c) { return std::string(1, c.scenario.step_axis); },
                      [](Config& c, std::string_view t) {
                          const auto s = trim(t);
                          if (s != "x" && s != "y") throw ParseError("axis: '" + s + "' (expected x|y)");
                          c.scenario.step_axis = s[0];
                      }});
    n.push_back(number("step_v_ref", [](auto& c) -> auto& { return c.scenario.step_v_ref; }));
    n.push_back(number("step_distance", [](auto& c) -> auto& { return c.scenario.step_distance; }));
    n.push_back(number("step_out_s", [](auto& c) -> auto& { return c.scenario.step_out_s; }));
    n.push_back(number("step_back_s", [](auto& c) -> auto& { return c.scenario.step_back_s; }));
    n.push_back(number("transition_pitch_deg",
                       [](auto& c) -> auto& { return c.scenario.transition_pitch_deg; }));
    n.push_back(number("transition_ramp_s", [](auto& c) -> auto& { return c.scenario.transition_ramp_s; }));
    n.push_back(number("transition_hold_s", [](auto& c) -> auto& { return c.scenario.transition_hold_s; }));
    n.push_back(number("transition_max_throttle",
                       [](auto& c) -> auto& { return c.scenario.transition_max_throttle; }));
    n.push_back(boolean("wing_model", [](auto& c) -> auto& { return c.scenario.wing_model; }));
    out.push_back(std::move(sc));

    return out;
}

const std::vector<Section>& sections() {
    static const std::vector<Section> s = build_sections();
    return s;
}

const Section* find_section(std::string_view name) {
    for (const auto& s : sections()) {
        if (s.name == name) return &s;
    }
    return nullptr;
}

const Field* find_field(const Section& s, std::string_view key) {
    for (const auto& f : s.fields) {
        if (f.key == key) return &f;
    }
    return nullptr;
}

void require(bool ok, const char* field, const char* what) {
    if (!ok) throw ValidationError(field, what);
}

}  // namespace

void set_config_value(Config& c, std::string_view section, std::string_view key,
                      std::string_view value) {
    const Section* s = find_section(section);
    if (s == nullptr) {
        throw ValidationError(std::string(section), "unknown section");
    }
    const Field* f = find_field(*s, key);
    if (f == nullptr) {
        throw ValidationError(std::string(section) + "." + std::string(key), "unknown key");
    }
    f->set(c, value);
}

Config load_config(std::string_view text) {
    namespace pt = boost::property_tree;
    pt::ptree tree;
    try {
        std::istringstream in{std::string(text)};
        pt::ini_parser::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ParseError(std::string("config: ") + e.message() + " (line " +
                         std::to_string(e.line()) + ")");
    }

    Config c;
    bool have_k_lat = false;
    bool have_k_efx = false;
    for (const auto& [name, node] : tree) {
        if (node.empty()) {
            throw ParseError("config: key '" + name + "' outside any [section]");
        }
        const Section* s = find_section(name);
        if (s == nullptr) throw ValidationError(name, "unknown section");
        for (const auto& [key, leaf] : node) {
            if (!leaf.empty()) throw ParseError("config: nested key '" + key + "'");
            const Field* f = find_field(*s, key);
            if (f == nullptr) throw ValidationError(name + "." + key, "unknown key");
            f->set(c, leaf.data());
            if (name == "vehicle" && key == "k_lat") have_k_lat = true;
            if (name == "vehicle" && key == "k_efx") have_k_efx = true;
        }
    }
    // Derived defaults follow the loaded gains unless set explicitly.
    if (!have_k_lat) c.vehicle.k_lat = 2.0 * c.vehicle.k_swash;
    if (!have_k_efx) c.vehicle.k_efx = c.vehicle.k_ep / c.vehicle.elevon_arm;

    validate(c);
    return c;
}

Config load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return load_config(buf.str());
}

std::string serialize_config(const Config& c) {
    std::string out;
    for (const auto& s : sections()) {
        if (!out.empty()) out += '\n';
        out += '[' + s.name + "]\n";
        for (const auto& f : s.fields) {
            out += f.key + " = " + f.get(c) + '\n';
        }
    }
    return out;
}

void validate(const Config& c) {
    validate(c.vehicle);
    validate(c.control);
    require(std::isfinite(c.sim.dt_s) && c.sim.dt_s > 0.0, "dt_s", "must be > 0");
    require(std::isfinite(c.sim.duration_s) && c.sim.duration_s >= 0.0, "duration_s", "must be >= 0");
    require(std::isfinite(c.sim.trace_rate_hz) && c.sim.trace_rate_hz > 0.0, "trace_rate_hz",
            "must be > 0");
    require(c.sim.noise_pos >= 0.0 && c.sim.noise_vel >= 0.0 && c.sim.noise_att >= 0.0 &&
                c.sim.noise_gyro >= 0.0,
            "noise_*", "must be >= 0");
    require(c.wind.fan_v_ref >= 0.0, "fan_v_ref", "must be >= 0");
    require(c.wind.fan_d_ref > 0.0, "fan_d_ref", "must be > 0");
    require(c.wind.fan_jet_radius > 0.0, "fan_jet_radius", "must be > 0");
    require(c.wind.fan_decay_exp >= 0.0, "fan_decay_exp", "must be >= 0");
    require(c.wind.fan_spinup_s >= 0.0, "fan_spinup_s", "must be >= 0");
    const auto& s = c.scenario;
    require(s.pedestal_height > 0.0, "pedestal_height", "must be > 0");
    require(s.takeoff_ramp_s > 0.0, "takeoff_ramp_s", "must be > 0");
    require(s.takeoff_thrust_ratio > 0.0, "takeoff_thrust_ratio", "must be > 0");
    require(s.takeoff_climb_s > 0.0, "takeoff_climb_s", "must be > 0");
    require(s.hover_height > 0.0, "hover_height", "must be > 0");
    require(s.fig8_period > 0.0 && s.fig8_edge_period > 0.0, "fig8_period", "must be > 0");
    require(s.fig8_edge_period >= s.fig8_period && s.fig8_edge_period <= 2.0 * s.fig8_period,
            "fig8_edge_period", "must lie in [fig8_period, 2 * fig8_period]");
    require(s.gust_off_s >= s.gust_on_s, "gust_off_s", "must be >= gust_on_s");
    require(s.gust_v_scale >= 0.0, "gust_v_scale", "must be >= 0");
    require(s.step_v_ref >= 0.0, "step_v_ref", "must be >= 0");
    require(s.step_back_s > s.step_out_s, "step_back_s", "must be > step_out_s");
    require(s.transition_ramp_s > 0.0, "transition_ramp_s", "must be > 0");
    require(s.transition_hold_s > 0.0, "transition_hold_s", "must be > 0");
    require(s.transition_max_throttle > 0.0 && s.transition_max_throttle <= 1.0,
            "transition_max_throttle", "must lie in (0, 1]");
}

}  // namespace tailsim
