#include "tailsim/aero.hpp"

#include <algorithm>
#include <cmath>

namespace tailsim {

double propwash_speed(double rotor_thrust, const VehicleParams& p) {
    if (!(rotor_thrust > 0.0)) return 0.0;
    return std::sqrt(rotor_thrust / (2.0 * p.air_density * p.rotor_disk_area));
}

double hover_propwash_speed(const VehicleParams& p) {
    return propwash_speed(0.5 * p.mass * kGravity, p);
}

double ground_effect_factor(double height, const VehicleParams& p) {
    const double h = std::max(height, 0.0);
    return p.eta_min + (1.0 - p.eta_min) * std::min(1.0, h / p.ground_effect_height);
}

BodyLoads elevon_wrench(const std::array<SurfaceState, 2>& surfaces,
                        const std::array<double, 2>& local_speed, double height,
                        const VehicleParams& p, bool ground_effect) {
    const double v_hover = hover_propwash_speed(p);
    const double eta = ground_effect ? ground_effect_factor(height, p) : 1.0;
    std::array<double, 2> e{};
    for (int j = 0; j < 2; ++j) {
        const double r = local_speed[j] / v_hover;
        e[j] = surfaces[j].delta * r * r * eta;
    }
    BodyLoads out;
    out.torque.z() = p.k_elevon * (e[0] + e[1]);
    out.torque.y() = p.k_ep * (e[0] - e[1]);
    out.force.x() = p.k_efx * (e[0] - e[1]);
    return out;
}

std::vector<Vec3> wing_strip_points(const VehicleParams& p) {
    std::vector<Vec3> pts;
    pts.reserve(p.n_strips);
    const double w = p.wing_span / p.n_strips;
    for (int i = 0; i < p.n_strips; ++i) {
        pts.emplace_back(0.0, -0.5 * p.wing_span + (i + 0.5) * w, p.wing_cp_z);
    }
    return pts;
}

BodyLoads wing_wrench(const WingInputs& in, const VehicleParams& p) {
    const auto pts = wing_strip_points(p);
    const double area = p.wing_area / p.n_strips;
    BodyLoads out;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        Vec3 r = pts[i];
        const Vec3 wind = i < in.strip_wind_body.size() ? in.strip_wind_body[i] : Vec3::Zero();
        Vec3 u = in.velocity_body + in.omega_body.cross(r) - wind;
        u.y() = 0.0; // spanwise flow does not load the plate
        const double v = u.norm();
        if (v < 1e-9) continue;
        const double sa = u.x() / v;
        const double ca = u.z() / v;
        const double q = 0.5 * p.air_density * v * v * area;
        const double c_l = 2.0 * sa * ca;
        const double c_d = 2.0 * sa * sa + p.c_d0;
        const Vec3 drag_dir = -u / v;
        const Vec3 lift_dir(-ca, 0.0, sa);
        const Vec3 f = q * (c_l * lift_dir + c_d * drag_dir);
        // Pressure centre drifts aft as the plate turns broadside to the flow.
        r.z() += p.wing_cp_travel * std::abs(sa);
        out.force += f;
        out.torque += r.cross(f);
    }
    return out;
}

BodyLoads wing_wrench(const Vec3& velocity_body, const Vec3& wind_body, const VehicleParams& p) {
    const std::vector<Vec3> winds(p.n_strips, wind_body);
    return wing_wrench(WingInputs{velocity_body, Vec3::Zero(), winds}, p);
}

}  // namespace tailsim
