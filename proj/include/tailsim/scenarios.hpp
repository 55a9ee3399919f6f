#pragma once

// Scripted flight experiments and their error reports.
//
// Every scenario builds its own initial state, wind field and setpoint
// schedule from a Config; SEA/CEA comparisons run the same Config with only
// [sim] variant changed. Absolute error magnitudes depend on unpublished
// airframe constants, so the reports carry the flown values as reference
// strings next to the simulated numbers.

#include "tailsim/allocation.hpp"
#include "tailsim/config.hpp"
#include "tailsim/metrics.hpp"
#include "tailsim/simulation.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace tailsim {

/// One row of trace.csv.
struct TraceSample {
    double t = 0.0;
    Vec3 position = Vec3::Zero();
    Vec3 velocity = Vec3::Zero();
    Quat attitude = Quat::Identity();
    EulerAngles euler;
    Vec3 omega = Vec3::Zero();
    Vec3 position_d = Vec3::Zero();
    EulerAngles euler_d;
    ActuatorCommand command;
    bool sat_any = false;
    Vec3 wind = Vec3::Zero();
};

/// Column order of trace.csv.
extern const char* const kTraceHeader;

struct ScenarioReport {
    std::string scenario;
    Variant variant = Variant::Sea;
    std::vector<TraceSample> trace;            // decimated to trace_rate_hz
    std::map<std::string, ErrorStats> stats;   // per channel
    std::map<std::string, double> metrics;     // headline numbers
    std::map<std::string, std::string> flown;  // flown reference values, for display
    double servo_duty = 0.0;
    double any_duty = 0.0;
};

/// Names accepted by `run_scenario`.
const std::vector<std::string>& scenario_names();

ScenarioReport run_takeoff(const Config& cfg);
ScenarioReport run_fig8(const Config& cfg);
ScenarioReport run_hover_gust(const Config& cfg);
ScenarioReport run_step_disturbance(const Config& cfg);
ScenarioReport run_transition(const Config& cfg);

/// Dispatches on cfg.scenario.name (takeoff, fig8, hover_gust, step, step_x,
/// step_y, transition). Throws ConfigError on unknown names.
ScenarioReport run_scenario(const Config& cfg);

/// Figure-of-eight reference: position, velocity and acceleration at time t.
struct TrajectoryPoint {
    Vec3 position = Vec3::Zero();
    Vec3 velocity = Vec3::Zero();
    Vec3 acceleration = Vec3::Zero();
};

class Fig8Reference {
public:
    explicit Fig8Reference(const ScenarioSettings& s);
    TrajectoryPoint at(double t) const;
    double duration() const { return total_; }
    /// End times of the four cycles.
    std::array<double, 4> cycle_ends() const;

private:
    double phase(double t, double* rate, double* rate_dot) const;
    double length_, width_, period_, edge_;
    double total_;
    double height_;
};

/// Heading reference from a velocity, held while the horizontal speed is
/// below a threshold.
class YawFromVelocity {
public:
    YawFromVelocity(double hold_speed, double initial_yaw)
        : hold_speed_(hold_speed), yaw_(initial_yaw) {}
    double update(const Vec3& velocity);

private:
    double hold_speed_;
    double yaw_;
};

/// Trace rows as CSV text (header included), fixed column order.
std::string trace_csv(const ScenarioReport& r);

/// Stats and metrics as flat key=value text.
std::string stats_text(const ScenarioReport& r);

}  // namespace tailsim
