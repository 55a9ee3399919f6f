// Acceptance run: one PASS/FAIL line per criterion, then a summary.
//
// Usage: acceptance_test [--known-failures 5,7]
// Criteria listed as known failures are still evaluated and reported; they
// only stop counting toward the exit status.

#include "tailsim/config.hpp"
#include "tailsim/scenarios.hpp"
#include "tailsim/selftest.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace tailsim;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Timed {
    ScenarioReport report;
    double seconds = 0.0;
};

double scenario_seconds = 0.0;
double selftest_seconds = 0.0;

Timed fly(const std::string& name, Variant v, const std::function<void(Config&)>& tweak = {}) {
    Config c;
    c.scenario.name = name;
    c.sim.variant = v;
    if (tweak) tweak(c);
    validate(c);
    const auto t0 = Clock::now();
    Timed t{run_scenario(c), 0.0};
    t.seconds = since(t0);
    scenario_seconds += t.seconds;
    return t;
}

double m(const Timed& t, const std::string& key) { return t.report.metrics.at(key); }

Outcome from_property(const PropertyResult& r, double budget_s = 0.0) {
    selftest_seconds += r.seconds;
    Outcome o{r.passed, r.detail};
    if (budget_s > 0.0) {
        o.detail += fmt::format("; {:.3f} s (limit {:.0f} s)", r.seconds, budget_s);
        o.pass = o.pass && r.seconds < budget_s;
    }
    return o;
}

Outcome criterion_takeoff() {
    auto tk = [](Variant v, Platform pl, TakeoffControl ctl) {
        return fly("takeoff", v, [&](Config& c) {
            c.scenario.platform = pl;
            c.scenario.takeoff_control = ctl;
        });
    };
    const Timed cg = tk(Variant::Cea, Platform::Ground, TakeoffControl::Attitude);
    const Timed cp = tk(Variant::Cea, Platform::Pedestal, TakeoffControl::Attitude);
    const Timed sg = tk(Variant::Sea, Platform::Ground, TakeoffControl::Attitude);
    const Timed ps = tk(Variant::Sea, Platform::Ground, TakeoffControl::Position);
    const Timed pc = tk(Variant::Cea, Platform::Ground, TakeoffControl::Position);

    const double a = m(cg, "max_pitch_err_deg"), b = m(cp, "max_pitch_err_deg"),
                 c = m(sg, "max_pitch_err_deg");
    const bool order = a > b && b > c && a >= 2.0 * c;
    const double xs = m(ps, "max_x_err_m"), xc = m(pc, "max_x_err_m");
    const bool pos = xs <= 0.5 * xc;
    double slowest = 0.0;
    for (const Timed* t : {&cg, &cp, &sg, &ps, &pc}) slowest = std::max(slowest, t->seconds);
    const bool fast = slowest < 30.0;
    return {order && pos && fast,
            fmt::format("pitch CEA-ground {:.2f} / CEA-pedestal {:.2f} / SEA-ground {:.2f} deg [{}]; "
                        "position-mode max|x| SEA {:.3f} m vs CEA {:.3f} m [{}]; slowest run {:.2f} s",
                        a, b, c, order ? "ok" : "fail", xs, xc, pos ? "ok" : "fail", slowest)};
}

Outcome criterion_fig8() {
    const Timed s = fly("fig8", Variant::Sea), c = fly("fig8", Variant::Cea);
    const double ys = m(s, "median_yaw_err_deg"), yc = m(c, "median_yaw_err_deg");
    const double ps = m(s, "median_pos_err_cm"), pc = m(c, "median_pos_err_cm");
    return {ys < yc && ps <= pc,
            fmt::format("median yaw SEA {:.2f} vs CEA {:.2f} deg; median position SEA {:.2f} vs CEA "
                        "{:.2f} cm",
                        ys, yc, ps, pc)};
}

Outcome criterion_gust() {
    const Timed s = fly("hover_gust", Variant::Sea), c = fly("hover_gust", Variant::Cea);
    const double xs = m(s, "max_x_err_cm"), xc = m(c, "max_x_err_cm");
    const double qs = m(s, "max_pitch_err_deg"), qc = m(c, "max_pitch_err_deg");
    return {xs < xc && qs < 10.0 && qc < 10.0,
            fmt::format("max|x| SEA {:.2f} vs CEA {:.2f} cm; max pitch SEA {:.2f} / CEA {:.2f} deg", xs,
                        xc, qs, qc)};
}

Outcome criterion_step() {
    bool ok = true;
    std::string detail;
    for (const char* name : {"step_x", "step_y"}) {
        const Timed s = fly(name, Variant::Sea), c = fly(name, Variant::Cea);
        const double ys = m(s, "max_yaw_err_return_deg"), yc = m(c, "max_yaw_err_return_deg");
        const double ds = s.report.servo_duty, dc = c.report.servo_duty;
        const bool pass = yc >= 1.5 * ys && dc > ds;
        ok = ok && pass;
        if (!detail.empty()) detail += "; ";
        detail += fmt::format("{}: return yaw SEA {:.2f} vs CEA {:.2f} deg, servo duty SEA {:.3f} vs "
                              "CEA {:.3f}",
                              name, ys, yc, ds, dc);
    }
    return {ok, detail};
}

Outcome criterion_transition() {
    const Timed s = fly("transition", Variant::Sea);
    const double ov = m(s, "pitch_overshoot_deg"), st = m(s, "steady_pitch_err_deg"),
                 v = m(s, "final_airspeed_ms");
    return {ov < 5.0 && st < 3.0 && v >= 8.0,
            fmt::format("overshoot {:.2f} deg, steady error {:.2f} deg, final airspeed {:.2f} m/s", ov,
                        st, v)};
}

Outcome criterion_hygiene(const Config& cfg) {
    const Outcome e = from_property(check_energy_drift(cfg));
    const Outcome q = from_property(check_quaternion_norm(cfg));
    const Outcome d = from_property(check_trace_determinism(cfg));
    return {e.pass && q.pass && d.pass, e.detail + "; " + q.detail + "; " + d.detail};
}

std::set<int> parse_list(const std::string& s) {
    std::set<int> out;
    std::stringstream in(s);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        if (!tok.empty()) out.insert(std::atoi(tok.c_str()));
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    std::set<int> known;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--known-failures" && i + 1 < argc) known = parse_list(argv[++i]);
    }

    const Config cfg;
    std::vector<std::pair<int, Outcome>> results;
    auto report = [&](int id, const Outcome& o) {
        results.emplace_back(id, o);
        fmt::print("{} {:>2}  {}\n", o.pass ? "PASS" : "FAIL", id, o.detail);
        std::fflush(stdout);
    };

    report(1, from_property(check_mixer_round_trip(cfg, 1000), 1.0));
    report(2, from_property(check_cyclic_identities(cfg)));
    {
        const Outcome a = from_property(check_cross_fidelity(cfg));
        const Outcome b = from_property(check_gamma0_calibration(cfg));
        report(3, {a.pass && b.pass, a.detail + "; " + b.detail});
    }
    report(4, from_property(check_reachable_sets(cfg)));
    report(5, criterion_takeoff());
    report(6, criterion_fig8());
    report(7, criterion_gust());
    report(8, criterion_step());
    report(9, criterion_transition());
    report(10, criterion_hygiene(cfg));
    report(11, {selftest_seconds < 60.0 && scenario_seconds < 600.0,
                fmt::format("selftest checks {:.2f} s (limit 60 s), scenario suite {:.2f} s (limit 600 s)",
                            selftest_seconds, scenario_seconds)});

    int passed = 0;
    std::vector<int> unexpected, recovered;
    for (const auto& [id, o] : results) {
        if (o.pass) {
            ++passed;
            if (known.count(id)) recovered.push_back(id);
        } else if (!known.count(id)) {
            unexpected.push_back(id);
        }
    }
    fmt::print("\n{}/{} criteria pass\n", passed, results.size());
    for (int id : recovered) fmt::print("note: criterion {} is listed as a known failure but passed\n", id);
    if (!known.empty()) {
        std::string list;
        for (int id : known) list += (list.empty() ? "" : ",") + std::to_string(id);
        fmt::print("known failures (documented): {}\n", list);
    }
    for (int id : unexpected) fmt::print("unexpected failure: criterion {}\n", id);
    return unexpected.empty() ? 0 : 1;
}
