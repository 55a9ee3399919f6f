#include "tailsim/cli.hpp"

#include "tailsim/errors.hpp"
#include "tailsim/scenarios.hpp"
#include "tailsim/selftest.hpp"

#include <fmt/format.h>
#include <json.hpp>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <ostream>

namespace fs = std::filesystem;

namespace tailsim {
namespace {

void init_logging() {
    static const bool done = [] {
        auto log = spdlog::stderr_logger_st("tailsim");
        log->set_pattern("[%l] %v");
        const char* env = std::getenv("TAILSIM_LOG");
        log->set_level(env ? spdlog::level::from_str(env) : spdlog::level::warn);
        spdlog::set_default_logger(log);
        return true;
    }();
    (void)done;
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    f << text;
    if (!f) throw ConfigError("cannot write " + path.string());
}

fs::path prepare_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw ConfigError("output directory not writable: " + dir.string());
    return dir;
}

std::string manifest_text(const RunManifest& m, const Config& c) {
    std::string s;
    s += fmt::format("tool = {}\n", kToolVersion);
    s += fmt::format("config = {}\n", m.config_path.empty() ? "(defaults)" : m.config_path);
    s += fmt::format("scenario = {}\n", c.scenario.name);
    s += fmt::format("variant = {}\n", to_string(c.sim.variant));
    s += fmt::format("fidelity = {}\n", to_string(c.sim.fidelity));
    s += fmt::format("seed = {}\n", c.sim.seed);
    s += "\n";
    s += serialize_config(c);
    return s;
}

void write_report(const fs::path& dir, const RunManifest& m, const Config& c, const ScenarioReport& r) {
    prepare_dir(dir);
    write_file(dir / "trace.csv", trace_csv(r));
    write_file(dir / "stats.txt", stats_text(r));
    write_file(dir / "manifest.txt", manifest_text(m, c));
}

// Maps library errors onto exit codes; the body does the actual work.
template <class Fn>
int guarded(std::ostream& err, Fn&& fn) {
    init_logging();
    try {
        return fn();
    } catch (const SimulationFault& e) {
        err << "error: " << e.what() << "\n";
        return kExitSimulationFault;
    } catch (const ParseError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const ValidationError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitSimulationFault;
    }
}

std::string fmt_value(double v) { return fmt::format("{:.4g}", v); }

}  // namespace

Config resolve_config(const RunManifest& m) {
    Config c = m.config_path.empty() ? Config{} : load_config_file(m.config_path);
    if (!m.scenario.empty()) c.scenario.name = m.scenario;
    if (m.variant) c.sim.variant = parse_variant(*m.variant);
    if (m.fidelity) c.sim.fidelity = parse_fidelity(*m.fidelity);
    if (m.seed) c.sim.seed = *m.seed;
    const auto& names = scenario_names();
    if (std::find(names.begin(), names.end(), c.scenario.name) == names.end()) {
        throw ConfigError("unknown scenario '" + c.scenario.name + "'");
    }
    validate(c);
    return c;
}

int cmd_run(const RunManifest& m, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const Config c = resolve_config(m);
        const fs::path dir = prepare_dir(m.output_dir);
        spdlog::info("running {} ({}, {})", c.scenario.name, to_string(c.sim.variant),
                     to_string(c.sim.fidelity));
        const ScenarioReport r = run_scenario(c);
        write_report(dir, m, c, r);
        out << stats_text(r);
        return kExitOk;
    });
}

std::string compare_table(const ScenarioReport& sea, const ScenarioReport& cea) {
    std::vector<std::array<std::string, 5>> rows;
    rows.push_back({"metric", "sea", "cea", "cea/sea", "flown"});
    auto add = [&](const std::string& key, double a, double b) {
        const auto it = sea.flown.find(key);
        rows.push_back({key, fmt_value(a), fmt_value(b), a != 0.0 ? fmt_value(b / a) : "-",
                        it != sea.flown.end() ? it->second : ""});
    };
    for (const auto& [key, a] : sea.metrics) {
        const auto it = cea.metrics.find(key);
        if (it != cea.metrics.end()) add(key, a, it->second);
    }
    for (const auto& [key, a] : sea.stats) {
        const auto it = cea.stats.find(key);
        if (it == cea.stats.end()) continue;
        add(key + ".median", a.median, it->second.median);
        add(key + ".max", a.max, it->second.max);
    }

    std::array<std::size_t, 5> width{};
    for (const auto& r : rows) {
        for (std::size_t k = 0; k < r.size(); ++k) width[k] = std::max(width[k], r[k].size());
    }
    std::string s = fmt::format("scenario {}\n", sea.scenario);
    for (const auto& r : rows) {
        std::string line;
        for (std::size_t k = 0; k < r.size(); ++k) {
            line += fmt::format("{:<{}}", r[k], k + 1 < r.size() ? width[k] + 2 : 0);
        }
        while (!line.empty() && line.back() == ' ') line.pop_back();
        s += line + "\n";
    }
    return s;
}

int cmd_compare(const RunManifest& m, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const Config base = resolve_config(m);
        const fs::path dir = prepare_dir(m.output_dir);
        Config sea = base;
        Config cea = base;
        sea.sim.variant = Variant::Sea;
        cea.sim.variant = Variant::Cea;
        spdlog::info("comparing {} under identical gains", base.scenario.name);
        auto cea_future = std::async(std::launch::async, [&cea] { return run_scenario(cea); });
        const ScenarioReport rs = run_scenario(sea);
        const ScenarioReport rc = cea_future.get();
        write_report(dir / "sea", m, sea, rs);
        write_report(dir / "cea", m, cea, rc);
        const std::string table = compare_table(rs, rc);
        write_file(dir / "compare.txt", table);
        out << table;
        return kExitOk;
    });
}

int cmd_selftest(const RunManifest& m, bool json, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        Config c = m.config_path.empty() ? Config{} : load_config_file(m.config_path);
        if (m.seed) c.sim.seed = *m.seed;
        validate(c);
        const auto results = run_selftest(c);
        const bool ok = std::all_of(results.begin(), results.end(),
                                    [](const PropertyResult& r) { return r.passed; });
        if (json) {
            nlohmann::json j;
            j["passed"] = ok;
            j["tool"] = kToolVersion;
            j["checks"] = nlohmann::json::array();
            for (const auto& r : results) {
                j["checks"].push_back(
                    {{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}, {"seconds", r.seconds}});
            }
            out << j.dump(2) << "\n";
        } else {
            for (const auto& r : results) {
                out << fmt::format("{} {:<20} {} ({:.2f} s)\n", r.passed ? "PASS" : "FAIL", r.name,
                                   r.detail, r.seconds);
            }
            out << (ok ? "selftest passed\n" : "selftest FAILED\n");
        }
        return ok ? kExitOk : kExitSelftestFailed;
    });
}

int cmd_print_config(const RunManifest& m, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        out << serialize_config(resolve_config(m));
        return kExitOk;
    });
}

}  // namespace tailsim
