#pragma once

// Command implementations behind the `tailsim` executable. Exit codes:
//   0 success, 1 selftest failure, 2 configuration error, 3 simulation fault.

#include "tailsim/config.hpp"

#include <iosfwd>
#include <optional>
#include <string>

namespace tailsim {

inline constexpr const char* kToolVersion = "tailsim 1.0.0";

inline constexpr int kExitOk = 0;
inline constexpr int kExitSelftestFailed = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitSimulationFault = 3;

struct RunManifest {
    std::string config_path;  // empty: defaults
    std::string output_dir = ".";
    std::string scenario;     // empty: [scenario] name
    std::optional<std::string> variant;
    std::optional<std::string> fidelity;
    std::optional<std::uint64_t> seed;
};

/// Resolves a manifest into a Config (file, then command-line overrides).
/// Throws ParseError / ValidationError / ConfigError.
Config resolve_config(const RunManifest& m);

int cmd_run(const RunManifest& m, std::ostream& out, std::ostream& err);
int cmd_compare(const RunManifest& m, std::ostream& out, std::ostream& err);
int cmd_selftest(const RunManifest& m, bool json, std::ostream& out, std::ostream& err);
int cmd_print_config(const RunManifest& m, std::ostream& out, std::ostream& err);

/// Paired SEA/CEA table with the flown reference values where known.
std::string compare_table(const struct ScenarioReport& sea, const struct ScenarioReport& cea);

}  // namespace tailsim
