#pragma once

#include "tailsim/config.hpp"

#include <string>
#include <vector>

namespace tailsim {

struct PropertyResult {
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

// Model-level property checks shared by `tailsim selftest` and the
// acceptance suite. Each takes the configuration under test so that
// misconfigured parameters show up as failures.

PropertyResult check_mixer_round_trip(const Config& cfg, int samples = 1000);
PropertyResult check_cyclic_identities(const Config& cfg);
PropertyResult check_cross_fidelity(const Config& cfg);
PropertyResult check_gamma0_calibration(const Config& cfg);
PropertyResult check_reachable_sets(const Config& cfg);
PropertyResult check_energy_drift(const Config& cfg);
PropertyResult check_quaternion_norm(const Config& cfg);
PropertyResult check_trace_determinism(const Config& cfg);

/// Runs every property above in order.
std::vector<PropertyResult> run_selftest(const Config& cfg);

}  // namespace tailsim
