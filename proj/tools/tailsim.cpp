#include "tailsim/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    using namespace tailsim;

    CLI::App app{"Tail-sitter SEA/CEA flight simulator"};
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1);

    RunManifest m;
    std::string variant, fidelity;
    std::uint64_t seed = 0;
    bool json = false;

    auto common = [&](CLI::App* sub, bool scenario) {
        sub->add_option("--config", m.config_path, "INI configuration file");
        sub->add_option("--seed", seed, "RNG seed override");
        if (!scenario) return;
        sub->add_option("--scenario", m.scenario, "takeoff, fig8, hover_gust, step, step_x, step_y, transition");
        sub->add_option("--fidelity", fidelity, "averaged or cyclic");
    };

    auto* run = app.add_subcommand("run", "Run one scenario and write trace.csv, stats.txt, manifest.txt");
    common(run, true);
    run->add_option("--out", m.output_dir, "Output directory");
    run->add_option("--variant", variant, "sea or cea");

    auto* compare = app.add_subcommand("compare", "Run SEA and CEA with identical settings");
    common(compare, true);
    compare->add_option("--out", m.output_dir, "Output directory");

    auto* selftest = app.add_subcommand("selftest", "Model property checks");
    common(selftest, false);
    selftest->add_flag("--json", json, "Machine-readable output");

    auto* print = app.add_subcommand("print-config", "Print the fully resolved configuration");
    common(print, true);
    print->add_option("--variant", variant, "sea or cea");

    CLI11_PARSE(app, argc, argv);

    if (!variant.empty()) m.variant = variant;
    if (!fidelity.empty()) m.fidelity = fidelity;
    for (auto* sub : {run, compare, selftest, print}) {
        if (sub->parsed() && sub->count("--seed")) m.seed = seed;
    }

    try {
        if (app.got_subcommand(run)) return cmd_run(m, std::cout, std::cerr);
        if (app.got_subcommand(compare)) return cmd_compare(m, std::cout, std::cerr);
        if (app.got_subcommand(selftest)) return cmd_selftest(m, json, std::cout, std::cerr);
        return cmd_print_config(m, std::cout, std::cerr);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    }
}
