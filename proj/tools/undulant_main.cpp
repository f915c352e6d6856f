// undulant command line: run, validate, selftest.
// Exit codes: 0 all checks passed, 1 a threshold check failed, 2 config or numeric error.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "undulant/config.hpp"
#include "undulant/harness.hpp"
#include "undulant/selftest.hpp"

namespace {

void print_checks(const std::vector<undulant::Check>& checks) {
    for (const auto& c : checks) {
        std::printf("%s %-32s value=%.6g %s %.6g", c.passed ? "PASS" : "FAIL", c.name.c_str(), c.value,
                    c.relation.c_str(), c.threshold);
        if (!c.detail.empty()) std::printf("  (%s)", c.detail.c_str());
        std::printf("\n");
    }
}

int cmd_run(const std::string& path, const std::string& out_dir, bool quiet) {
    const auto cfg = undulant::load_config(path);
    undulant::RunOptions opts;
    if (!out_dir.empty()) opts.output_dir = out_dir;
    if (!quiet) opts.log = [](const std::string& m) { std::cerr << "undulant: " << m << '\n'; };
    const auto t0 = std::chrono::steady_clock::now();
    const auto report = undulant::run(cfg, opts);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    print_checks(report.checks);
    if (!quiet) {
        for (const auto& f : report.files) std::cerr << "undulant: wrote " << f.string() << '\n';
        std::cerr << "undulant: finished in " << secs << " s\n";
    }
    return undulant::exit_code(report);
}

int cmd_validate(const std::string& path) {
    const auto cfg = undulant::load_config(path);
    const auto diags = undulant::validate(cfg);
    for (const auto& d : diags) std::printf("%s\n", undulant::format(d).c_str());
    if (undulant::has_errors(diags)) return 2;
    std::printf("ok: %s\n", std::string(undulant::to_string(cfg.scenario)).c_str());
    return 0;
}

int cmd_selftest(std::uint64_t seed) {
    undulant::OperatorSuiteOptions opts;
    opts.seed = seed;
    const auto checks = undulant::run_operator_suite(opts);
    print_checks(checks);
    return undulant::all_passed(checks) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"FitzHugh-Nagumo on undulated cylinders: simulation and verification harness"};
    app.require_subcommand(1);

    std::string run_path, run_out, validate_path;
    bool quiet = false;
    std::uint64_t seed = 1;

    auto* run = app.add_subcommand("run", "Run the scenario described by a config file");
    run->add_option("config", run_path, "Path to a JSON config")->required();
    run->add_option("-o,--output", run_out, "Output directory (overrides output_dir)");
    run->add_flag("-q,--quiet", quiet, "Only print the check lines");

    auto* val = app.add_subcommand("validate", "Check a config file without running it");
    val->add_option("config", validate_path, "Path to a JSON config")->required();

    auto* self = app.add_subcommand("selftest", "Run the operator invariant suite");
    self->add_option("--seed", seed, "Seed of the random profiles and fields");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*run) return cmd_run(run_path, run_out, quiet);
        if (*val) return cmd_validate(validate_path);
        if (*self) return cmd_selftest(seed);
    } catch (const undulant::Error& e) {
        std::cerr << "undulant: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "undulant: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
