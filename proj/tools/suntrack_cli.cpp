#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "suntrack/harness.hpp"

namespace fs = std::filesystem;
using namespace suntrack;

namespace {

struct Common {
    std::string scenario;
    std::string out = "out";
    std::vector<std::string> overrides;
    std::int64_t seed = -1;
};

void add_common(CLI::App *cmd, Common &c) {
    cmd->add_option("scenario", c.scenario, "Scenario file")->required()->check(CLI::ExistingFile);
    cmd->add_option("--out", c.out, "Output directory");
    cmd->add_option("--seed", c.seed, "Overrides scenario.seed")->check(CLI::NonNegativeNumber);
    cmd->add_option("--set", c.overrides, "Override a dotted key, e.g. --set controller.beta=0.4");
}

ScenarioConfig load(const Common &c) {
    auto overrides = c.overrides;
    if (c.seed >= 0) overrides.push_back("scenario.seed=" + std::to_string(c.seed));
    return load_scenario(c.scenario, overrides);
}

int report_violations(const ScenarioResult &r) {
    if (r.metrics.invariant_violations == 0) return 0;
    std::cerr << r.config.name << ": " << r.metrics.invariant_violations << " invariant violation(s)\n";
    for (const auto &v : r.violations) std::cerr << "  " << v << '\n';
    return 2;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Power-feedback sun tracking simulator"};
    app.require_subcommand(1);

    Common run_opts, compare_opts, scan_opts;
    auto *run = app.add_subcommand("run", "Simulate one day and write CSV artifacts");
    add_common(run, run_opts);
    auto *compare = app.add_subcommand("compare", "Closed loop against open loop baselines");
    add_common(compare, compare_opts);
    auto *scan = app.add_subcommand("scan", "Raster scan of the power surface");
    add_common(scan, scan_opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            const ScenarioConfig cfg = load(run_opts);
            const ScenarioResult r = run_scenario(cfg);
            write_artifacts(r, run_opts.out);
            std::cout << cfg.name << ": efficiency=" << r.metrics.mean_daylight_efficiency
                      << " movements=" << r.metrics.movements << " final_offsets=(" << r.metrics.final_offsets.azimuth
                      << ", " << r.metrics.final_offsets.elevation << ")\n";
            return report_violations(r);
        }
        if (*compare) {
            const ScenarioConfig cfg = load(compare_opts);
            const ComparisonResult r = run_comparison(cfg);
            write_comparison_artifacts(r, compare_opts.out);
            write_comparison_report(std::cout, r);
            int code = report_violations(r.closed_loop);
            for (const auto &o : r.open_loop) code = std::max(code, report_violations(o));
            return code;
        }
        const ScenarioConfig cfg = load(scan_opts);
        const ScanResult r = run_surface_scan(cfg);
        fs::create_directories(scan_opts.out);
        std::ofstream grid(fs::path(scan_opts.out) / "scan.csv", std::ios::binary);
        write_scan_csv(grid, r);
        std::ofstream summary(fs::path(scan_opts.out) / "scan.txt", std::ios::binary);
        write_scan_summary(summary, r);
        write_scan_summary(std::cout, r);
        return 0;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
