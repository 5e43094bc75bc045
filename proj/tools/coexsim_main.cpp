#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "coex/analytic.hpp"
#include "coex/config_io.hpp"
#include "coex/presets.hpp"
#include "coex/runner.hpp"
#include "coex/validate.hpp"

namespace {

using namespace coex;

bool verbose_logging() {
    const char* v = std::getenv("COEXSIM_LOG");
    return v != nullptr && v[0] != '\0';
}

void print_analytic_row(const DutyCycle& duty, unsigned k) {
    const PhyParams phy{};
    const AnalyticResult r = expected_delay_k_beacons(duty, phy, k);
    char buf[200];
    std::snprintf(buf, sizeof(buf), "%llu,%llu,%.9f,%.9f,%.3f,%.3f",
                  static_cast<unsigned long long>(duty.t_on_us),
                  static_cast<unsigned long long>(duty.t_off_us), r.p_t, r.p_d, r.e_interval_us,
                  r.delay_us);
    std::puts(buf);
}

int cmd_run(const std::string& preset_or_empty, const std::string& config_path,
            unsigned seed_count, double duration_s, double probe_rate, bool probe_rate_set,
            const std::string& out_dir, unsigned jobs, bool write_traces) {
    std::vector<std::uint64_t> seeds;
    for (unsigned i = 0; i < seed_count; ++i) seeds.push_back(i);

    std::function<Scenario(std::uint64_t)> make;
    std::string name;
    if (!config_path.empty()) {
        const Scenario base = load_scenario_file(config_path);
        name = base.name;
        make = [base, duration_s, probe_rate, probe_rate_set](std::uint64_t seed) {
            Scenario s = base;
            s.seed = seed;
            if (duration_s > 0.0) s.duration_us = static_cast<std::uint64_t>(duration_s * 1e6);
            if (probe_rate_set) s.probe_rate_per_s = probe_rate;
            return s;
        };
    } else {
        auto preset = preset_from_name(preset_or_empty);
        if (!preset) {
            std::cerr << "unknown preset '" << preset_or_empty << "'\n";
            return 2;
        }
        name = to_string(*preset);
        make = [preset, duration_s, probe_rate, probe_rate_set](std::uint64_t seed) {
            Scenario s = make_preset(*preset, seed);
            if (duration_s > 0.0) s.duration_us = static_cast<std::uint64_t>(duration_s * 1e6);
            if (probe_rate_set) s.probe_rate_per_s = probe_rate;
            return s;
        };
    }

    BatchOptions opt;
    opt.out_dir = out_dir;
    opt.jobs = jobs;
    opt.write_traces = write_traces;
    const std::vector<SeedRun> runs = run_batch(make, name, seeds, opt);

    std::uint64_t received = 0;
    std::uint64_t transmitted = 0;
    for (const SeedRun& r : runs) {
        if (verbose_logging()) {
            std::cerr << name << " seed " << r.seed << ": " << summary_row(name, r) << '\n';
        }
        received += r.metrics.beacons_received;
        transmitted += r.metrics.beacons_transmitted;
    }
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%s: %zu runs, pooled reception %.4f%s", name.c_str(),
                  runs.size(),
                  transmitted ? static_cast<double>(received) / static_cast<double>(transmitted)
                              : 0.0,
                  out_dir.empty() ? "" : (", outputs in " + out_dir).c_str());
    std::puts(buf);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"LTE-U / Wi-Fi coexistence simulator and analytic calculator"};
    app.require_subcommand(1);

    // run ---------------------------------------------------------------
    auto* run_cmd = app.add_subcommand("run", "run a scenario preset or config over a seed batch");
    std::string preset_name;
    std::string config_path;
    unsigned seed_count = 20;
    double duration_s = 0.0;
    double probe_rate = 0.0;
    std::string out_dir;
    unsigned jobs = 0;
    bool no_traces = false;
    run_cmd->add_option("preset", preset_name, "case_a .. case_g");
    auto* config_opt =
        run_cmd->add_option("--config", config_path, "scenario JSON (alternative to a preset)");
    run_cmd->add_option("--seeds", seed_count, "number of seeds, 0..N-1 (default 20)");
    run_cmd->add_option("--duration-s", duration_s, "override run duration in seconds");
    auto* probe_opt =
        run_cmd->add_option("--probe-rate", probe_rate, "override probe arrivals per second");
    run_cmd->add_option("--out", out_dir, "output directory for traces and summary.csv");
    run_cmd->add_option("--jobs", jobs, "worker threads (default: hardware)");
    run_cmd->add_flag("--no-traces", no_traces, "skip per-seed trace files");

    // analytic ------------------------------------------------------------
    auto* an_cmd = app.add_subcommand("analytic", "closed-form drop probability and delay table");
    unsigned k = 5;
    std::uint64_t t_on = 0;
    std::uint64_t t_off = 0;
    std::string grid;
    an_cmd->add_option("--k", k, "number of detected beacons (default 5)");
    an_cmd->add_option("--t-on", t_on, "ON duration in microseconds");
    an_cmd->add_option("--t-off", t_off, "OFF duration in microseconds");
    an_cmd->add_option("--grid", grid, "named grid: table3 (the three reference points)");

    // validate -----------------------------------------------------------
    auto* val_cmd = app.add_subcommand("validate", "check completed runs against the model");
    std::string val_out;
    val_cmd->add_option("--out", val_out, "output directory holding summary.csv")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) {
            if (preset_name.empty() == config_path.empty()) {
                std::cerr << "run: give exactly one of <preset> or --config\n";
                return 2;
            }
            (void)config_opt;
            return cmd_run(preset_name, config_path, seed_count, duration_s, probe_rate,
                           probe_opt->count() > 0, out_dir, jobs, !no_traces);
        }
        if (an_cmd->parsed()) {
            std::puts("t_on_us,t_off_us,p_t,p_d,e_interval_us,delay_us");
            if (!grid.empty()) {
                if (grid != "table3") {
                    std::cerr << "unknown grid '" << grid << "'\n";
                    return 2;
                }
                print_analytic_row(DutyCycle{5000, 5000}, k);
                print_analytic_row(DutyCycle{20000, 1000}, k);
                print_analytic_row(DutyCycle{20000, 5000}, k);
            } else {
                if (t_on == 0 || t_off == 0) {
                    std::cerr << "analytic: give --t-on and --t-off, or --grid table3\n";
                    return 2;
                }
                print_analytic_row(DutyCycle{t_on, t_off}, k);
            }
            return 0;
        }
        if (val_cmd->parsed()) {
            bool ok = validate_analytic(std::cout);
            ok = validate_out_dir(val_out, std::cout) && ok;
            std::puts(ok ? "validate: all checks passed" : "validate: some checks FAILED");
            return ok ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
