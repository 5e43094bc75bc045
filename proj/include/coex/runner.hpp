#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "coex/metrics.hpp"
#include "coex/scenario.hpp"

namespace coex {

struct SeedRun {
    std::uint64_t seed = 0;
    RunMetrics metrics;
};

struct BatchOptions {
    std::string out_dir;       // empty: keep everything in memory
    bool write_traces = true;  // per-seed trace CSVs
    unsigned k = 5;
    unsigned jobs = 0;         // 0: hardware concurrency
};

// Runs one scenario family over a seed batch, fanning seeds out to a worker
// pool. Results come back ordered by seed regardless of scheduling. With an
// out_dir, writes trace_<name>_seed<N>.csv per seed, pooled interval CDFs,
// a scenario echo for provenance, and appends to summary.csv.
std::vector<SeedRun> run_batch(const std::function<Scenario(std::uint64_t)>& scenario_for_seed,
                               const std::string& name, const std::vector<std::uint64_t>& seeds,
                               const BatchOptions& opt);

// Summary CSV helpers (columns:
// scenario,seed,expected,transmitted,received,suppressed,reception_frac,
// delay_to_k_us,scale_back_us).
std::string summary_row(const std::string& scenario, const SeedRun& run);
void append_summary_csv(const std::string& path, const std::string& scenario,
                        const std::vector<SeedRun>& runs);

struct SummaryRow {
    std::string scenario;
    std::uint64_t seed = 0;
    std::uint64_t expected = 0;
    std::uint64_t transmitted = 0;
    std::uint64_t received = 0;
    std::uint64_t suppressed = 0;
    double reception_frac = 0.0;
    bool has_delay = false;
    std::uint64_t delay_to_k_us = 0;
    bool has_scale_back = false;
    std::uint64_t scale_back_us = 0;
};
std::vector<SummaryRow> read_summary_csv(const std::string& path);

}  // namespace coex
