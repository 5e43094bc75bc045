#include "coex/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "coex/config_io.hpp"
#include "coex/engine.hpp"

namespace coex {

namespace {

std::string frac6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

void write_cdf_csv(const std::string& path, const std::vector<std::uint64_t>& samples) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("runner: cannot write '" + path + "'");
    out << "value_us,cum_frac\n";
    if (samples.empty()) return;
    for (const auto& [value, frac] : empirical_cdf(samples)) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.9f", frac);
        out << value << ',' << buf << '\n';
    }
}

}  // namespace

std::vector<SeedRun> run_batch(const std::function<Scenario(std::uint64_t)>& scenario_for_seed,
                               const std::string& name, const std::vector<std::uint64_t>& seeds,
                               const BatchOptions& opt) {
    const bool to_disk = !opt.out_dir.empty();
    if (to_disk) std::filesystem::create_directories(opt.out_dir);

    std::vector<SeedRun> results(seeds.size());
    std::vector<std::string> traces(to_disk && opt.write_traces ? seeds.size() : 0);

    unsigned jobs = opt.jobs != 0 ? opt.jobs : std::thread::hardware_concurrency();
    if (jobs == 0) jobs = 1;
    jobs = std::min<unsigned>(jobs, static_cast<unsigned>(seeds.size()));

    std::atomic<std::size_t> cursor{0};
    std::exception_ptr first_error;
    std::mutex error_mu;

    auto worker = [&]() {
        while (true) {
            const std::size_t i = cursor.fetch_add(1);
            if (i >= seeds.size()) return;
            try {
                Scenario s = scenario_for_seed(seeds[i]);
                TraceLog log = run(s);
                results[i].seed = seeds[i];
                results[i].metrics = summarize(log, opt.k);
                if (!traces.empty()) traces[i] = log.to_csv();
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mu);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };

    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(jobs);
        for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (first_error) std::rethrow_exception(first_error);

    if (to_disk) {
        const std::filesystem::path dir(opt.out_dir);
        if (opt.write_traces) {
            for (std::size_t i = 0; i < seeds.size(); ++i) {
                const std::string fname =
                    "trace_" + name + "_seed" + std::to_string(seeds[i]) + ".csv";
                std::ofstream out(dir / fname, std::ios::binary);
                if (!out) throw std::runtime_error("runner: cannot write trace " + fname);
                out << traces[i];
            }
        }
        write_scenario_file(scenario_for_seed(seeds.empty() ? 0 : seeds.front()),
                            (dir / ("scenario_" + name + ".json")).string());

        std::vector<std::uint64_t> tx_pool;
        std::vector<std::uint64_t> rx_pool;
        for (const SeedRun& r : results) {
            tx_pool.insert(tx_pool.end(), r.metrics.tx_interval_samples_us.begin(),
                           r.metrics.tx_interval_samples_us.end());
            rx_pool.insert(rx_pool.end(), r.metrics.rx_interval_samples_us.begin(),
                           r.metrics.rx_interval_samples_us.end());
        }
        write_cdf_csv((dir / ("cdf_tx_" + name + ".csv")).string(), tx_pool);
        write_cdf_csv((dir / ("cdf_rx_" + name + ".csv")).string(), rx_pool);
        append_summary_csv((dir / "summary.csv").string(), name, results);
    }
    return results;
}

std::string summary_row(const std::string& scenario, const SeedRun& run) {
    const RunMetrics& m = run.metrics;
    std::ostringstream os;
    os << scenario << ',' << run.seed << ',' << m.beacons_expected << ',' << m.beacons_transmitted
       << ',' << m.beacons_received << ',' << m.beacons_suppressed << ','
       << frac6(m.reception_frac) << ',';
    if (m.delay_to_k_us) os << *m.delay_to_k_us;
    os << ',';
    if (m.scale_back_us) os << *m.scale_back_us;
    return os.str();
}

void append_summary_csv(const std::string& path, const std::string& scenario,
                        const std::vector<SeedRun>& runs) {
    const bool fresh = !std::filesystem::exists(path);
    std::ofstream out(path, std::ios::binary | std::ios::app);
    if (!out) throw std::runtime_error("runner: cannot write '" + path + "'");
    if (fresh) {
        out << "scenario,seed,expected,transmitted,received,suppressed,reception_frac,"
               "delay_to_k_us,scale_back_us\n";
    }
    for (const SeedRun& r : runs) out << summary_row(scenario, r) << '\n';
}

std::vector<SummaryRow> read_summary_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("runner: missing summary '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("runner: empty summary '" + path + "'");
    std::vector<SummaryRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::size_t start = 0;
        while (true) {
            std::size_t comma = line.find(',', start);
            f.push_back(line.substr(start, comma == std::string::npos ? comma : comma - start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (f.size() != 9) throw std::runtime_error("runner: bad summary row '" + line + "'");
        SummaryRow r;
        r.scenario = f[0];
        r.seed = std::stoull(f[1]);
        r.expected = std::stoull(f[2]);
        r.transmitted = std::stoull(f[3]);
        r.received = std::stoull(f[4]);
        r.suppressed = std::stoull(f[5]);
        r.reception_frac = std::stod(f[6]);
        if (!f[7].empty()) {
            r.has_delay = true;
            r.delay_to_k_us = std::stoull(f[7]);
        }
        if (!f[8].empty()) {
            r.has_scale_back = true;
            r.scale_back_us = std::stoull(f[8]);
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace coex
