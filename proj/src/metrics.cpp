#include "coex/metrics.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string_view>

namespace coex {

RunMetrics summarize(const TraceLog& trace, unsigned k) {
    RunMetrics m;
    m.k = k;

    SimTime prev_t = 0;
    bool have_first_due = false;
    SimTime first_due = 0;
    std::vector<SimTime> tx_times;
    std::vector<SimTime> rx_times;

    // The AP keeps at most one beacon pending and one in flight; map the
    // detection/outcome rows back to the due instant they belong to.
    std::map<std::uint32_t, SimTime> pending_due;
    std::map<std::uint32_t, SimTime> in_flight_due;

    for (const TraceRow& r : trace.rows) {
        if (r.t_us < prev_t) throw std::runtime_error("summarize: out-of-order trace");
        prev_t = r.t_us;

        const bool beacon_row = r.has_packet && r.packet_kind == PacketKind::Beacon;
        switch (r.event) {
            case TraceEvent::Due:
                if (!beacon_row) break;
                ++m.beacons_expected;
                pending_due[r.node] = r.t_us;
                if (!have_first_due) {
                    have_first_due = true;
                    first_due = r.t_us;
                }
                break;
            case TraceEvent::Suppressed:
                if (beacon_row) ++m.beacons_suppressed;
                break;
            case TraceEvent::TxStart:
                if (!beacon_row) break;
                ++m.beacons_transmitted;
                tx_times.push_back(r.t_us);
                in_flight_due[r.node] = pending_due[r.node];
                break;
            case TraceEvent::TxOutcome:
                if (!beacon_row) break;
                if (r.outcome == to_string(TxOutcome::Delivered)) {
                    ++m.beacons_received;
                    rx_times.push_back(r.t_us);
                }
                break;
            case TraceEvent::Detected: {
                if (!beacon_row) break;
                const SimTime due = in_flight_due[r.node];
                if (have_first_due && due > first_due) {
                    m.detection_due_offsets_us.push_back(due - first_due);
                }
                break;
            }
            case TraceEvent::CsatSwitch:
                if (!m.scale_back_us && have_first_due && r.t_us >= first_due &&
                    std::string_view(r.outcome).substr(0, 6) == "to_low") {
                    m.scale_back_us = r.t_us - first_due;
                }
                break;
            default:
                break;
        }
    }

    m.beacons_pending = m.beacons_expected - m.beacons_transmitted - m.beacons_suppressed;
    m.reception_frac = m.beacons_transmitted == 0
                           ? 0.0
                           : static_cast<double>(m.beacons_received) /
                                 static_cast<double>(m.beacons_transmitted);

    for (std::size_t i = 1; i < tx_times.size(); ++i) {
        m.tx_interval_samples_us.push_back(tx_times[i] - tx_times[i - 1]);
    }
    for (std::size_t i = 1; i < rx_times.size(); ++i) {
        m.rx_interval_samples_us.push_back(rx_times[i] - rx_times[i - 1]);
    }
    if (m.detection_due_offsets_us.size() >= k && k > 0) {
        m.delay_to_k_us = m.detection_due_offsets_us[k - 1];
    }
    return m;
}

std::vector<std::pair<std::uint64_t, double>> empirical_cdf(std::vector<std::uint64_t> samples) {
    if (samples.empty()) throw std::invalid_argument("empirical_cdf: empty sample");
    std::sort(samples.begin(), samples.end());
    std::vector<std::pair<std::uint64_t, double>> cdf;
    const double n = static_cast<double>(samples.size());
    std::size_t i = 0;
    while (i < samples.size()) {
        std::size_t j = i;
        while (j < samples.size() && samples[j] == samples[i]) ++j;
        cdf.emplace_back(samples[i], static_cast<double>(j) / n);
        i = j;
    }
    cdf.back().second = 1.0;
    return cdf;
}

std::optional<std::uint64_t> delay_to_k(const TraceLog& trace, unsigned k) {
    return summarize(trace, k).delay_to_k_us;
}

}  // namespace coex
