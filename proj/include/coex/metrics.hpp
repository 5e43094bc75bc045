#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "coex/trace.hpp"

namespace coex {

// Everything a run reports, computed in one pass over its trace.
struct RunMetrics {
    std::uint64_t beacons_expected = 0;
    std::uint64_t beacons_transmitted = 0;
    std::uint64_t beacons_received = 0;
    std::uint64_t beacons_suppressed = 0;
    std::uint64_t beacons_pending = 0;  // due but unresolved at the horizon
    double reception_frac = 0.0;

    std::vector<std::uint64_t> tx_interval_samples_us;
    std::vector<std::uint64_t> rx_interval_samples_us;

    // Beacon-period positions (relative to the first attempt) of beacons the
    // LTE-U BS energy-detected; the first attempt itself is the reference and
    // is not listed.
    std::vector<std::uint64_t> detection_due_offsets_us;

    std::optional<std::uint64_t> delay_to_k_us;
    std::optional<std::uint64_t> scale_back_us;
    unsigned k = 0;
};

// Single deterministic pass. Throws std::runtime_error on out-of-order
// timestamps. delay-to-k spans k detected beacons measured from the first
// transmission attempt on the beacon-period lattice, so its expectation is
// k * T_d / (1 - p_d) in the fixed-duty, beacon-only regime.
RunMetrics summarize(const TraceLog& trace, unsigned k = 5);

// Right-continuous step CDF over the samples, sorted ascending; the last
// cumulative fraction is exactly 1. Throws std::invalid_argument when empty.
std::vector<std::pair<std::uint64_t, double>> empirical_cdf(std::vector<std::uint64_t> samples);

// Delay to the k-th detection, recomputed from a trace; nullopt when the
// trace holds fewer than k detections past the reference attempt.
std::optional<std::uint64_t> delay_to_k(const TraceLog& trace, unsigned k);

}  // namespace coex
