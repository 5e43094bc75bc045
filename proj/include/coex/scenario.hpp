#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coex/params.hpp"

namespace coex {

// Fixed node identities. Client nodes are allocated from kFirstClientNode up.
inline constexpr std::uint32_t kNodeLteBs = 0;   // LTE-U base station (cell A in LTE cases)
inline constexpr std::uint32_t kNodeApB = 1;     // coexistence AP, beacons + responses
inline constexpr std::uint32_t kNodeApA = 2;     // experiment AP, saturated data
inline constexpr std::uint32_t kNodePeerA = 3;   // station served by the experiment AP
inline constexpr std::uint32_t kFirstClientNode = 4;

std::string node_name(std::uint32_t node);

enum class LteMode : std::uint8_t { Off, Fixed, Csat };

// How Wi-Fi transmitters access the channel.
//   Csma          - DIFS, immediate access for fresh packets on an idle
//                   channel, uniform backoff from [0, cw_min-1] after any
//                   deferral; the normal mode.
//   CsmaNoBackoff - as Csma but deferred packets draw zero backoff slots;
//                   deterministic, used by the per-phase oracle.
//   Immediate     - transmit the instant the channel is free, no DIFS or
//                   backoff; matches the analytic model's assumptions and is
//                   the mode of the drop-probability validation batches.
enum class AccessPolicy : std::uint8_t { Csma, CsmaNoBackoff, Immediate };

const char* to_string(LteMode m);
const char* to_string(AccessPolicy a);

// Duty-cycle controller configuration: observe n_windows OFF windows per
// round; switch to low_duty when at least k_required windows contained a
// detectable beacon and the linear-domain mean of the detected windows'
// powers clears the threshold, otherwise to high_duty.
struct CsatConfig {
    unsigned n_windows = 30;
    unsigned k_required = 5;
    double ed_threshold_dbm = -70.0;
    DutyCycle high_duty{20000, 5000};
    DutyCycle low_duty{20000, 20000};
    bool start_high = false;       // scale-back studies begin at the high duty
    std::uint64_t hw_delay_us = 0; // extra decision-to-application latency

    void validate() const;
};

// Scanning/association client behavior. The numbers are plumbing the model
// needs but the protocol does not pin down; they are echoed with every run.
struct ClientBehavior {
    double assoc_fraction = 0.5;            // scanners that continue to auth/assoc
    std::uint64_t response_timeout_us = 30000;
    unsigned max_probe_attempts = 3;        // probe retries on response timeout
    unsigned max_request_attempts = 3;      // timeout-driven sends per exchange stage
    unsigned max_restarts = 1;              // scan restarts after retry exhaustion
    unsigned initial_scan_clients = 4;      // clients that scan as soon as the AP appears
    std::uint64_t initial_scan_window_us = 300000;
    bool initial_clients_associate = true;  // the startup burst performs full association
};

struct LinkPower {
    std::uint32_t tx = 0;
    std::uint32_t rx = 0;
    double dbm = 0.0;
};

struct Scenario {
    std::string name = "custom";
    PhyParams phy{};

    LteMode lte_mode = LteMode::Off;
    DutyCycle fixed_duty{20000, 20000};  // used when lte_mode == Fixed
    CsatConfig csat{};                   // used when lte_mode == Csat
    std::uint64_t lte_start_us = 0;

    bool wifi_ap_enabled = true;
    std::uint64_t wifi_start_us = 0;

    bool second_ap_enabled = false;      // saturated-data CSMA node
    std::uint32_t second_ap_frame_bytes = 1500;

    double probe_rate_per_s = 0.0;       // Poisson client scan arrivals
    ClientBehavior client{};

    AccessPolicy access = AccessPolicy::Csma;
    unsigned retry_limit = 7;            // unicast retransmissions before giving up

    double default_link_dbm = -55.0;     // received power on unlisted links
    std::vector<LinkPower> link_overrides;
    double noise_floor_dbm = -95.0;
    double wifi_cs_threshold_dbm = -82.0;

    std::uint64_t seed = 0;
    std::uint64_t duration_us = 300000000;

    double rx_power(std::uint32_t tx, std::uint32_t rx) const;

    // Throws std::invalid_argument; called by the engine before any event.
    void validate() const;
};

}  // namespace coex
