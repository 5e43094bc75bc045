#include "beacon_oracle.hpp"

#include <set>
#include <stdexcept>

namespace coex::testsupport {

namespace {

struct Placement {
    std::uint64_t tx_start;
    std::uint64_t tx_end;
    bool delivered;
};

// Resolve one beacon due at d. `on`/`off` describe the periodic waveform; a
// position inside [0, on) is LTE-U ON (instant 0 belongs to ON).
Placement place_beacon(std::uint64_t d, std::uint64_t on, std::uint64_t off, std::uint64_t difs,
                       std::uint64_t airtime, AccessPolicy access) {
    const std::uint64_t cycle = on + off;
    const std::uint64_t pos = d % cycle;
    std::uint64_t s = 0;

    switch (access) {
        case AccessPolicy::Immediate:
            // Busy at the due instant (including an ON that starts exactly
            // now): wait for the ON to end, then transmit at once.
            s = (pos < on) ? d + (on - pos) : d;
            break;
        case AccessPolicy::CsmaNoBackoff: {
            if (pos < on) {
                // Due during ON: defer to the ON end, sense DIFS, zero backoff.
                s = d + (on - pos) + difs;
            } else {
                const std::uint64_t gap_to_on = cycle - pos;
                if (gap_to_on < difs) {
                    // ON begins strictly inside the DIFS window: abort and
                    // defer past that ON period.
                    s = d + gap_to_on + on + difs;
                } else {
                    // DIFS completes (possibly exactly at the ON edge, in
                    // which case the transmission goes out and collides).
                    s = d + difs;
                }
            }
            break;
        }
        case AccessPolicy::Csma:
            throw std::invalid_argument("beacon oracle: random backoff is not enumerable");
    }

    Placement p;
    p.tx_start = s;
    p.tx_end = s + airtime;
    const std::uint64_t pos_s = s % cycle;
    p.delivered = pos_s >= on && pos_s + airtime <= cycle;
    return p;
}

}  // namespace

std::vector<OracleBeacon> enumerate_beacon_outcomes(const PhyParams& phy, const DutyCycle& duty,
                                                    std::uint64_t wifi_phase_us,
                                                    std::uint64_t horizon_us, AccessPolicy access) {
    const std::uint64_t airtime = beacon_airtime_us(phy);
    std::vector<OracleBeacon> out;
    for (std::uint64_t due = wifi_phase_us; due <= horizon_us; due += phy.beacon_interval_us) {
        Placement p = place_beacon(due, duty.t_on_us, duty.t_off_us, phy.difs_us, airtime, access);
        if (p.tx_end > horizon_us) continue;  // unresolved at the horizon
        out.push_back({due, p.tx_start, p.tx_end, p.delivered});
    }
    return out;
}

unsigned detected_windows_in_round(const PhyParams& phy, const DutyCycle& duty,
                                   std::uint64_t wifi_phase_us, unsigned n_windows,
                                   AccessPolicy access) {
    const std::uint64_t airtime = beacon_airtime_us(phy);
    const std::uint64_t cycle = duty.cycle_us();
    const std::uint64_t round_end = static_cast<std::uint64_t>(n_windows) * cycle;
    std::set<std::uint64_t> windows;
    for (std::uint64_t due = wifi_phase_us; due < round_end; due += phy.beacon_interval_us) {
        Placement p = place_beacon(due, duty.t_on_us, duty.t_off_us, phy.difs_us, airtime, access);
        if (!p.delivered) continue;
        const std::uint64_t window_index = p.tx_start / cycle;
        if (window_index < n_windows) windows.insert(window_index);
    }
    return static_cast<unsigned>(windows.size());
}

}  // namespace coex::testsupport
