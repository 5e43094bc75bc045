#pragma once

#include <cstdint>
#include <vector>

#include "coex/params.hpp"
#include "coex/scenario.hpp"

namespace coex::testsupport {

struct OracleBeacon {
    std::uint64_t due_us = 0;
    std::uint64_t tx_start_us = 0;
    std::uint64_t tx_end_us = 0;
    bool delivered = false;
};

// Closed-form per-beacon outcomes for one beacon-only AP whose first beacon
// is due at wifi_phase_us, against a fixed LTE-U duty cycle running from
// t = 0. Pure interval arithmetic, no event queue; the deterministic access
// modes (Immediate, CsmaNoBackoff) are supported. Only beacons whose
// transmission completes within the horizon are returned.
std::vector<OracleBeacon> enumerate_beacon_outcomes(const PhyParams& phy, const DutyCycle& duty,
                                                    std::uint64_t wifi_phase_us,
                                                    std::uint64_t horizon_us, AccessPolicy access);

// Count of sensing windows among the first n_windows OFF periods (counted
// from t = 0) that contain a delivered beacon.
unsigned detected_windows_in_round(const PhyParams& phy, const DutyCycle& duty,
                                   std::uint64_t wifi_phase_us, unsigned n_windows,
                                   AccessPolicy access);

}  // namespace coex::testsupport
