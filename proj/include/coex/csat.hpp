#pragma once

#include <vector>

#include "coex/scenario.hpp"

namespace coex {

// Duty-cycle controller state across one observation round. The LTE-U BS is
// deaf while transmitting; it samples only its OFF windows.
struct CsatState {
    DutyCycle current_duty{};
    unsigned count1 = 0;  // windows at or above the detection threshold
    unsigned count2 = 0;  // windows below it; telemetry only, gates nothing
    unsigned windows_observed = 0;
    std::vector<double> ed_samples_dbm;
};

struct CsatVerdict {
    DutyCycle next_duty{};
    bool to_low = false;
};

CsatState csat_initial_state(const CsatConfig& cfg);

// Energy measurement for one OFF window: the strongest beacon that was
// received intact (no ON-edge or Wi-Fi collision) inside the window, or the
// noise floor when none was. Corrupted frames do not register: the detector
// counts coherent beacon bursts, which is what keeps a 95% duty cycle blind
// while its 1 ms windows are congested.
double measure_window(const std::vector<double>& delivered_beacon_dbm, double noise_floor_dbm);

// Records one window. Throws std::logic_error past n_windows.
void csat_observe(CsatState& st, const CsatConfig& cfg, double window_dbm);

// Linear-domain (milliwatt) mean of the detected windows' powers, in dBm.
double mean_detected_dbm(const std::vector<double>& detected_dbm);

// Round verdict: low duty when count1 >= k_required and the detected windows'
// mean power clears the threshold, high duty otherwise. Resets the round.
// Throws std::logic_error when called before the round completes.
CsatVerdict csat_decide(CsatState& st, const CsatConfig& cfg);

}  // namespace coex
