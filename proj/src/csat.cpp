#include "coex/csat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace coex {

CsatState csat_initial_state(const CsatConfig& cfg) {
    CsatState st;
    st.current_duty = cfg.start_high ? cfg.high_duty : cfg.low_duty;
    st.ed_samples_dbm.reserve(cfg.n_windows);
    return st;
}

double measure_window(const std::vector<double>& delivered_beacon_dbm, double noise_floor_dbm) {
    if (delivered_beacon_dbm.empty()) return noise_floor_dbm;
    return *std::max_element(delivered_beacon_dbm.begin(), delivered_beacon_dbm.end());
}

void csat_observe(CsatState& st, const CsatConfig& cfg, double window_dbm) {
    if (st.windows_observed >= cfg.n_windows) {
        throw std::logic_error("csat_observe: round already complete");
    }
    st.ed_samples_dbm.push_back(window_dbm);
    if (window_dbm >= cfg.ed_threshold_dbm) {
        ++st.count1;
    } else {
        ++st.count2;
    }
    ++st.windows_observed;
}

double mean_detected_dbm(const std::vector<double>& detected_dbm) {
    if (detected_dbm.empty()) return -std::numeric_limits<double>::infinity();
    double acc_mw = 0.0;
    for (double dbm : detected_dbm) acc_mw += std::pow(10.0, dbm / 10.0);
    return 10.0 * std::log10(acc_mw / static_cast<double>(detected_dbm.size()));
}

CsatVerdict csat_decide(CsatState& st, const CsatConfig& cfg) {
    if (st.windows_observed < cfg.n_windows) {
        throw std::logic_error("csat_decide: round incomplete");
    }
    std::vector<double> detected;
    detected.reserve(st.count1);
    for (double dbm : st.ed_samples_dbm) {
        if (dbm >= cfg.ed_threshold_dbm) detected.push_back(dbm);
    }

    CsatVerdict v;
    v.to_low = st.count1 >= cfg.k_required &&
               mean_detected_dbm(detected) >= cfg.ed_threshold_dbm;
    v.next_duty = v.to_low ? cfg.low_duty : cfg.high_duty;

    // Fresh round. Resetting both counters keeps count1 + count2 ==
    // windows_observed; carrying one across rounds would let detections
    // accumulate and void the per-round threshold.
    st.current_duty = v.next_duty;
    st.count1 = 0;
    st.count2 = 0;
    st.windows_observed = 0;
    st.ed_samples_dbm.clear();
    return v;
}

}  // namespace coex
