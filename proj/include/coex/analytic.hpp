#pragma once

#include <cstdint>

#include "coex/params.hpp"

namespace coex {

// Closed-form model of beacon loss under a periodic LTE-U ON/OFF waveform and
// the expected delay until k beacons are detected at the LTE-U base station.
//
// The model counts any overlap of a beacon airtime with an ON edge as a drop;
// it deliberately ignores probe traffic and backoff (the simulator covers the
// loaded regime).
struct AnalyticResult {
    double p_t = 0.0;           // per-slot generation probability
    double p_d = 0.0;           // beacon drop probability
    double e_interval_us = 0.0; // expected gap between detected beacons
    double delay_us = 0.0;      // expected delay for k detections
    unsigned k = 0;
    std::uint64_t t_d_us = 0;   // beacon period
};

// P(beacon generated in a given slot of the OFF period) = slot / cycle.
double slot_generation_probability(const DutyCycle& dc, const PhyParams& p);

// Drop probability: slot probability times the beacon airtime in slots.
// Throws std::domain_error when the product reaches 1 (cannot happen for
// duty cycles satisfying DutyCycle::validate, but these functions do not
// force validation so the parameter space can be explored).
double beacon_drop_probability(const DutyCycle& dc, const PhyParams& p);

// Geometric pmf of the gap (in beacon periods) between consecutive detected
// beacons: P(gap = i) = (1 - p_d) * p_d^(i-1), i >= 1.
double success_interval_pmf(double p_d, std::uint64_t i);

// Expected gap between detected beacons: t_d / (1 - p_d).
double expected_success_interval_us(double p_d, double t_d_us);

// Composes the pieces above; delay = k * t_d / (1 - p_d).
AnalyticResult expected_delay_k_beacons(const DutyCycle& dc, const PhyParams& p, unsigned k,
                                        std::uint64_t t_d_us = 102400);

}  // namespace coex
