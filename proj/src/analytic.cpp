#include "coex/analytic.hpp"

#include <cmath>
#include <stdexcept>

namespace coex {

double slot_generation_probability(const DutyCycle& dc, const PhyParams& p) {
    return static_cast<double>(p.slot_us) / static_cast<double>(dc.cycle_us());
}

double beacon_drop_probability(const DutyCycle& dc, const PhyParams& p) {
    double pd = slot_generation_probability(dc, p) * static_cast<double>(beacon_airtime_slots(p));
    if (pd >= 1.0) {
        throw std::domain_error("beacon_drop_probability: model out of range (p_d >= 1)");
    }
    return pd;
}

double success_interval_pmf(double p_d, std::uint64_t i) {
    if (i == 0) throw std::domain_error("success_interval_pmf: interval index starts at 1");
    if (p_d < 0.0 || p_d >= 1.0) {
        throw std::domain_error("success_interval_pmf: p_d must be in [0, 1)");
    }
    return (1.0 - p_d) * std::pow(p_d, static_cast<double>(i - 1));
}

double expected_success_interval_us(double p_d, double t_d_us) {
    if (p_d < 0.0 || p_d >= 1.0) {
        throw std::domain_error("expected_success_interval_us: p_d must be in [0, 1)");
    }
    return t_d_us / (1.0 - p_d);
}

AnalyticResult expected_delay_k_beacons(const DutyCycle& dc, const PhyParams& p, unsigned k,
                                        std::uint64_t t_d_us) {
    if (k == 0) throw std::domain_error("expected_delay_k_beacons: k must be >= 1");
    AnalyticResult r;
    r.k = k;
    r.t_d_us = t_d_us;
    r.p_t = slot_generation_probability(dc, p);
    r.p_d = beacon_drop_probability(dc, p);
    r.e_interval_us = expected_success_interval_us(r.p_d, static_cast<double>(t_d_us));
    r.delay_us = k * r.e_interval_us;
    return r;
}

}  // namespace coex
