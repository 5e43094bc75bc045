#include "coex/scenario.hpp"

#include <cmath>
#include <stdexcept>

namespace coex {

std::string node_name(std::uint32_t node) {
    switch (node) {
        case kNodeLteBs: return "lte_bs";
        case kNodeApB: return "ap_b";
        case kNodeApA: return "ap_a";
        case kNodePeerA: return "peer_a";
        default: return "client_" + std::to_string(node - kFirstClientNode);
    }
}

const char* to_string(LteMode m) {
    switch (m) {
        case LteMode::Off: return "off";
        case LteMode::Fixed: return "fixed";
        case LteMode::Csat: return "csat";
    }
    return "?";
}

const char* to_string(AccessPolicy a) {
    switch (a) {
        case AccessPolicy::Csma: return "csma";
        case AccessPolicy::CsmaNoBackoff: return "csma_no_backoff";
        case AccessPolicy::Immediate: return "immediate";
    }
    return "?";
}

void CsatConfig::validate() const {
    if (k_required < 1 || n_windows < k_required) {
        throw std::invalid_argument("CsatConfig: need n_windows >= k_required >= 1");
    }
    high_duty.validate();
    low_duty.validate();
    if (!(high_duty.fraction() > low_duty.fraction())) {
        throw std::invalid_argument("CsatConfig: high duty fraction must exceed low duty fraction");
    }
    if (!std::isfinite(ed_threshold_dbm)) {
        throw std::invalid_argument("CsatConfig: ED threshold must be finite");
    }
}

double Scenario::rx_power(std::uint32_t tx, std::uint32_t rx) const {
    for (const auto& l : link_overrides) {
        if (l.tx == tx && l.rx == rx) return l.dbm;
    }
    return default_link_dbm;
}

void Scenario::validate() const {
    phy.validate();
    switch (lte_mode) {
        case LteMode::Off: break;
        case LteMode::Fixed: fixed_duty.validate(); break;
        case LteMode::Csat: csat.validate(); break;
    }
    if (!wifi_ap_enabled && !second_ap_enabled && lte_mode == LteMode::Off) {
        throw std::invalid_argument("Scenario: no transmitter enabled");
    }
    if (probe_rate_per_s < 0.0 || !std::isfinite(probe_rate_per_s)) {
        throw std::invalid_argument("Scenario: probe rate must be finite and >= 0");
    }
    if (probe_rate_per_s > 0.0 && !wifi_ap_enabled) {
        throw std::invalid_argument("Scenario: probe traffic requires the Wi-Fi AP");
    }
    if (duration_us == 0) {
        throw std::invalid_argument("Scenario: duration must be positive");
    }
    if (!std::isfinite(default_link_dbm) || !std::isfinite(noise_floor_dbm) ||
        !std::isfinite(wifi_cs_threshold_dbm)) {
        throw std::invalid_argument("Scenario: powers must be finite");
    }
    for (const auto& l : link_overrides) {
        if (!std::isfinite(l.dbm)) {
            throw std::invalid_argument("Scenario: link powers must be finite");
        }
    }
    if (client.assoc_fraction < 0.0 || client.assoc_fraction > 1.0) {
        throw std::invalid_argument("Scenario: assoc_fraction must be in [0, 1]");
    }
    if (retry_limit == 0) {
        throw std::invalid_argument("Scenario: retry limit must be >= 1");
    }
}

}  // namespace coex
