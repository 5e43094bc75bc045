#include "coex/presets.hpp"

#include "coex/rng.hpp"

namespace coex {

const char* to_string(Preset p) {
    switch (p) {
        case Preset::CaseA: return "case_a";
        case Preset::CaseB: return "case_b";
        case Preset::CaseC: return "case_c";
        case Preset::CaseD: return "case_d";
        case Preset::CaseE: return "case_e";
        case Preset::CaseF: return "case_f";
        case Preset::CaseG: return "case_g";
    }
    return "?";
}

std::optional<Preset> preset_from_name(std::string_view name) {
    for (Preset p : all_presets()) {
        if (name == to_string(p)) return p;
    }
    return std::nullopt;
}

std::vector<Preset> all_presets() {
    return {Preset::CaseA, Preset::CaseB, Preset::CaseC, Preset::CaseD,
            Preset::CaseE, Preset::CaseF, Preset::CaseG};
}

namespace {

// Seed-derived start phase keeps every batch sampling beacon/duty alignment
// uniformly instead of locking to one lattice.
std::uint64_t phase_offset(std::uint64_t seed, std::uint64_t range_us) {
    RngStream rng(derive_stream_seed(seed, 3));
    return rng.uniform_below(range_us);
}

}  // namespace

Scenario make_preset(Preset p, std::uint64_t seed) {
    Scenario s;
    s.name = to_string(p);
    s.seed = seed;
    s.duration_us = 300000000;  // five minutes
    s.probe_rate_per_s = 5.0;
    s.wifi_ap_enabled = true;
    s.wifi_start_us = 1000000 + phase_offset(seed, s.phy.beacon_interval_us);

    switch (p) {
        case Preset::CaseA:
            s.lte_mode = LteMode::Off;
            s.second_ap_enabled = true;
            break;
        case Preset::CaseB:
            s.lte_mode = LteMode::Fixed;
            s.fixed_duty = DutyCycle{5000, 5000};
            break;
        case Preset::CaseC:
            s.lte_mode = LteMode::Fixed;
            s.fixed_duty = DutyCycle{20000, 20000};
            break;
        case Preset::CaseD:
            s.lte_mode = LteMode::Fixed;
            s.fixed_duty = DutyCycle{20000, 1000};
            break;
        case Preset::CaseE:
            s.lte_mode = LteMode::Fixed;
            s.fixed_duty = DutyCycle{20000, 5000};
            break;
        case Preset::CaseF:
        case Preset::CaseG:
            s.lte_mode = LteMode::Csat;
            s.csat.high_duty = p == Preset::CaseF ? DutyCycle{20000, 5000} : DutyCycle{20000, 1000};
            s.csat.low_duty = DutyCycle{20000, 20000};
            s.csat.start_high = true;
            // The controller has settled at the high duty well before the AP
            // appears; the start phase spans one observation round.
            s.wifi_start_us =
                5000000 + phase_offset(seed, s.csat.n_windows * s.csat.high_duty.cycle_us());
            break;
    }
    return s;
}

Scenario make_drop_validation_scenario(const DutyCycle& duty, std::uint64_t seed,
                                       std::uint64_t duration_us) {
    Scenario s;
    s.name = "drop_validation";
    s.seed = seed;
    s.duration_us = duration_us;
    s.lte_mode = LteMode::Fixed;
    s.fixed_duty = duty;
    s.access = AccessPolicy::Immediate;
    s.probe_rate_per_s = 0.0;
    s.client.initial_scan_clients = 0;
    s.wifi_ap_enabled = true;
    // A random phase within one duty cycle makes each beacon's marginal
    // position uniform, as the analytic model assumes.
    s.wifi_start_us = phase_offset(seed, duty.cycle_us());
    return s;
}

}  // namespace coex
