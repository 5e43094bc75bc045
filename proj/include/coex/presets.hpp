#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "coex/scenario.hpp"

namespace coex {

// The reproduction scenarios:
//   case_a  Wi-Fi/Wi-Fi: saturated-data AP plus the beaconing AP
//   case_b  fixed 5 ms ON / 5 ms OFF
//   case_c  fixed 20 ms ON / 20 ms OFF
//   case_d  fixed 20 ms ON / 1 ms OFF
//   case_e  fixed 20 ms ON / 5 ms OFF
//   case_f  CSAT between 80% and 50% duty, starting high
//   case_g  CSAT between 95% and 50% duty, starting high
enum class Preset { CaseA, CaseB, CaseC, CaseD, CaseE, CaseF, CaseG };

const char* to_string(Preset p);
std::optional<Preset> preset_from_name(std::string_view name);
std::vector<Preset> all_presets();

// Resolves a preset for one seed. Pure: the same (preset, seed) always yields
// the same scenario. The Wi-Fi AP start phase is seed-derived so batches
// sample the beacon-versus-duty-cycle alignment uniformly.
Scenario make_preset(Preset p, std::uint64_t seed);

// Beacon-only, immediate-access scenario used to validate the analytic drop
// model by Monte Carlo: no probes, no backoff, seed-randomized phase.
Scenario make_drop_validation_scenario(const DutyCycle& duty, std::uint64_t seed,
                                       std::uint64_t duration_us);

}  // namespace coex
