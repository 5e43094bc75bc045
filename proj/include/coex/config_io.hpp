#pragma once

#include <string>

#include "coex/scenario.hpp"

namespace coex {

// JSON mirror of Scenario, one key per field, for config files and the
// provenance echo written next to every batch. Round-trips bit-exactly.
std::string scenario_to_json(const Scenario& s);
Scenario scenario_from_json(const std::string& text);  // throws std::runtime_error

Scenario load_scenario_file(const std::string& path);
void write_scenario_file(const Scenario& s, const std::string& path);

}  // namespace coex
