#pragma once

#include <iosfwd>
#include <string>

namespace coex {

// Checks the closed-form delay grid against independent arithmetic and prints
// one line per operating point, including the note about the 5 ms/5 ms row.
// Returns true when every row agrees.
bool validate_analytic(std::ostream& os);

// Statistical report over a completed output directory: reads summary.csv and
// the scenario echoes, then prints per-batch checks with measured values and
// tolerances (empirical drop probability vs. the model with 4-sigma binomial
// bounds for beacon-only batches, reception medians, the scale-back rank
// test when both CSAT presets are present). Returns true when every check
// that could run passed. Throws std::runtime_error when the directory holds
// no runs.
bool validate_out_dir(const std::string& out_dir, std::ostream& os);

}  // namespace coex
