#pragma once

#include <cstdint>
#include <random>

namespace coex {

// Mixes a master seed with a stream id so each consumer of randomness inside
// a run draws from its own decoupled sequence. Keeping streams separate means
// paired scenarios (same seed, different duty cycle) see identical probe
// arrival processes, which is what makes seed-paired comparisons meaningful.
std::uint64_t derive_stream_seed(std::uint64_t master_seed, std::uint64_t stream_id);

// mt19937_64 with variate helpers implemented locally instead of through
// std::*_distribution, whose output is implementation-defined; this keeps
// traces reproducible across standard libraries.
class RngStream {
  public:
    explicit RngStream(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    // Unbiased integer in [0, bound) via rejection on the top of the range.
    std::uint64_t uniform_below(std::uint64_t bound);

    // Uniform double in [0, 1) with 53 random bits.
    double uniform01();

    // Exponential variate with the given mean (inverse transform).
    double exponential(double mean);

  private:
    std::mt19937_64 eng_;
};

}  // namespace coex
