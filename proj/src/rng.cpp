#include "coex/rng.hpp"

#include <cmath>

namespace coex {

namespace {

// splitmix64 finalizer
std::uint64_t mix(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_stream_seed(std::uint64_t master_seed, std::uint64_t stream_id) {
    return mix(mix(master_seed) ^ (stream_id * 0xD6E8FEB86659FD93ULL + 1));
}

std::uint64_t RngStream::uniform_below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound + 1) % bound;
    std::uint64_t v;
    do {
        v = eng_();
    } while (v > limit);
    return v % bound;
}

double RngStream::uniform01() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
}

double RngStream::exponential(double mean) {
    double u;
    do {
        u = uniform01();
    } while (u <= 0.0);
    return -mean * std::log(u);
}

}  // namespace coex
