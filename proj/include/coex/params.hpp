#pragma once

#include <cstdint>

namespace coex {

// All simulation time is integer microseconds. Fractional airtimes round up.
using SimTime = std::uint64_t;

// Regulatory bounds on the LTE-U duty cycle: at most 20 ms ON, at least 1 ms OFF.
inline constexpr std::uint64_t kMaxOnUs = 20000;
inline constexpr std::uint64_t kMinOffUs = 1000;

// Wi-Fi MAC/PHY timing constants. The defaults are the frozen reference set
// used by every preset and pinned by the unit tests: 6 Mbps base rate, 9 us
// slots, 305-byte beacons every 102.4 ms.
struct PhyParams {
    std::uint32_t difs_us = 34;
    std::uint32_t sifs_us = 16;
    std::uint32_t cw_min = 16;  // contention window size in slots; >= 2, power of two
    std::uint32_t slot_us = 9;
    std::uint32_t preamble_us = 20;
    double data_rate_mbps = 6.0;
    std::uint32_t beacon_bytes = 305;
    std::uint32_t ack_us = 72;
    std::uint64_t beacon_interval_us = 102400;

    // Throws std::invalid_argument on a bad parameter set. Note the beacon
    // interval need not be a multiple of the slot time (102400/9 is not
    // integral); nothing may assume otherwise.
    void validate() const;
};

// One LTE-U ON/OFF period. The occupancy waveform is ON for t_on_us then OFF
// for t_off_us, repeating; instant t_on+t_off belongs to the next cycle's ON.
struct DutyCycle {
    std::uint64_t t_on_us = 0;
    std::uint64_t t_off_us = 0;

    std::uint64_t cycle_us() const { return t_on_us + t_off_us; }
    double fraction() const {
        return static_cast<double>(t_on_us) / static_cast<double>(t_on_us + t_off_us);
    }
    void validate() const;

    bool operator==(const DutyCycle&) const = default;
};

enum class PacketKind : std::uint8_t {
    Beacon,
    ProbeRequest,
    ProbeResponse,
    AuthRequest,
    AuthResponse,
    AssocRequest,
    AssocResponse,
    Ack,
    Data,
};

const char* to_string(PacketKind k);

// ACK policy: beacons and probe requests are broadcast management frames,
// ACKs acknowledge; everything else is unicast followed by an ACK.
bool requires_ack(PacketKind k);

// Representative management/data frame sizes; scenarios may override.
std::uint32_t default_size_bytes(PacketKind k);

// Full beacon airtime: preamble plus payload at the base rate, rounded up to
// the next integer microsecond.
std::uint64_t beacon_airtime_us(const PhyParams& p);

// Beacon airtime expressed in backoff slots, rounded up.
std::uint64_t beacon_airtime_slots(const PhyParams& p);

// Full channel occupancy of a unicast exchange: preamble + payload + SIFS +
// ACK, rounded up to the next integer microsecond.
std::uint64_t unicast_airtime_us(const PhyParams& p, std::uint32_t payload_bytes);

}  // namespace coex
