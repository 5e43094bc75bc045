#include "coex/params.hpp"

#include <cmath>
#include <stdexcept>

namespace coex {

namespace {

bool is_power_of_two(std::uint32_t v) { return v != 0 && (v & (v - 1)) == 0; }

// Ceiling that treats values within one part in 1e9 of an integer as exact,
// so rationals like 45/9 that doubles represent exactly do not round up twice.
std::uint64_t ceil_us(double x) {
    double f = std::floor(x);
    if (x - f <= 1e-9) return static_cast<std::uint64_t>(f);
    return static_cast<std::uint64_t>(f) + 1;
}

}  // namespace

void PhyParams::validate() const {
    if (difs_us == 0 || sifs_us == 0 || slot_us == 0 || preamble_us == 0 || ack_us == 0 ||
        beacon_interval_us == 0) {
        throw std::invalid_argument("PhyParams: all durations must be strictly positive");
    }
    if (!(data_rate_mbps > 0.0)) {
        throw std::invalid_argument("PhyParams: data rate must be positive");
    }
    if (cw_min < 2 || !is_power_of_two(cw_min)) {
        throw std::invalid_argument("PhyParams: cw_min must be >= 2 and a power of two");
    }
}

void DutyCycle::validate() const {
    if (t_on_us == 0 || t_on_us > kMaxOnUs) {
        throw std::invalid_argument("DutyCycle: ON duration must be in (0, 20 ms]");
    }
    if (t_off_us < kMinOffUs) {
        throw std::invalid_argument("DutyCycle: OFF duration must be >= 1 ms");
    }
}

const char* to_string(PacketKind k) {
    switch (k) {
        case PacketKind::Beacon: return "beacon";
        case PacketKind::ProbeRequest: return "probe_req";
        case PacketKind::ProbeResponse: return "probe_resp";
        case PacketKind::AuthRequest: return "auth_req";
        case PacketKind::AuthResponse: return "auth_resp";
        case PacketKind::AssocRequest: return "assoc_req";
        case PacketKind::AssocResponse: return "assoc_resp";
        case PacketKind::Ack: return "ack";
        case PacketKind::Data: return "data";
    }
    return "?";
}

bool requires_ack(PacketKind k) {
    switch (k) {
        case PacketKind::Beacon:
        case PacketKind::ProbeRequest:
        case PacketKind::Ack:
            return false;
        default:
            return true;
    }
}

std::uint32_t default_size_bytes(PacketKind k) {
    switch (k) {
        case PacketKind::Beacon: return 305;
        case PacketKind::ProbeRequest: return 120;
        case PacketKind::ProbeResponse: return 300;
        case PacketKind::AuthRequest: return 60;
        case PacketKind::AuthResponse: return 60;
        case PacketKind::AssocRequest: return 120;
        case PacketKind::AssocResponse: return 120;
        case PacketKind::Ack: return 14;
        case PacketKind::Data: return 1500;
    }
    return 0;
}

std::uint64_t beacon_airtime_us(const PhyParams& p) {
    double t = p.preamble_us + p.beacon_bytes * 8.0 / p.data_rate_mbps;
    return ceil_us(t);
}

std::uint64_t beacon_airtime_slots(const PhyParams& p) {
    double t = static_cast<double>(beacon_airtime_us(p)) / p.slot_us;
    return ceil_us(t);
}

std::uint64_t unicast_airtime_us(const PhyParams& p, std::uint32_t payload_bytes) {
    double t = p.preamble_us + payload_bytes * 8.0 / p.data_rate_mbps + p.sifs_us + p.ack_us;
    return ceil_us(t);
}

}  // namespace coex
