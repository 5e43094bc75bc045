#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "coex/params.hpp"

namespace coex {

enum class TraceEvent : std::uint8_t {
    Due,         // a beacon became due at the AP
    Suppressed,  // a pending beacon was replaced by a fresher one
    TxStart,     // a transmission attempt went on air
    TxOutcome,   // adjudicated result of a completed transmission
    Detected,    // a beacon was energy-detected at the LTE-U BS
    SenseWindow, // an LTE-U OFF sensing window closed
    CsatSwitch,  // the duty-cycle controller changed operating point
    Arrival,     // a scanning client appeared
};

enum class TxOutcome : std::uint8_t {
    Delivered,
    DroppedOverlapOn,
    DroppedCollision,
};

const char* to_string(TraceEvent e);
const char* to_string(TxOutcome o);

struct TraceRow {
    SimTime t_us = 0;
    TraceEvent event = TraceEvent::Due;
    std::uint32_t node = 0;
    bool has_packet = false;
    PacketKind packet_kind = PacketKind::Beacon;
    std::string outcome;  // outcome / window verdict / switch annotation
    std::uint64_t duty_on_us = 0;   // duty in force at t (0,0 when LTE is off)
    std::uint64_t duty_off_us = 0;
};

// Time-ordered event log of one run. Serializes to CSV with the fixed header
//   t_us,event,node,packet_kind,outcome,duty_on_us,duty_off_us
struct TraceLog {
    std::vector<TraceRow> rows;

    void write_csv(std::ostream& os) const;
    std::string to_csv() const;
    static TraceLog from_csv(std::istream& is);  // throws std::runtime_error on bad input
};

// Outcome-column strings shared by writer, parser and metrics.
inline constexpr const char* kOutcomeWindowDetected = "wifi_detected";
inline constexpr const char* kOutcomeWindowIdle = "idle";
std::string switch_annotation(const DutyCycle& from, bool to_low);

}  // namespace coex
