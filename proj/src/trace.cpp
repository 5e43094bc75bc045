#include "coex/trace.hpp"

#include <array>
#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace coex {

const char* to_string(TraceEvent e) {
    switch (e) {
        case TraceEvent::Due: return "due";
        case TraceEvent::Suppressed: return "suppressed";
        case TraceEvent::TxStart: return "tx_start";
        case TraceEvent::TxOutcome: return "outcome";
        case TraceEvent::Detected: return "detected";
        case TraceEvent::SenseWindow: return "sense_window";
        case TraceEvent::CsatSwitch: return "csat_switch";
        case TraceEvent::Arrival: return "arrival";
    }
    return "?";
}

const char* to_string(TxOutcome o) {
    switch (o) {
        case TxOutcome::Delivered: return "delivered";
        case TxOutcome::DroppedOverlapOn: return "dropped_overlap_on";
        case TxOutcome::DroppedCollision: return "dropped_collision";
    }
    return "?";
}

std::string switch_annotation(const DutyCycle& from, bool to_low) {
    std::string s = to_low ? "to_low_from_" : "to_high_from_";
    s += std::to_string(from.t_on_us);
    s += '_';
    s += std::to_string(from.t_off_us);
    return s;
}

namespace {

TraceEvent event_from_string(const std::string& s) {
    static const std::array<TraceEvent, 8> kEvents = {
        TraceEvent::Due,      TraceEvent::Suppressed,  TraceEvent::TxStart,
        TraceEvent::TxOutcome, TraceEvent::Detected,    TraceEvent::SenseWindow,
        TraceEvent::CsatSwitch, TraceEvent::Arrival,
    };
    for (TraceEvent e : kEvents) {
        if (s == to_string(e)) return e;
    }
    throw std::runtime_error("TraceLog: unknown event '" + s + "'");
}

PacketKind kind_from_string(const std::string& s) {
    static const std::array<PacketKind, 9> kKinds = {
        PacketKind::Beacon,      PacketKind::ProbeRequest,  PacketKind::ProbeResponse,
        PacketKind::AuthRequest, PacketKind::AuthResponse,  PacketKind::AssocRequest,
        PacketKind::AssocResponse, PacketKind::Ack,         PacketKind::Data,
    };
    for (PacketKind k : kKinds) {
        if (s == to_string(k)) return k;
    }
    throw std::runtime_error("TraceLog: unknown packet kind '" + s + "'");
}

}  // namespace

void TraceLog::write_csv(std::ostream& os) const {
    os << "t_us,event,node,packet_kind,outcome,duty_on_us,duty_off_us\n";
    for (const TraceRow& r : rows) {
        os << r.t_us << ',' << to_string(r.event) << ',' << r.node << ',';
        if (r.has_packet) os << to_string(r.packet_kind);
        os << ',' << r.outcome << ',' << r.duty_on_us << ',' << r.duty_off_us << '\n';
    }
}

std::string TraceLog::to_csv() const {
    std::ostringstream os;
    write_csv(os);
    return os.str();
}

TraceLog TraceLog::from_csv(std::istream& is) {
    TraceLog log;
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("TraceLog: empty input");
    if (line != "t_us,event,node,packet_kind,outcome,duty_on_us,duty_off_us") {
        throw std::runtime_error("TraceLog: unexpected header");
    }
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::array<std::string, 7> field;
        size_t start = 0;
        for (int i = 0; i < 7; ++i) {
            size_t comma = (i == 6) ? std::string::npos : line.find(',', start);
            field[i] = line.substr(start, comma == std::string::npos ? comma : comma - start);
            if (comma == std::string::npos && i != 6) {
                throw std::runtime_error("TraceLog: short row '" + line + "'");
            }
            start = comma + 1;
        }
        TraceRow r;
        r.t_us = std::stoull(field[0]);
        r.event = event_from_string(field[1]);
        r.node = static_cast<std::uint32_t>(std::stoul(field[2]));
        if (!field[3].empty()) {
            r.has_packet = true;
            r.packet_kind = kind_from_string(field[3]);
        }
        r.outcome = field[4];
        r.duty_on_us = std::stoull(field[5]);
        r.duty_off_us = std::stoull(field[6]);
        log.rows.push_back(std::move(r));
    }
    return log;
}

}  // namespace coex
