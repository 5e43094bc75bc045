#pragma once

#include "coex/params.hpp"
#include "coex/scenario.hpp"
#include "coex/trace.hpp"

namespace coex {

struct LteOccupancy {
    bool on = false;
    std::uint64_t next_edge_in_us = 0;
};

// Position of instant t within the periodic ON/OFF waveform whose first ON
// begins at lte_start. Cycle boundaries belong to the new ON period.
LteOccupancy lte_occupancy(const DutyCycle& dc, SimTime t, SimTime lte_start = 0);

// Channel occupancy per unicast/broadcast frame kind: preamble + payload at
// the base rate, plus SIFS + ACK for acknowledged kinds.
std::uint64_t frame_occupancy_us(const PhyParams& p, PacketKind kind, std::uint32_t bytes);

// Runs one scenario to its horizon and returns the complete event log.
// Identical (scenario, seed) pairs produce identical logs, byte for byte.
// Throws std::invalid_argument for a bad configuration, before any event.
TraceLog run(const Scenario& s);

}  // namespace coex
