#include <doctest.h>

#include <stdexcept>

#include "coex/params.hpp"

using namespace coex;

TEST_CASE("default timing set matches the reference beacon numbers") {
    PhyParams p;
    p.validate();
    CHECK(beacon_airtime_us(p) == 427);
    CHECK(beacon_airtime_slots(p) == 48);
}

TEST_CASE("beacon airtime edge cases") {
    PhyParams p;
    p.beacon_bytes = 0;
    CHECK(beacon_airtime_us(p) == 20);  // preamble only

    p.beacon_bytes = 600;
    CHECK(beacon_airtime_us(p) == 820);  // 20 + 600*8/6
}

TEST_CASE("airtime slot count rounds up only on fractional slots") {
    PhyParams p;
    p.preamble_us = 20;
    p.beacon_bytes = 75;
    p.data_rate_mbps = 24.0;  // airtime 45 us, exactly 5 slots
    CHECK(beacon_airtime_us(p) == 45);
    CHECK(beacon_airtime_slots(p) == 5);

    p.beacon_bytes = 39;
    p.data_rate_mbps = 12.0;  // airtime 46 us
    CHECK(beacon_airtime_us(p) == 46);
    CHECK(beacon_airtime_slots(p) == 6);
}

TEST_CASE("unicast airtime includes the ACK exchange") {
    PhyParams p;
    CHECK(unicast_airtime_us(p, 0) == 108);    // 20 + 0 + 16 + 72
    CHECK(unicast_airtime_us(p, 305) == 515);  // beacon-sized payload
    CHECK(unicast_airtime_us(p, 150) == 308);
}

TEST_CASE("unicast airtime strictly increases with payload") {
    PhyParams p;
    std::uint64_t prev = unicast_airtime_us(p, 0);
    for (std::uint32_t n = 1; n <= 2000; n += 7) {
        std::uint64_t cur = unicast_airtime_us(p, n);
        CHECK(cur > prev);
        prev = cur;
    }
}

TEST_CASE("duty cycle fractions for the named operating points") {
    CHECK(DutyCycle{20000, 1000}.fraction() == doctest::Approx(20.0 / 21.0).epsilon(1e-12));
    CHECK(DutyCycle{20000, 5000}.fraction() == 0.8);
    CHECK(DutyCycle{20000, 20000}.fraction() == 0.5);
    CHECK(DutyCycle{5000, 5000}.fraction() == 0.5);
}

TEST_CASE("duty cycle bounds") {
    CHECK_NOTHROW(DutyCycle{20000, 1000}.validate());
    CHECK_NOTHROW(DutyCycle{1, 1000}.validate());
    CHECK_THROWS_AS(DutyCycle{20001, 1000}.validate(), std::invalid_argument);
    CHECK_THROWS_AS(DutyCycle{0, 1000}.validate(), std::invalid_argument);
    CHECK_THROWS_AS(DutyCycle{20000, 999}.validate(), std::invalid_argument);
}

TEST_CASE("phy validation rejects bad contention windows and zero durations") {
    PhyParams p;
    p.cw_min = 15;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p.cw_min = 1;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p.cw_min = 2;
    CHECK_NOTHROW(p.validate());

    PhyParams q;
    q.slot_us = 0;
    CHECK_THROWS_AS(q.validate(), std::invalid_argument);
    PhyParams r;
    r.data_rate_mbps = 0.0;
    CHECK_THROWS_AS(r.validate(), std::invalid_argument);
}

TEST_CASE("ack policy per frame kind") {
    CHECK_FALSE(requires_ack(PacketKind::Beacon));
    CHECK_FALSE(requires_ack(PacketKind::ProbeRequest));
    CHECK_FALSE(requires_ack(PacketKind::Ack));
    CHECK(requires_ack(PacketKind::ProbeResponse));
    CHECK(requires_ack(PacketKind::AuthRequest));
    CHECK(requires_ack(PacketKind::AuthResponse));
    CHECK(requires_ack(PacketKind::AssocRequest));
    CHECK(requires_ack(PacketKind::AssocResponse));
    CHECK(requires_ack(PacketKind::Data));
}

TEST_CASE("default management frames fit a 1 ms OFF window with DIFS") {
    PhyParams p;
    for (PacketKind k : {PacketKind::ProbeResponse, PacketKind::AuthRequest,
                         PacketKind::AuthResponse, PacketKind::AssocRequest,
                         PacketKind::AssocResponse}) {
        CHECK(p.difs_us + unicast_airtime_us(p, default_size_bytes(k)) <= 1000);
    }
}
