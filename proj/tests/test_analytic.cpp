#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "coex/analytic.hpp"

using namespace coex;

namespace {
const PhyParams kPhy{};
}

TEST_CASE("per-slot generation probability") {
    CHECK(slot_generation_probability(DutyCycle{5000, 5000}, kPhy) == 9.0 / 10000.0);
    CHECK(slot_generation_probability(DutyCycle{20000, 1000}, kPhy) ==
          doctest::Approx(4.2857e-4).epsilon(1e-4));

    PhyParams degenerate = kPhy;
    degenerate.slot_us = 400;
    CHECK(slot_generation_probability(DutyCycle{200, 200}, degenerate) == 1.0);
}

TEST_CASE("drop probability over the named duty cycles") {
    CHECK(beacon_drop_probability(DutyCycle{20000, 1000}, kPhy) ==
          doctest::Approx(0.020571).epsilon(1e-4));
    CHECK(beacon_drop_probability(DutyCycle{20000, 5000}, kPhy) == doctest::Approx(0.017280));
    CHECK(beacon_drop_probability(DutyCycle{5000, 5000}, kPhy) == doctest::Approx(0.043200));
}

TEST_CASE("drop probability rejects out-of-range products") {
    // 48 slots of 9 us against a 400 us cycle pushes the product past 1.
    CHECK_THROWS_AS(beacon_drop_probability(DutyCycle{200, 200}, kPhy), std::domain_error);
}

TEST_CASE("drop probability depends only on the cycle length") {
    const double a = beacon_drop_probability(DutyCycle{15000, 5000}, kPhy);
    const double b = beacon_drop_probability(DutyCycle{10000, 10000}, kPhy);
    const double c = beacon_drop_probability(DutyCycle{5000, 15000}, kPhy);
    CHECK(a == b);
    CHECK(b == c);
}

TEST_CASE("drop probability strictly decreases with cycle length") {
    double prev = 1.0;
    for (std::uint64_t off = 1000; off <= 20000; off += 1000) {
        const double pd = beacon_drop_probability(DutyCycle{20000, off}, kPhy);
        CHECK(pd < prev);
        prev = pd;
    }
}

TEST_CASE("success interval pmf") {
    CHECK(success_interval_pmf(0.0, 1) == 1.0);
    CHECK(success_interval_pmf(0.5, 3) == doctest::Approx(0.125));
    CHECK(success_interval_pmf(0.0432, 2) == doctest::Approx(0.041334).epsilon(1e-4));
    CHECK_THROWS_AS(success_interval_pmf(0.5, 0), std::domain_error);
    CHECK_THROWS_AS(success_interval_pmf(1.0, 1), std::domain_error);
}

TEST_CASE("pmf sums to one") {
    const double p_d = beacon_drop_probability(DutyCycle{5000, 5000}, kPhy);
    double sum = 0.0;
    double tail = 1.0;
    std::uint64_t i = 1;
    while (tail >= 1e-12) {
        sum += success_interval_pmf(p_d, i);
        tail *= p_d;
        ++i;
    }
    CHECK(std::fabs(sum - 1.0) < 1e-9);
}

TEST_CASE("expected interval between detections") {
    CHECK(expected_success_interval_us(0.0, 102400.0) == 102400.0);
    CHECK(expected_success_interval_us(0.5, 102400.0) == 204800.0);
    CHECK(expected_success_interval_us(0.020571428571428571, 102400.0) ==
          doctest::Approx(104551.0).epsilon(1e-5));
    CHECK_THROWS_AS(expected_success_interval_us(1.0, 102400.0), std::domain_error);
}

TEST_CASE("expected interval agrees with the truncated series") {
    const double p_d = beacon_drop_probability(DutyCycle{20000, 1000}, kPhy);
    const double t_d = 102400.0;
    double series = 0.0;
    for (std::uint64_t i = 1; i <= 40; ++i) {
        series += static_cast<double>(i) * t_d * success_interval_pmf(p_d, i);
    }
    const double closed = expected_success_interval_us(p_d, t_d);
    CHECK(std::fabs(series - closed) / closed < 1e-6);
}

TEST_CASE("expected delay for five detected beacons") {
    const AnalyticResult r1 = expected_delay_k_beacons(DutyCycle{20000, 1000}, kPhy, 5);
    CHECK(r1.delay_us == doctest::Approx(522753.792).epsilon(1e-7));
    CHECK(std::fabs(r1.delay_us / 1000.0 - 522.76) < 0.05);

    const AnalyticResult r2 = expected_delay_k_beacons(DutyCycle{20000, 5000}, kPhy, 5);
    CHECK(r2.delay_us == doctest::Approx(521002.931).epsilon(1e-7));
    CHECK(std::fabs(r2.delay_us / 1000.0 - 521.0) < 0.05);

    const AnalyticResult r3 = expected_delay_k_beacons(DutyCycle{5000, 5000}, kPhy, 5);
    CHECK(r3.delay_us == doctest::Approx(535117.057).epsilon(1e-7));
}

TEST_CASE("analytic result invariants") {
    for (std::uint64_t off : {1000ULL, 5000ULL, 20000ULL}) {
        for (unsigned k : {1u, 3u, 5u, 9u}) {
            const AnalyticResult r = expected_delay_k_beacons(DutyCycle{20000, off}, kPhy, k);
            CHECK(r.p_t >= 0.0);
            CHECK(r.p_t <= r.p_d);
            CHECK(r.p_d < 1.0);
            CHECK(r.e_interval_us >= static_cast<double>(r.t_d_us));
            CHECK(r.delay_us == doctest::Approx(k * r.e_interval_us).epsilon(1e-12));
        }
    }
    CHECK_THROWS_AS(expected_delay_k_beacons(DutyCycle{20000, 1000}, kPhy, 0), std::domain_error);
}

TEST_CASE("delay is linear in k") {
    const AnalyticResult a = expected_delay_k_beacons(DutyCycle{20000, 1000}, kPhy, 3);
    const AnalyticResult b = expected_delay_k_beacons(DutyCycle{20000, 1000}, kPhy, 6);
    CHECK(b.delay_us == doctest::Approx(2.0 * a.delay_us).epsilon(1e-12));
}
