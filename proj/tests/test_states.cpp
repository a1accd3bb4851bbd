#include <doctest.h>

#include <cmath>

#include "coinflip/states.hpp"

using namespace coinflip;

TEST_CASE("single-qubit preparations and their overlaps") {
    const double th = 0.8, c = std::cos(th / 2), s = std::sin(th / 2);
    CHECK(qubit_state(th, 0, 0) == Vec{c, s});
    CHECK(qubit_state(th, 0, 1) == Vec{-s, c});
    CHECK(qubit_state(th, 1, 0) == Vec{c, -s});
    CHECK(qubit_state(th, 1, 1) == Vec{s, c});
    for (int b = 0; b < 2; ++b) {
        CHECK(std::abs(vnorm(qubit_state(th, b, 0)) - 1.0) <= 1e-15);
        CHECK(std::abs(inner(qubit_state(th, b, 0), qubit_state(th, b, 1))) <= 1e-15);
    }
    // cross-basis overlaps: cos(theta) for equal outcomes, +-sin(theta) otherwise
    CHECK(std::abs(inner(qubit_state(th, 0, 0), qubit_state(th, 1, 0)) - std::cos(th)) <= 1e-15);
    CHECK(std::abs(std::abs(inner(qubit_state(th, 0, 0), qubit_state(th, 1, 1))) - std::sin(th)) <=
          1e-15);
}

TEST_CASE("register preparations follow the MSB-first labeling") {
    const double th = 0.6;
    const Vec direct = prep_state(2, th, {0b10u, 0b01u});
    const Vec expect = kron_vec(qubit_state(th, 1, 0), qubit_state(th, 0, 1));
    REQUIRE(direct.size() == 4);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(direct[i] - expect[i]) <= 1e-15);
    CHECK(std::abs(vnorm(prep_state(3, th, {0b101u, 0b011u})) - 1.0) <= 1e-12);

    CHECK(bit_at(0b100u, 0, 3) == 1);
    CHECK(bit_at(0b100u, 2, 3) == 0);
    CHECK(parity(0b1011u) == 1);
    CHECK(parity(0u) == 0);
}

TEST_CASE("mismatch detection fires only on matched-basis outcome flips") {
    // matched bases everywhere, one outcome flipped: caught
    CHECK(abort_triggered(2, 0b10u, 0b00u, 0b10u, 0b01u));
    // the flip sits on the qubit whose bases differ: passes
    CHECK_FALSE(abort_triggered(2, 0b10u, 0b00u, 0b00u, 0b10u));
    // flip on the matched qubit: caught
    CHECK(abort_triggered(2, 0b10u, 0b00u, 0b00u, 0b01u));
    // full agreement
    CHECK_FALSE(abort_triggered(2, 0b11u, 0b01u, 0b11u, 0b01u));
    CHECK_FALSE(abort_triggered(1, 0u, 0u, 1u, 1u));
}

TEST_CASE("parameter validation") {
    CHECK_NOTHROW(ProtocolParams::checked(2, 0.5));
    CHECK_THROWS_AS(ProtocolParams::checked(0, 0.5), SizingError);
    CHECK_THROWS_AS(ProtocolParams::checked(1, 0.0), UsageError);
    CHECK_THROWS_AS(ProtocolParams::checked(1, std::acos(-1.0) / 2), UsageError);
    CHECK_THROWS_AS(ProtocolParams::checked(1, -0.2), UsageError);
    CHECK_THROWS_AS(ProtocolParams::checked(99, 0.5), SizingError);
}

TEST_CASE("unit step conventions and angle conversions") {
    CHECK(unit_step(2.0, AtZero::Zero) == 1.0);
    CHECK(unit_step(-2.0, AtZero::Zero) == 0.0);
    CHECK(unit_step(0.0, AtZero::Zero) == 0.0);
    CHECK(unit_step(0.0, AtZero::One) == 1.0);
    CHECK(deg2rad(180.0) == doctest::Approx(std::acos(-1.0)).epsilon(1e-15));
    CHECK(rad2deg(deg2rad(26.92)) == doctest::Approx(26.92).epsilon(1e-13));
}
