#include <doctest.h>

#include <cmath>

#include "coinflip/alice.hpp"

using namespace coinflip;

TEST_CASE("closed-form sender bias") {
    CHECK(std::abs(alice_bias_closed(1, 0.7) - (1 + std::cos(0.7)) / 2) <= 1e-15);
    // frozen: (1 + cos^3(20 deg)) / 2
    CHECK(std::abs(alice_bias_closed(3, deg2rad(20.0)) - 0.9148847327947157) <= 1e-12);
}

TEST_CASE("enumerated parity operator matches the closed form") {
    for (int n = 1; n <= 4; ++n)
        for (double th : {0.25, 0.8, 1.3}) {
            CHECK(max_abs_diff(even_parity_enumerated(n, th), even_parity_closed(n, th)) <=
                  tols().entrywise);
            // even and odd projectors partition the identity
            CHECK(max_abs_diff(even_parity_closed(n, th) + odd_parity_closed(n, th),
                               identity(1 << n)) <= 1e-14);
        }
}

TEST_CASE("parity operator spectrum") {
    const int n = 3;
    const double th = deg2rad(30.0);
    const auto ev = eigenvalues(even_parity_enumerated(n, th));
    const double c = std::pow(std::cos(th), n);
    int lo = 0, hi = 0;
    for (double v : ev) {
        if (std::abs(v - (1 - c) / 2) <= 1e-10) ++lo;
        if (std::abs(v - (1 + c) / 2) <= 1e-10) ++hi;
    }
    CHECK(lo == 4);
    CHECK(hi == 4);

    // the N=2 spectrum at 30 degrees: {1 -+ cos^2(30 deg)} / 2 = {0.125, 0.875}, twice each
    const auto e2 = eigenvalues(even_parity_enumerated(2, deg2rad(30.0)));
    CHECK(std::abs(e2[0] - 0.125) <= 1e-12);
    CHECK(std::abs(e2[1] - 0.125) <= 1e-12);
    CHECK(std::abs(e2[2] - 0.875) <= 1e-12);
    CHECK(std::abs(e2[3] - 0.875) <= 1e-12);
}

TEST_CASE("spectral bias agrees with the closed form and yields a witness state") {
    for (int n : {1, 2, 4})
        for (double th : {0.3, 0.9}) {
            const AliceBiasResult r = alice_bias_spectral(n, th);
            CHECK(std::abs(r.p_star - alice_bias_closed(n, th)) <= 1e-9);
            CHECK(std::abs(vnorm(r.optimal_state) - 1.0) <= 1e-9);
            CHECK(std::abs(expectation(r.pi_n, r.optimal_state) - r.p_star) <= 1e-9);
        }
}

TEST_CASE("bias falls with angle and register size") {
    for (int n = 1; n <= 5; ++n) CHECK(alice_bias_closed(n, 0.9) > alice_bias_closed(n + 1, 0.9));
    for (double th = 0.1; th < 1.4; th += 0.2)
        CHECK(alice_bias_closed(3, th) > alice_bias_closed(3, th + 0.2));
}
