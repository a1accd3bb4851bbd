#include <doctest.h>

#include <cmath>

#include "coinflip/quartic.hpp"

using namespace coinflip;

TEST_CASE("distinct real quartic roots") {
    // (x-1)(x-2)(x-3)(x-4)
    const std::vector<double> c{1, -10, 35, -50, 24};
    const auto r = real_roots(c, 1e-9);
    REQUIRE(r.size() == 4);
    for (int k = 0; k < 4; ++k) CHECK(std::abs(r[k] - (k + 1)) <= 1e-9);
    // scaling the polynomial does not move the roots
    const auto r3 = real_roots({3, -30, 105, -150, 72}, 1e-9);
    REQUIRE(r3.size() == 4);
    for (int k = 0; k < 4; ++k) CHECK(std::abs(r3[k] - r[k]) <= 1e-9);
}

TEST_CASE("repeated roots") {
    // (x^2 - 1)^2
    const auto r = real_roots({1, 0, -2, 0, 1}, 1e-6);
    REQUIRE(r.size() == 4);
    CHECK(std::abs(r[0] + 1.0) <= 1e-6);
    CHECK(std::abs(r[1] + 1.0) <= 1e-6);
    CHECK(std::abs(r[2] - 1.0) <= 1e-6);
    CHECK(std::abs(r[3] - 1.0) <= 1e-6);
}

TEST_CASE("complex pairs are excluded from the real list") {
    const auto r = real_roots({1, 0, 1}, 1e-9);  // x^2 + 1
    CHECK(r.empty());
    const auto z = poly_roots({1, 0, 1});
    REQUIRE(z.size() == 2);
    for (const auto& root : z) {
        CHECK(std::abs(root.real()) <= 1e-12);
        CHECK(std::abs(std::abs(root.imag()) - 1.0) <= 1e-12);
    }
    // mixed: (x^2+1)(x-2)(x+5)
    const auto m = real_roots({1, 3, -9, 3, -10}, 1e-9);
    REQUIRE(m.size() == 2);
    CHECK(std::abs(m[0] + 5.0) <= 1e-9);
    CHECK(std::abs(m[1] - 2.0) <= 1e-9);
}

TEST_CASE("roots satisfy the polynomial") {
    const std::vector<double> c{2.0, -3.0, 0.5, 7.0, -1.0};
    for (const auto& z : poly_roots(c)) CHECK(std::abs(poly_eval(c, z)) <= 1e-8);
}
