#include <doctest.h>

#include <cmath>
#include <random>

#include "coinflip/bob.hpp"
#include "coinflip/strategy.hpp"

using namespace coinflip;

namespace {

Mat half_identity(int n) {
    Mat g = identity(1 << n);
    g *= cplx(std::ldexp(1.0, -(n - 1)) / static_cast<double>(1 << n), 0.0);
    return g;
}

}  // namespace

TEST_CASE("generator validation") {
    // scaled identity satisfies every constraint
    CHECK_NOTHROW(CheatStrategy::checked(1, half_identity(1)));
    CHECK_NOTHROW(CheatStrategy::checked(2, half_identity(2)));
    // wrong trace
    CHECK_THROWS_AS(CheatStrategy::checked(1, identity(2)), StrategyError);
    // parity-violating diagonal
    Mat skew(2);
    skew(0, 0) = 0.9;
    skew(1, 1) = 0.1;
    CHECK_THROWS_AS(CheatStrategy::checked(1, skew), StrategyError);
    // trace and parity fine, but indefinite
    Mat neg(2);
    neg(0, 0) = 0.5;
    neg(1, 1) = 0.5;
    neg(0, 1) = 0.9;
    neg(1, 0) = 0.9;
    CHECK_THROWS_AS(CheatStrategy::checked(1, neg), StrategyError);

    const GeneratorCheck chk = verify_generator_constraints(1, half_identity(1));
    CHECK(chk.pass(1e-12));
}

TEST_CASE("rotation conjugation") {
    // conjugating twice with the same labels is the identity map
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g;
    Mat a(4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) a(i, j) = cplx(g(rng), g(rng));
    const Mat twice = conjugate_flip(conjugate_flip(a, 0b10u, 0b01u), 0b10u, 0b01u);
    CHECK(max_abs_diff(twice, a) <= 1e-14);
    // bit flip on one qubit anticommutes with that qubit's sign string
    CHECK(max_abs_diff(conjugate_flip(parity_z(2), 0b01u, 0u), cplx(-1.0, 0) * parity_z(2)) <=
          1e-14);
    CHECK(max_abs_diff(conjugate_flip(parity_z(2), 0b11u, 0u), parity_z(2)) <= 1e-14);
    // explicit operator check: R A R^dag with R = Sx^r Sz^m
    const Mat r_op = pauli_x_mask(2, 0b10u) * pauli_z_mask(2, 0b01u);
    CHECK(max_abs_diff(conjugate_flip(a, 0b10u, 0b01u), r_op * a * adjoint(r_op)) <= 1e-13);
}

TEST_CASE("family expansion and completeness") {
    const double th = 0.7;
    const LambdaOperator lam = build_lambda_fast(2, th);
    const DualSolution dual = solve_dual(2, th);
    const PrimalRecovery rec = recover_primal(lam, dual);
    const CheatStrategy s = CheatStrategy::checked(2, rec.generator);
    const RawFamily fam = expand_family(s);
    CHECK(fam.n == 2);
    CHECK(fam.elems.size() == 16);
    for (unsigned r = 0; r < 4; ++r)
        for (unsigned b = 0; b < 4; ++b)
            CHECK(max_abs_diff(fam.at(r, b), family_element(s, r, b)) == 0.0);
    CHECK(max_abs_diff(family_class_sum(fam, 0), identity(4)) <= 1e-9);
    CHECK(max_abs_diff(family_class_sum(fam, 1), identity(4)) <= 1e-9);
    // generator-expanded families are fixed points of the group average
    const RawFamily sym = symmetrize(fam);
    double dev = 0.0;
    for (size_t k = 0; k < fam.elems.size(); ++k)
        dev = std::max(dev, max_abs_diff(fam.elems[k], sym.elems[k]));
    CHECK(dev <= 1e-12);
}

TEST_CASE("family success probability matches the operator pairing") {
    for (int n : {1, 2}) {
        const double th = n == 1 ? 0.6435011087932844 : 0.4698056391408984;
        const LambdaOperator lam = build_lambda_fast(n, th);
        const DualSolution dual = solve_dual(n, th);
        const PrimalRecovery rec = recover_primal(lam, dual);
        const CheatStrategy s = CheatStrategy::checked(n, rec.generator);
        const RawFamily fam = expand_family(s);
        const double by_protocol = family_success_probability(fam, th, 0);
        const double by_pairing = 1.0 - trace(rec.generator * lam.op).real();
        CHECK(std::abs(by_protocol - by_pairing) <= 1e-9);
        // the relabeling symmetry makes both coin values equally attackable
        CHECK(std::abs(family_success_given_bit(fam, th, 0, 0) -
                       family_success_given_bit(fam, th, 0, 1)) <= 1e-12);
        CHECK(std::abs(family_success_probability(fam, th, 0) -
                       family_success_probability(fam, th, 1)) <= 1e-12);
    }
}

TEST_CASE("random feasible objects satisfy their contracts") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 1 + trial % 3;
        const Mat g = random_feasible_generator(n, rng);
        CHECK(verify_generator_constraints(n, g).pass(1e-9));
        const RawFamily f = random_feasible_family(n, rng);
        CHECK(max_abs_diff(family_class_sum(f, 0), identity(1 << n)) <= 1e-9);
        CHECK(max_abs_diff(family_class_sum(f, 1), identity(1 << n)) <= 1e-9);
        for (const Mat& m : f.elems) CHECK(min_eigenvalue(m) >= -1e-9);
    }
    // symmetrizing a random family preserves the objective
    double dev = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 1 + trial % 2;
        const RawFamily f = random_feasible_family(n, rng);
        const RawFamily s = symmetrize(f);
        dev = std::max(dev, std::abs(family_success_probability(s, 0.8, 0) -
                                     family_success_probability(f, 0.8, 0)));
    }
    CHECK(dev <= 1e-9);
    // families whose class sums are not the identity are rejected
    RawFamily bad;
    bad.n = 1;
    bad.elems.assign(4, identity(2));
    CHECK_THROWS_AS(symmetrize(bad), StrategyError);
}
