#include <doctest.h>

#include <cmath>

#include "coinflip/alice.hpp"
#include "coinflip/bob.hpp"
#include "coinflip/protocol.hpp"

using namespace coinflip;

TEST_CASE("random stream determinism and ranges") {
    RandomStream a(12345), b(12345);
    for (int i = 0; i < 200; ++i) {
        const int bit = a.bit();
        CHECK((bit == 0 || bit == 1));
        CHECK(bit == b.bit());
    }
    RandomStream c(12345), d(12345);
    for (int i = 0; i < 200; ++i) {
        const double x = c.real01();
        CHECK(x >= 0.0);
        CHECK(x < 1.0);
        CHECK(x == d.real01());
    }
    RandomStream e(7);
    const unsigned m = e.bits(5);
    CHECK(m < 32u);
}

TEST_CASE("honest runs complete, never abort, and define the coin by parity") {
    const ProtocolParams p = ProtocolParams::checked(2, 0.7);
    RandomStream rng(42);
    for (int i = 0; i < 500; ++i) {
        const RunRecord r = run_honest(p, 0.0, rng);
        CHECK(r.completed);
        CHECK_FALSE(r.aborted);
        CHECK(r.restarts == 0);
        CHECK((r.outcome == 0 || r.outcome == 1));
        CHECK(r.outcome == (r.classical_bit ^ parity(r.announced_outcome)));
        CHECK(r.announced_basis < 4u);
        CHECK(r.announced_outcome < 4u);
    }
}

TEST_CASE("loss only costs restarts") {
    const ProtocolParams p = ProtocolParams::checked(2, 0.7);
    const SimulationSummary s = simulate_honest(p, 0.5, 2024, 20000);
    CHECK(s.completed == 20000);
    CHECK(s.aborted == 0);
    // restarts are geometric with success (1-p)^n = 1/4: mean 3
    const double sd = std::sqrt(12.0 / 20000.0);
    CHECK(std::abs(s.mean_restarts - 3.0) <= 3 * sd);
    // fair coin conditioned on completion
    CHECK(std::abs(s.outcome0_frac - 0.5) <= 4 * std::sqrt(0.25 / 20000.0));
    // byte determinism of the whole summary
    const SimulationSummary t = simulate_honest(p, 0.5, 2024, 20000);
    CHECK(t.outcome0 == s.outcome0);
    CHECK(t.mean_restarts == s.mean_restarts);
    const SimulationSummary u = simulate_honest(p, 0.5, 2025, 20000);
    CHECK(u.outcome0 != s.outcome0);  // different seed, different record
}

TEST_CASE("total loss exhausts the restart budget deterministically") {
    const ProtocolParams p = ProtocolParams::checked(1, 0.5);
    RandomStream rng(3);
    CHECK_THROWS_AS(run_honest(p, 1.0, rng), NumericalError);
}

TEST_CASE("cheating sender attains the parity-operator bias") {
    const ProtocolParams p = ProtocolParams::checked(1, 0.6);
    const AliceBiasResult ab = alice_bias_spectral(1, 0.6);
    const long trials = 100000;
    const double rate = run_cheating_alice(p, ab.optimal_state, 0, 555, trials);
    const double sd = std::sqrt(ab.p_star * (1 - ab.p_star) / trials);
    CHECK(std::abs(rate - ab.p_star) <= 4 * sd);
    // pinning the classical bit alone does not help with an honest state
    const double honest_rate =
        run_cheating_alice(p, qubit_state(0.6, 0, 0), 0, 556, trials);
    const double expect = (1 + std::cos(0.6) * std::cos(0.6)) / 2;
    CHECK(std::abs(honest_rate - expect) <= 4 * std::sqrt(expect * (1 - expect) / trials));
    // drawing the bit honestly restores the fair coin for any state
    const double base = run_alice_honest_baseline(p, ab.optimal_state, 0, 557, trials);
    CHECK(std::abs(base - 0.5) <= 4 * std::sqrt(0.25 / trials));
    // loss does not change the cheat rate
    const double lossy = run_cheating_alice(p, ab.optimal_state, 0, 558, trials, 0.4);
    CHECK(std::abs(lossy - ab.p_star) <= 4 * sd);
    // reproducibility
    CHECK(run_cheating_alice(p, ab.optimal_state, 0, 555, trials) == rate);
    // malformed states are rejected
    CHECK_THROWS_AS(run_cheating_alice(p, Vec{1.0, 1.0}, 0, 1, 10), StrategyError);
    CHECK_THROWS_AS(run_cheating_alice(p, Vec{1.0, 0.0, 0.0, 0.0}, 0, 1, 10), StrategyError);
}

TEST_CASE("cheating receiver attains the recovered strategy value") {
    const ProtocolParams p = ProtocolParams::checked(1, 0.8);
    const LambdaOperator lam = build_lambda_fast(1, 0.8);
    const DualSolution dual = solve_dual(1, 0.8);
    const PrimalRecovery rec = recover_primal(lam, dual);
    REQUIRE(rec.gap_closed);
    const CheatStrategy strat = CheatStrategy::checked(1, rec.generator);
    const long trials = 100000;
    const double rate = run_cheating_bob(p, strat, 0, 777, trials);
    const double sd = std::sqrt(rec.value * (1 - rec.value) / trials);
    CHECK(std::abs(rate - rec.value) <= 4 * sd);
    // loss is invisible to the announcing party's success rate
    const double lossy = run_cheating_bob(p, strat, 0, 778, trials, 0.3);
    CHECK(std::abs(lossy - rec.value) <= 4 * sd);
    // honest measurement has no edge
    const double base = run_bob_honest_baseline(p, 0, 779, trials);
    CHECK(std::abs(base - 0.5) <= 4 * std::sqrt(0.25 / trials));
    // register cap for the tabulated sampler
    const ProtocolParams big = ProtocolParams::checked(5, 0.8);
    CHECK_THROWS_AS(run_cheating_bob(big, strat, 0, 1, 10), SizingError);
}
