#pragma once

#include <cstdint>
#include <random>

#include "coinflip/strategy.hpp"

namespace coinflip {

// Single deterministic stream per run. Draw order is part of the contract:
// per attempt the honest sender draws basis bits, then outcome bits, then one
// loss flag per qubit; a lost attempt restarts immediately. On the surviving
// attempt the receiver draws his bases, one Born draw per basis-mismatched
// qubit, and finally the classical bit. Cheating variants document their own
// order at the call site. Raw engine bits are mapped to bits/reals directly
// (no std distributions) so identical seeds give identical records on any
// platform.
class RandomStream {
public:
    explicit RandomStream(uint64_t seed) : eng_(seed) {}
    int bit() { return static_cast<int>(eng_() >> 63); }
    double real01() { return static_cast<double>(eng_() >> 11) * 0x1p-53; }
    unsigned bits(int k) {
        unsigned v = 0;
        for (int i = 0; i < k; ++i) v = (v << 1) | static_cast<unsigned>(bit());
        return v;
    }

private:
    std::mt19937_64 eng_;
};

inline constexpr long kRestartCap = 1000000;

struct RunRecord {
    long restarts = 0;
    bool completed = false;
    bool aborted = false;
    int outcome = -1;  // present iff completed and not aborted
    int classical_bit = -1;
    unsigned announced_basis = 0;
    unsigned announced_outcome = 0;
};

RunRecord run_honest(const ProtocolParams& params, double p_loss, RandomStream& rng);

struct SimulationSummary {
    int n = 0;
    double theta = 0.0;
    double p_loss = 0.0;
    long trials = 0;
    long completed = 0;
    long aborted = 0;
    long outcome0 = 0;
    double outcome0_frac = 0.0;
    double mean_restarts = 0.0;
};

SimulationSummary simulate_honest(const ProtocolParams& params, double p_loss, uint64_t seed,
                                  long trials);

// Sender cheat: a fixed transmitted state with the classical bit pinned to the
// target. Success = announced outcome parity matches. Returns the empirical
// success fraction over completed runs.
double run_cheating_alice(const ProtocolParams& params, const Vec& cheat_state, int target,
                          uint64_t seed, long trials, double p_loss = 0.0);

// Baseline: same transmitted state, but the classical bit is drawn honestly,
// which restores a fair coin for any state.
double run_alice_honest_baseline(const ProtocolParams& params, const Vec& state, int target,
                                 uint64_t seed, long trials, double p_loss = 0.0);

// Receiver cheat: honest sender, receiver measures the strategy family of the
// class matching (classical bit, target) and announces accordingly. Success =
// survives the sender's consistency check. Expected rate is the strategy's
// exact success probability.
double run_cheating_bob(const ProtocolParams& params, const CheatStrategy& strategy, int target,
                        uint64_t seed, long trials, double p_loss = 0.0);

// Baseline: receiver measures honestly; success = outcome equals target.
double run_bob_honest_baseline(const ProtocolParams& params, int target, uint64_t seed,
                               long trials, double p_loss = 0.0);

}
