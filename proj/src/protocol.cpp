#include "coinflip/protocol.hpp"

#include <cmath>
#include <string>

namespace coinflip {

namespace {

// |<psi_b^{(r)} | psi_a^{(s)}>|^2 for one qubit; amplitudes are real.
double born_p(double theta, int b, int r, int a, int s) {
    const Vec m = qubit_state(theta, b, r);
    const Vec p = qubit_state(theta, a, s);
    const double dot = m[0].real() * p[0].real() + m[1].real() * p[1].real();
    return dot * dot;
}

bool attempt_lost(int n, double p_loss, RandomStream& rng) {
    bool lost = false;
    for (int i = 0; i < n; ++i)
        if (rng.real01() < p_loss) lost = true;
    return lost;
}

[[noreturn]] void runaway() {
    throw NumericalError("restart cap " + std::to_string(kRestartCap) + " exceeded");
}

}  // namespace

RunRecord run_honest(const ProtocolParams& params, double p_loss, RandomStream& rng) {
    const int n = params.n;
    RunRecord rec;
    while (rec.restarts <= kRestartCap) {
        const unsigned a = rng.bits(n);
        const unsigned s = rng.bits(n);
        if (attempt_lost(n, p_loss, rng)) {
            ++rec.restarts;
            continue;
        }
        const unsigned b = rng.bits(n);
        unsigned r = 0;
        for (int i = 0; i < n; ++i) {
            int ri;
            if (bit_at(b, i, n) == bit_at(a, i, n)) {
                ri = bit_at(s, i, n);  // matched basis reproduces the preparation
            } else {
                const double p0 = born_p(params.theta, bit_at(b, i, n), 0, bit_at(a, i, n),
                                         bit_at(s, i, n));
                ri = rng.real01() < p0 ? 0 : 1;
            }
            r = (r << 1) | static_cast<unsigned>(ri);
        }
        const int c = rng.bit();
        rec.completed = true;
        rec.aborted = abort_triggered(n, a, s, b, r);
        rec.classical_bit = c;
        rec.announced_basis = b;
        rec.announced_outcome = r;
        if (!rec.aborted) rec.outcome = c ^ parity(r);
        return rec;
    }
    runaway();
}

SimulationSummary simulate_honest(const ProtocolParams& params, double p_loss, uint64_t seed,
                                  long trials) {
    RandomStream rng(seed);
    SimulationSummary sum;
    sum.n = params.n;
    sum.theta = params.theta;
    sum.p_loss = p_loss;
    sum.trials = trials;
    long restarts = 0;
    for (long t = 0; t < trials; ++t) {
        const RunRecord rec = run_honest(params, p_loss, rng);
        restarts += rec.restarts;
        if (rec.completed) ++sum.completed;
        if (rec.aborted) ++sum.aborted;
        if (rec.outcome == 0) ++sum.outcome0;
    }
    const long decided = sum.completed - sum.aborted;
    sum.outcome0_frac = decided > 0 ? static_cast<double>(sum.outcome0) / decided : 0.0;
    sum.mean_restarts = trials > 0 ? static_cast<double>(restarts) / trials : 0.0;
    return sum;
}

namespace {

// p[b * 2^n + r] = probability the honest receiver announces outcome tuple r
// when measuring `state` in basis tuple b.
std::vector<double> receiver_table(int n, double theta, const Vec& state) {
    const unsigned d = 1u << n;
    std::vector<double> p(static_cast<size_t>(d) * d);
    for (unsigned b = 0; b < d; ++b)
        for (unsigned r = 0; r < d; ++r)
            p[(static_cast<size_t>(b) << n) + r] = std::norm(inner(prep_state(n, theta, {b, r}), state));
    return p;
}

void require_unit_state(const Vec& state, int n) {
    if (state.size() != (1u << n)) throw StrategyError("cheat state has wrong dimension");
    if (std::abs(vnorm(state) - 1.0) > 1e-9) throw StrategyError("cheat state is not unit norm");
}

// Shared per-trial core: loss flags, receiver bases, one Born draw.
unsigned sample_announcement(int n, const std::vector<double>& table, double p_loss,
                             RandomStream& rng, long& restarts, unsigned& basis_out) {
    const unsigned d = 1u << n;
    while (restarts <= kRestartCap) {
        if (attempt_lost(n, p_loss, rng)) {
            ++restarts;
            continue;
        }
        const unsigned b = rng.bits(n);
        const double u = rng.real01();
        double acc = 0.0;
        unsigned pick = d - 1;
        for (unsigned r = 0; r < d; ++r) {
            acc += table[(static_cast<size_t>(b) << n) + r];
            if (u < acc) {
                pick = r;
                break;
            }
        }
        basis_out = b;
        return pick;
    }
    runaway();
}

}  // namespace

double run_cheating_alice(const ProtocolParams& params, const Vec& cheat_state, int target,
                          uint64_t seed, long trials, double p_loss) {
    require_unit_state(cheat_state, params.n);
    // The classical bit is pinned to the target, so outcome = target exactly
    // when the announced parity is even; the rate is target-independent.
    (void)target;
    const auto table = receiver_table(params.n, params.theta, cheat_state);
    RandomStream rng(seed);
    long wins = 0;
    for (long t = 0; t < trials; ++t) {
        long restarts = 0;
        unsigned b = 0;
        const unsigned r = sample_announcement(params.n, table, p_loss, rng, restarts, b);
        if (parity(r) == 0) ++wins;
    }
    return static_cast<double>(wins) / trials;
}

double run_alice_honest_baseline(const ProtocolParams& params, const Vec& state, int target,
                                 uint64_t seed, long trials, double p_loss) {
    require_unit_state(state, params.n);
    const auto table = receiver_table(params.n, params.theta, state);
    RandomStream rng(seed);
    long wins = 0;
    for (long t = 0; t < trials; ++t) {
        long restarts = 0;
        unsigned b = 0;
        const unsigned r = sample_announcement(params.n, table, p_loss, rng, restarts, b);
        const int c = rng.bit();
        if ((c ^ parity(r)) == target) ++wins;
    }
    return static_cast<double>(wins) / trials;
}

double run_cheating_bob(const ProtocolParams& params, const CheatStrategy& strategy, int target,
                        uint64_t seed, long trials, double p_loss) {
    const int n = params.n;
    if (n > 4) throw SizingError("receiver-cheat sampling tables limited to n <= 4");
    if (strategy.n != n) throw StrategyError("strategy register size does not match the protocol");
    CheatStrategy::checked(strategy.n, strategy.generator);  // completeness guarantee
    const unsigned d = 1u << n;

    // Element lists and Born tables per classical class, indexed by the
    // sender's preparation.
    struct ClassTable {
        std::vector<std::pair<unsigned, unsigned>> rb;       // (outcome tuple, basis tuple)
        std::vector<std::vector<double>> p;                  // [a * 2^n + s][element]
    };
    ClassTable cls[2];
    for (int cl = 0; cl < 2; ++cl) {
        for (unsigned r = 0; r < d; ++r) {
            if (parity(r) != cl) continue;
            for (unsigned b = 0; b < d; ++b) cls[cl].rb.emplace_back(r, b);
        }
        cls[cl].p.resize(static_cast<size_t>(d) * d);
    }
    for (unsigned a = 0; a < d; ++a)
        for (unsigned s = 0; s < d; ++s) {
            const Vec psi = prep_state(n, params.theta, {a, s});
            for (int cl = 0; cl < 2; ++cl) {
                auto& row = cls[cl].p[(static_cast<size_t>(a) << n) + s];
                row.reserve(cls[cl].rb.size());
                for (const auto& [r, b] : cls[cl].rb)
                    row.push_back(expectation(family_element(strategy, r, b), psi));
            }
        }

    RandomStream rng(seed);
    long wins = 0;
    for (long t = 0; t < trials; ++t) {
        long restarts = 0;
        unsigned a = 0, s = 0;
        while (true) {
            if (restarts > kRestartCap) runaway();
            a = rng.bits(n);
            s = rng.bits(n);
            if (!attempt_lost(n, p_loss, rng)) break;
            ++restarts;
        }
        const int c = rng.bit();
        const ClassTable& ct = cls[c ^ target];
        const auto& row = ct.p[(static_cast<size_t>(a) << n) + s];
        const double u = rng.real01();
        double acc = 0.0;
        size_t pick = row.size() - 1;
        for (size_t k = 0; k < row.size(); ++k) {
            acc += row[k];
            if (u < acc) {
                pick = k;
                break;
            }
        }
        const auto& [r, b] = ct.rb[pick];
        if (!abort_triggered(n, a, s, b, r)) ++wins;
    }
    return static_cast<double>(wins) / trials;
}

double run_bob_honest_baseline(const ProtocolParams& params, int target, uint64_t seed,
                               long trials, double p_loss) {
    RandomStream rng(seed);
    long wins = 0;
    for (long t = 0; t < trials; ++t) {
        const RunRecord rec = run_honest(params, p_loss, rng);
        if (!rec.aborted && rec.outcome == target) ++wins;
    }
    return static_cast<double>(wins) / trials;
}

}  // namespace coinflip
