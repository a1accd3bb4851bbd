#include "coinflip/alice.hpp"

#include <cmath>
#include <string>

namespace coinflip {

Mat even_parity_enumerated(int n, double theta) {
    const int d = 1 << n;
    Mat pi(d);
    const double w = 1.0 / d;
    for (unsigned b = 0; b < static_cast<unsigned>(d); ++b)
        for (unsigned r = 0; r < static_cast<unsigned>(d); ++r) {
            // Keep tuples whose product of signs (-1)^{r_i} is positive.
            const double sign_product = parity(r) ? -1.0 : 1.0;
            const double keep = unit_step(sign_product, AtZero::Zero);
            if (keep == 0.0) continue;
            add_outer(pi, prep_state(n, theta, {b, r}), w * keep);
        }
    return pi;
}

Mat even_parity_closed(int n, double theta) {
    Mat pi = identity(1 << n);
    pi += std::pow(std::cos(theta), n) * parity_z(n);
    return 0.5 * pi;
}

Mat odd_parity_closed(int n, double theta) {
    Mat pi = identity(1 << n);
    pi -= std::pow(std::cos(theta), n) * parity_z(n);
    return 0.5 * pi;
}

double alice_bias_closed(int n, double theta) { return 0.5 * (1.0 + std::pow(std::cos(theta), n)); }

AliceBiasResult alice_bias_spectral(int n, double theta) {
    AliceBiasResult res;
    res.pi_n = even_parity_enumerated(n, theta);
    const Spectrum sp = eig_hermitian(res.pi_n);
    res.p_star = sp.values.back();
    res.optimal_state = sp.column(static_cast<int>(sp.values.size()) - 1);
    const double closed = alice_bias_closed(n, theta);
    if (std::abs(res.p_star - closed) > 1e-8)
        throw NumericalError("even-parity operator inconsistent with closed-form bias: spectral " +
                             std::to_string(res.p_star) + " vs " + std::to_string(closed));
    return res;
}

}  // namespace coinflip
