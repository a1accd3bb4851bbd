#pragma once

#include "coinflip/states.hpp"

namespace coinflip {

// Honest receiver's even-parity operator: the average over announced bases of
// the projector onto outcome tuples with an even number of down results. Its
// top eigenvalue is the best success probability of a sender who controls the
// transmitted state.
//
// Enumerated form is the oracle (direct sum over 2^n bases x even-parity
// outcome tuples); the closed form (1 + cos^n(theta) * parity_z) / 2 is the
// fast path. Both take raw (n, theta) so limits at the excluded endpoints
// remain evaluable.
Mat even_parity_enumerated(int n, double theta);
Mat even_parity_closed(int n, double theta);
Mat odd_parity_closed(int n, double theta);

// (1 + cos^n theta) / 2
double alice_bias_closed(int n, double theta);

struct AliceBiasResult {
    double p_star;
    Vec optimal_state;
    Mat pi_n;
};

// Top eigenvalue and eigenvector of the enumerated operator. Throws
// NumericalError if the spectral value drifts from the closed form by more
// than 1e-8 (construction bug trip wire).
AliceBiasResult alice_bias_spectral(int n, double theta);

}
