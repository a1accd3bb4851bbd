#pragma once

#include "coinflip/linalg.hpp"

namespace coinflip {

// One member of the protocol family: register size and the axis half-angle.
// Constructors reject the degenerate endpoints (theta = 0 collapses the two
// bases, theta = pi/2 breaks the protocol trivially); the bias formulas
// elsewhere stay evaluable at raw (n, theta) for plots and limits.
struct ProtocolParams {
    int n;
    double theta;
    static ProtocolParams checked(int n, double theta);
};

// Announced preparation: basis bit per qubit (0 = first axis, 1 = second) and
// outcome bit per qubit (0 = up, 1 = down). Stored as bitmasks, qubit 0 being
// the leftmost tensor factor = most significant bit.
struct PreparationLabel {
    unsigned basis = 0;
    unsigned outcome = 0;
};

inline int bit_at(unsigned mask, int i, int n) { return (mask >> (n - 1 - i)) & 1; }
inline int parity(unsigned mask) { return __builtin_parity(mask); }

// Single-qubit preparation in the sigma_z eigenbasis (all amplitudes real):
//   basis 0, up:   ( cos t/2,  sin t/2)      basis 0, down: (-sin t/2, cos t/2)
//   basis 1, up:   ( cos t/2, -sin t/2)      basis 1, down: ( sin t/2, cos t/2)
Vec qubit_state(double theta, int basis, int outcome);

// Ordered tensor product of per-qubit preparations.
Vec prep_state(int n, double theta, PreparationLabel label);

// Heaviside step with an explicit at-zero convention (the parity projector
// sums only ever see arguments of unit magnitude; the general bias expression
// uses step(0) = 0).
enum class AtZero { Zero, One };
double unit_step(double x, AtZero at_zero);

// True if any qubit has matching announced basis but mismatched outcome, the
// one event an honest counterparty can detect.
inline bool abort_triggered(int n, unsigned basis_a, unsigned outcome_a, unsigned basis_b,
                            unsigned outcome_b) {
    const unsigned mask = (1u << n) - 1;
    return ((~(basis_a ^ basis_b)) & (outcome_a ^ outcome_b) & mask) != 0;
}

double deg2rad(double deg);
double rad2deg(double rad);

}
