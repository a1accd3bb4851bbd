#pragma once

#include <array>
#include <string>

#include "coinflip/strategy.hpp"

namespace coinflip {

// Detection operator: the operator whose pairing Tr(G *) with a strategy
// generator G gives the probability that the announcing party is caught by the
// honest sender's consistency check. Positive semidefinite with trace
// (4^n - 3^n) / 2.
struct LambdaOperator {
    int n = 0;
    double theta = 0.0;
    Mat op;
};

// Literal five-fold enumeration over (classical bit, preparation, announced
// basis, announced outcomes), rotating each caught preparation into the
// generator frame. Reference oracle; n <= 3.
LambdaOperator build_lambda_bruteforce(int n, double theta);

// Collapsed two-index form: half the sum of preparation projectors over label
// pairs where some qubit is announced in the sender's basis with the flipped
// outcome. Cross-checked against the brute-force enumeration (entrywise, for
// n <= 2 at the requested angle, plus a once-per-process gate); throws
// ConstructionError on disagreement.
LambdaOperator build_lambda_fast(int n, double theta);

struct DualSolution {
    int n = 0;
    double theta = 0.0;
    double lambda1 = 0.0;  // max over lambda2 of the smallest eigenvalue of op + lambda2 * parity_z
    double lambda2 = 0.0;
    double value = 0.0;    // 1 - lambda1 / 2^{n-1}, the certified upper bound on the bias
    Mat slack;             // op + lambda2 * parity_z - lambda1 * I, PSD at the optimum
    double slack_min_eig = 0.0;
};

// Concave 1-D reduction of the dual: golden section over
// lambda2 in [-|op|_F, +|op|_F] to bracket width tols().golden_width, a dense
// grid fallback if the section ever misses, then a secant polish on the
// derivative (min-eigenvector expectation of parity_z) so the complementary
// slackness residual reaches ~1e-12 rather than the ~sqrt(eps) a value-only
// search can certify.
DualSolution solve_dual(int n, double theta);

struct PrimalRecovery {
    Mat generator;
    double value = 0.0;  // 1 - Tr(G op)
    double gap = 0.0;    // dual value - primal value
    bool gap_closed = false;
    int null_dim = 0;
    std::string note;    // non-empty on the gap-not-closed path
};

// Complementary slackness: any feasible generator supported on the slack null
// space attains the dual value. Builds one from the null-space compression of
// parity_z: a single near-null eigenvalue gives a rank-1 generator, otherwise
// the two extreme eigenvectors are mixed with the unique feasible weights.
PrimalRecovery recover_primal(const LambdaOperator& lam, const DualSolution& dual);

// (3 + sin theta) / 4
double bob_bias_n1_closed(double theta);

// Two-qubit analytic path: quartic resolvent of the boundary condition, the
// companion rational expression for the second dual variable, and admissible
// root selection (slack PSD and value dominating the single-qubit bias).
struct TwoQubitAnalytic {
    double theta = 0.0;
    std::array<cplx, 4> roots{};
    int real_count = 0;
    int admissible_count = 0;
    double xi = 0.0;     // lambda1 - lambda2 of the selected root
    double chi = 0.0;    // lambda1 + lambda2
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    double value = 0.0;
};

std::array<double, 5> quartic_coefficients(double theta);
TwoQubitAnalytic two_qubit_analytic(double theta);

// Angle where the quartic switches from four real roots to two (double root),
// located by bisection to 1e-6 rad.
double quartic_transition_theta();

// Conjectured closed-form optimal two-qubit strategy: rank-one generator from
// a one-parameter state family, maximized over the parameter.
struct ConjecturedPrimal {
    double theta = 0.0;
    double f_star = 0.0;
    double value = 0.0;
    Vec state;  // the generating state at f_star (unit norm by construction)
};

Vec conjectured_state_n2(double f);
double conjectured_objective_n2(double theta, double f);
ConjecturedPrimal conjectured_primal_n2(double theta);

}
