#pragma once

#include <vector>

#include "coinflip/bob.hpp"

namespace coinflip {

struct FairPoint {
    int n = 0;
    double theta_star = 0.0;
    double p_fair = 0.0;
    double alice_at_star = 0.0;
    double bob_at_star = 0.0;
    double residual = 0.0;  // |alice - bob| at theta_star
};

// Bisection on g(theta) = bob_dual(theta) - alice_closed(theta) over
// (1e-4, pi/2 - 1e-4). A 33-point sign scan first certifies that exactly one
// crossing exists; throws NumericalError (with endpoint values) otherwise.
// Converges to |g| <= tols().bisect_g or bracket width <= tols().bisect_width.
FairPoint find_fair_theta(int n);

std::vector<FairPoint> fair_table(int n_max);

struct SweepRow {
    double theta = 0.0;
    double alice = 0.0;
    double bob_dual = 0.0;
    double bob_primal = 0.0;
    double n1_reference = 0.0;  // single-qubit receiver bias at the same angle
    double gap = 0.0;
};

// Dense grid for figure regeneration. bob_primal: closed form at n=1, the
// conjectured-family maximum at n=2, slack-kernel recovery otherwise (NaN if
// the recovery reports the gap open).
std::vector<SweepRow> sweep_curves(int n, const std::vector<double>& theta_grid);

std::vector<double> linspace(double lo, double hi, int count);

}
