#include "coinflip/fair.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "coinflip/alice.hpp"

namespace coinflip {

namespace {

double fair_gap(int n, double theta) {
    return solve_dual(n, theta).value - alice_bias_closed(n, theta);
}

}  // namespace

FairPoint find_fair_theta(int n) {
    const double lo = 1e-4, hi = std::numbers::pi / 2 - 1e-4;
    const int grid_n = 33;

    // Certify a unique sign change before bisecting.
    std::vector<double> xs(grid_n), gs(grid_n);
    int crossings = 0, bracket = -1;
    for (int i = 0; i < grid_n; ++i) {
        xs[i] = lo + (hi - lo) * i / (grid_n - 1);
        gs[i] = fair_gap(n, xs[i]);
        if (i > 0 && gs[i - 1] < 0.0 && gs[i] >= 0.0) {
            ++crossings;
            bracket = i - 1;
        }
        if (i > 0 && gs[i - 1] >= 0.0 && gs[i] < 0.0) ++crossings;  // unexpected direction
    }
    if (crossings == 0)
        throw NumericalError("fair point not found for n = " + std::to_string(n) +
                             ": g(" + std::to_string(xs.front()) + ") = " +
                             std::to_string(gs.front()) + ", g(" + std::to_string(xs.back()) +
                             ") = " + std::to_string(gs.back()));
    if (crossings > 1)
        throw NumericalError("fair point not unique for n = " + std::to_string(n) + ": " +
                             std::to_string(crossings) + " sign changes on the scan grid");

    double a = xs[bracket], b = xs[bracket + 1];
    double ga = gs[bracket];
    double mid = 0.5 * (a + b), gm = fair_gap(n, mid);
    while (std::abs(gm) > tols().bisect_g && b - a > tols().bisect_width) {
        if ((ga < 0.0) == (gm < 0.0)) {
            a = mid;
            ga = gm;
        } else {
            b = mid;
        }
        mid = 0.5 * (a + b);
        gm = fair_gap(n, mid);
    }

    FairPoint fp;
    fp.n = n;
    fp.theta_star = mid;
    fp.alice_at_star = alice_bias_closed(n, mid);
    fp.bob_at_star = solve_dual(n, mid).value;
    fp.residual = std::abs(fp.alice_at_star - fp.bob_at_star);
    fp.p_fair = 0.5 * (fp.alice_at_star + fp.bob_at_star);
    const double allowed = n <= 2 ? 1e-6 : 5e-5;
    if (fp.residual > allowed)
        throw NumericalError("fair point residual " + std::to_string(fp.residual) +
                             " exceeds " + std::to_string(allowed) + " for n = " +
                             std::to_string(n));
    if (!(fp.p_fair > 0.5 && fp.p_fair < 1.0))
        throw NumericalError("fair bias outside (1/2, 1)");
    return fp;
}

std::vector<FairPoint> fair_table(int n_max) {
    std::vector<FairPoint> table;
    for (int n = 1; n <= n_max; ++n) table.push_back(find_fair_theta(n));
    return table;
}

std::vector<double> linspace(double lo, double hi, int count) {
    if (count < 2) return {lo};
    std::vector<double> xs(count);
    for (int i = 0; i < count; ++i) xs[i] = lo + (hi - lo) * i / (count - 1);
    return xs;
}

std::vector<SweepRow> sweep_curves(int n, const std::vector<double>& theta_grid) {
    std::vector<SweepRow> rows;
    rows.reserve(theta_grid.size());
    for (double theta : theta_grid) {
        SweepRow row;
        row.theta = theta;
        row.alice = alice_bias_closed(n, theta);
        const DualSolution dual = solve_dual(n, theta);
        row.bob_dual = dual.value;
        row.n1_reference = bob_bias_n1_closed(theta);
        if (n == 1) {
            row.bob_primal = bob_bias_n1_closed(theta);
        } else if (n == 2) {
            row.bob_primal = conjectured_primal_n2(theta).value;
        } else {
            const PrimalRecovery rec = recover_primal(build_lambda_fast(n, theta), dual);
            row.bob_primal =
                rec.note.empty() ? rec.value : std::numeric_limits<double>::quiet_NaN();
        }
        row.gap = row.bob_dual - row.bob_primal;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace coinflip
