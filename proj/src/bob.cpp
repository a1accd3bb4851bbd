#include "coinflip/bob.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "coinflip/quartic.hpp"

namespace coinflip {

namespace {

double lambda_trace(int n) { return 0.5 * (std::pow(4.0, n) - std::pow(3.0, n)); }

void validate_lambda(const LambdaOperator& lam) {
    if (std::abs(trace(lam.op).real() - lambda_trace(lam.n)) > tols().constraint)
        throw ConstructionError("detection operator trace off: " +
                                std::to_string(trace(lam.op).real()));
    if (min_eigenvalue(lam.op) < -1e-10)
        throw ConstructionError("detection operator not PSD");
}

// (adjoint of Sx^r Sz^m) |psi>
Vec rotate_back(const Vec& v, unsigned r, unsigned m) {
    Vec out(v.size());
    for (size_t y = 0; y < v.size(); ++y) {
        const double sign = parity(static_cast<unsigned>(y) & m) ? -1.0 : 1.0;
        out[y] = sign * v[y ^ r];
    }
    return out;
}

Mat lambda_fast_raw(int n, double theta) {
    const unsigned d = 1u << n;
    Mat L(static_cast<int>(d));
    for (unsigned x = 0; x < d; ++x)
        for (unsigned y = 0; y < d; ++y)
            if ((~x) & y & (d - 1))
                add_outer(L, prep_state(n, theta, {x, y}), 0.5);
    return L;
}

}  // namespace

LambdaOperator build_lambda_bruteforce(int n, double theta) {
    if (n < 1 || n > 3) throw SizingError("brute-force detection operator limited to n <= 3");
    const unsigned d = 1u << n;
    Mat L(static_cast<int>(d));
    const double w = std::ldexp(1.0, -(2 * n + 1));
    for (int c = 0; c < 2; ++c)
        for (unsigned a = 0; a < d; ++a)
            for (unsigned s = 0; s < d; ++s) {
                const Vec psi = prep_state(n, theta, {a, s});
                for (unsigned b = 0; b < d; ++b)
                    for (unsigned r = 0; r < d; ++r) {
                        if (parity(r) != c) continue;
                        if (!abort_triggered(n, a, s, b, r)) continue;
                        add_outer(L, rotate_back(psi, r, b ^ r), w);
                    }
            }
    LambdaOperator lam{n, theta, std::move(L)};
    validate_lambda(lam);
    return lam;
}

LambdaOperator build_lambda_fast(int n, double theta) {
    if (n < 1 || n > max_register_qubits())
        throw SizingError("detection operator: n outside [1, " +
                          std::to_string(max_register_qubits()) + "]");
    // Gate the collapsed form behind the enumeration oracle: always at the
    // requested angle when cheap, and once per process otherwise.
    static const bool gate = [] {
        for (int m : {1, 2}) {
            const Mat fast = lambda_fast_raw(m, 0.7);
            const Mat brute = build_lambda_bruteforce(m, 0.7).op;
            if (max_abs_diff(fast, brute) > tols().entrywise)
                throw ConstructionError("fast detection operator failed its oracle gate");
        }
        return true;
    }();
    (void)gate;
    LambdaOperator lam{n, theta, lambda_fast_raw(n, theta)};
    if (n <= 2 &&
        max_abs_diff(lam.op, build_lambda_bruteforce(n, theta).op) > tols().entrywise)
        throw ConstructionError("fast detection operator disagrees with enumeration");
    validate_lambda(lam);
    return lam;
}

namespace {

Mat shifted(const Mat& base, const Mat& z, double l2) {
    const int d = base.dim();
    Mat out = base;
    for (int i = 0; i < d; ++i) out(i, i) += l2 * z(i, i).real();
    return out;
}

struct GoldenResult {
    double x;
    double fx;
};

// Maximize a concave h over [lo, hi] to bracket width w.
template <typename F>
GoldenResult golden_max(F&& h, double lo, double hi, double w) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
    double f1 = h(x1), f2 = h(x2);
    while (b - a > w) {
        if (f1 < f2) {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + inv_phi * (b - a); f2 = h(x2);
        } else {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - inv_phi * (b - a); f1 = h(x1);
        }
    }
    return f1 > f2 ? GoldenResult{x1, f1} : GoldenResult{x2, f2};
}

}  // namespace

DualSolution solve_dual(int n, double theta) {
    const LambdaOperator lam = build_lambda_fast(n, theta);
    const Mat z = parity_z(n);
    const double radius = frobenius(lam.op);
    auto h = [&](double l2) { return eigenvalues(shifted(lam.op, z, l2)).front(); };

    GoldenResult best = golden_max(h, -radius, radius, tols().golden_width);

    // Dense-grid fallback: a concave objective cannot beat the section result,
    // so any grid win signals a missed bracket and restarts the search there.
    {
        const int grid_n = 33;
        double gx = -radius, gf = -1e300;
        for (int i = 0; i < grid_n; ++i) {
            const double x = -radius + (2.0 * radius * i) / (grid_n - 1);
            const double f = h(x);
            if (f > gf) { gf = f; gx = x; }
        }
        if (gf > best.fx + 1e-10) {
            const double step = 2.0 * radius / (grid_n - 1);
            best = golden_max(h, gx - step, gx + step, tols().golden_width);
        }
    }

    // Derivative polish. The section localizes lambda2 only to ~sqrt(eps)
    // because the objective is flat at its maximum; the min-eigenvector
    // expectation of parity_z is its exact derivative and a secant on it
    // recovers the remaining digits.
    auto g = [&](double l2) {
        const Spectrum sp = eig_hermitian(shifted(lam.op, z, l2));
        return expectation(z, sp.column(0));
    };
    double l2 = best.x;
    {
        const double span = 1e-5 * (1.0 + std::abs(best.x));
        double x0 = best.x, g0 = g(x0);
        double x1 = best.x + 1e-7 * (1.0 + std::abs(best.x)), g1 = g(x1);
        double bx = std::abs(g0) <= std::abs(g1) ? x0 : x1;
        double bg = std::min(std::abs(g0), std::abs(g1));
        for (int it = 0; it < 25 && bg > tols().deriv_target; ++it) {
            if (g1 == g0) break;
            double x2 = x1 - g1 * (x1 - x0) / (g1 - g0);
            if (!(x2 > best.x - span && x2 < best.x + span)) break;
            const double g2 = g(x2);
            if (std::abs(g2) < bg) { bg = std::abs(g2); bx = x2; }
            x0 = x1; g0 = g1; x1 = x2; g1 = g2;
        }
        l2 = bx;
    }

    DualSolution sol;
    sol.n = n;
    sol.theta = theta;
    sol.lambda2 = l2;
    sol.lambda1 = h(l2);
    sol.value = 1.0 - std::ldexp(sol.lambda1, 1 - n);
    Mat slack = shifted(lam.op, z, l2);
    for (int i = 0; i < slack.dim(); ++i) slack(i, i) -= sol.lambda1;
    sol.slack_min_eig = min_eigenvalue(slack);
    sol.slack = std::move(slack);
    if (sol.slack_min_eig < -tols().psd)
        throw NumericalError("dual slack lost positivity: " + std::to_string(sol.slack_min_eig));
    return sol;
}

PrimalRecovery recover_primal(const LambdaOperator& lam, const DualSolution& dual) {
    const int d = lam.op.dim();
    const double target_trace = std::ldexp(1.0, 1 - dual.n);
    const Spectrum sp = eig_hermitian(dual.slack);

    std::vector<Vec> null_cols;
    for (int k = 0; k < d; ++k)
        if (sp.values[k] <= tols().null_space) null_cols.push_back(sp.column(k));

    PrimalRecovery rec;
    rec.null_dim = static_cast<int>(null_cols.size());
    if (null_cols.empty()) {
        null_cols.push_back(sp.column(0));  // best effort: least-violated direction
        rec.note = "slack has no null space at cut " + std::to_string(tols().null_space) +
                   "; gap not closed";
    }

    const Mat z = parity_z(dual.n);
    const int k = static_cast<int>(null_cols.size());
    Mat b(k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            b(i, j) = inner(null_cols[i], coinflip::apply(z, null_cols[j]));

    const Spectrum bsp = eig_hermitian(b);
    // Weights over null-space directions solving Tr(H)=target, Tr(H B)=0.
    std::vector<std::pair<int, double>> mix;
    int imin = 0;
    for (int i = 1; i < k; ++i)
        if (std::abs(bsp.values[i]) < std::abs(bsp.values[imin])) imin = i;
    if (std::abs(bsp.values[imin]) <= 1e-9) {
        mix.emplace_back(imin, target_trace);
    } else if (bsp.values.front() < 0.0 && bsp.values.back() > 0.0) {
        const double lo = bsp.values.front(), hi = bsp.values.back();
        mix.emplace_back(k - 1, target_trace * (-lo) / (hi - lo));
        mix.emplace_back(0, target_trace * hi / (hi - lo));
    } else {
        mix.emplace_back(imin, target_trace);
        if (rec.note.empty())
            rec.note = "null-space parity expectation is single-signed; gap not closed";
    }

    Mat gen(d);
    for (const auto& [col, w] : mix) {
        Vec u(d, 0.0);
        for (int i = 0; i < k; ++i) {
            const cplx ci = bsp.vectors(i, col);
            for (int r = 0; r < d; ++r) u[r] += ci * null_cols[i][r];
        }
        add_outer(gen, u, w);
    }

    rec.generator = std::move(gen);
    rec.value = 1.0 - trace(rec.generator * lam.op).real();
    rec.gap = dual.value - rec.value;
    rec.gap_closed = std::abs(rec.gap) <= tols().gap && rec.note.empty();
    return rec;
}

double bob_bias_n1_closed(double theta) { return 0.25 * (3.0 + std::sin(theta)); }

std::array<double, 5> quartic_coefficients(double theta) {
    const double c2 = std::cos(2 * theta), c4 = std::cos(4 * theta);
    return {64.0,
            16.0 * (c2 - 13.0),
            c4 - 56.0 * c2 + 199.0,
            -6.0 * (c4 - 8.0 * c2 + 7.0),
            9.0 * (c4 - 1.0)};
}

TwoQubitAnalytic two_qubit_analytic(double theta) {
    if (!(theta > 0.0 && theta < std::numbers::pi / 2))
        throw UsageError("two-qubit analytic path needs theta in (0, pi/2)");
    const auto c = quartic_coefficients(theta);
    const std::vector<double> coeffs(c.begin(), c.end());
    const std::vector<cplx> roots = poly_roots(coeffs);

    TwoQubitAnalytic res;
    res.theta = theta;
    std::copy(roots.begin(), roots.end(), res.roots.begin());

    const double c2 = std::cos(2 * theta);
    const LambdaOperator lam = build_lambda_fast(2, theta);
    const double floor_value = bob_bias_n1_closed(theta) - tols().psd;

    double best_value = -1.0;
    for (const cplx& root : roots) {
        if (std::abs(root.imag()) > tols().root_imag) continue;
        ++res.real_count;
        const double xi = root.real();
        const double den = 8.0 * xi * xi + (c2 - 13.0) * xi - 3.0 * (c2 - 1.0);
        if (std::abs(den) < 1e-12) continue;
        const double chi = ((c2 + 7.0) * xi * xi - 3.0 * (c2 + 3.0) * xi) / den;
        const double value = 1.0 - 0.25 * (xi + chi);
        Mat slack = lam.op;
        slack(0, 0) -= xi;
        slack(1, 1) -= chi;
        slack(2, 2) -= chi;
        slack(3, 3) -= xi;
        if (!is_psd(slack, tols().psd)) continue;
        if (value < floor_value) continue;
        ++res.admissible_count;
        if (value > best_value) {
            best_value = value;
            res.xi = xi;
            res.chi = chi;
            res.value = value;
        }
    }
    if (res.admissible_count == 0)
        throw NumericalError("two-qubit analytic path: no admissible quartic root at theta = " +
                             std::to_string(theta));
    res.lambda1 = 0.5 * (res.xi + res.chi);
    res.lambda2 = 0.5 * (res.chi - res.xi);
    return res;
}

double quartic_transition_theta() {
    auto real_count = [](double theta) {
        const auto c = quartic_coefficients(theta);
        return static_cast<int>(
            real_roots(std::vector<double>(c.begin(), c.end()), tols().root_imag).size());
    };
    double lo = 0.75, hi = 0.85;
    if (real_count(lo) != 4 || real_count(hi) != 2)
        throw NumericalError("quartic transition bracket invalidated");
    while (hi - lo > 1e-6) {
        const double mid = 0.5 * (lo + hi);
        (real_count(mid) == 4 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

Vec conjectured_state_n2(double f) {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    return {std::cos(f) * inv_sqrt2, 0.5, 0.5, std::sin(f) * inv_sqrt2};
}

double conjectured_objective_n2(double theta, double f) {
    const double st = std::sin(theta), s2t = std::sin(2 * theta);
    const double r2 = std::sqrt(2.0);
    return (12.0 * std::cos(2 * f) * std::cos(theta) + 2.0 * std::sin(2 * f) * st * st +
            std::cos(f) * (12.0 * r2 * st + 2.0 * r2 * s2t) +
            std::sin(f) * (12.0 * r2 * st - 2.0 * r2 * s2t) - std::cos(2 * theta) + 37.0) /
           64.0;
}

ConjecturedPrimal conjectured_primal_n2(double theta) {
    auto obj = [&](double f) { return conjectured_objective_n2(theta, f); };
    const int grid_n = 720;
    double bx = 0.0, bf = obj(0.0);
    for (int i = 1; i < grid_n; ++i) {
        const double f = 2.0 * std::numbers::pi * i / grid_n;
        const double v = obj(f);
        if (v > bf) { bf = v; bx = f; }
    }
    const double step = 2.0 * std::numbers::pi / grid_n;
    const GoldenResult g = golden_max(obj, bx - step, bx + step, 1e-12);
    ConjecturedPrimal res;
    res.theta = theta;
    res.f_star = g.x;
    res.value = g.fx;
    res.state = conjectured_state_n2(g.x);
    return res;
}

}  // namespace coinflip
