#include "coinflip/stats.hpp"

#include <array>
#include <cmath>

#include "coinflip/errors.hpp"

namespace coinflip {

namespace {

// P(a,x) by its power series, valid and fast for x < a+1.
double gamma_p_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    for (int n = 1; n < 500; ++n) {
        term *= x / (a + n);
        sum += term;
        if (std::abs(term) < std::abs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Q(a,x) by the Lentz continued fraction, valid for x >= a+1.
double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 500; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double regularized_gamma_p(double a, double x) {
    if (a <= 0.0 || x < 0.0) throw NumericalError("regularized_gamma_p: need a > 0, x >= 0");
    if (x == 0.0) return 0.0;
    return x < a + 1.0 ? gamma_p_series(a, x) : 1.0 - gamma_q_cf(a, x);
}

double regularized_gamma_q(double a, double x) {
    if (a <= 0.0 || x < 0.0) throw NumericalError("regularized_gamma_q: need a > 0, x >= 0");
    if (x == 0.0) return 1.0;
    return x < a + 1.0 ? 1.0 - gamma_p_series(a, x) : gamma_q_cf(a, x);
}

double chi_square_sf(double x, int dof) {
    if (dof < 1) throw NumericalError("chi_square_sf: dof >= 1");
    if (x <= 0.0) return 1.0;
    return regularized_gamma_q(0.5 * dof, 0.5 * x);
}

ChiSquareTest chi_square_independence(const std::vector<std::array<long long, 2>>& table) {
    const int rows = static_cast<int>(table.size());
    if (rows < 2) throw NumericalError("chi_square_independence: need >= 2 rows");
    double col[2] = {0.0, 0.0};
    std::vector<double> row(rows, 0.0);
    double total = 0.0;
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < 2; ++j) {
            row[i] += table[i][j];
            col[j] += table[i][j];
            total += table[i][j];
        }
    if (total <= 0.0) throw NumericalError("chi_square_independence: empty table");
    ChiSquareTest t;
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < 2; ++j) {
            const double expected = row[i] * col[j] / total;
            if (expected <= 0.0) throw NumericalError("chi_square_independence: empty margin");
            const double d = table[i][j] - expected;
            t.statistic += d * d / expected;
        }
    t.dof = rows - 1;  // (rows-1) * (cols-1) with cols = 2
    t.p_value = chi_square_sf(t.statistic, t.dof);
    return t;
}

}  // namespace coinflip
