#pragma once

#include <array>
#include <vector>

namespace coinflip {

// Regularized incomplete gamma P(a,x) and Q(a,x) = 1 - P(a,x); series expansion
// for x < a+1, Lentz continued fraction otherwise.
double regularized_gamma_p(double a, double x);
double regularized_gamma_q(double a, double x);

// Survival function of the chi-square distribution with dof degrees of freedom.
double chi_square_sf(double x, int dof);

struct ChiSquareTest {
    double statistic = 0.0;
    int dof = 0;
    double p_value = 1.0;
};

// Pearson chi-square test of independence on an R x 2 contingency table
// (rows: conditions, columns: binary outcome counts).
ChiSquareTest chi_square_independence(const std::vector<std::array<long long, 2>>& table);

}
