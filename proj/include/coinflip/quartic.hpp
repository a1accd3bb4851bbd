#pragma once

#include <vector>

#include "coinflip/linalg.hpp"

namespace coinflip {

// All roots of sum_k coeffs[k] x^{deg-k} (coeffs[0] != 0), via Durand-Kerner
// simultaneous iteration plus a Newton polish per root. Returned in no
// particular order.
std::vector<cplx> poly_roots(const std::vector<double>& coeffs);

// Roots with |Im| <= imag_tol, as reals, ascending.
std::vector<double> real_roots(const std::vector<double>& coeffs, double imag_tol);

cplx poly_eval(const std::vector<double>& coeffs, cplx x);

}
