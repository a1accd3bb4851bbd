#include "coinflip/quartic.hpp"

#include <algorithm>
#include <cmath>

namespace coinflip {

cplx poly_eval(const std::vector<double>& coeffs, cplx x) {
    cplx v = 0.0;
    for (double c : coeffs) v = v * x + c;
    return v;
}

static cplx poly_eval_c(const std::vector<cplx>& coeffs, cplx x) {
    cplx v = 0.0;
    for (const cplx& c : coeffs) v = v * x + c;
    return v;
}

std::vector<cplx> poly_roots(const std::vector<double>& coeffs) {
    if (coeffs.size() < 2 || coeffs[0] == 0.0)
        throw NumericalError("poly_roots: need degree >= 1 with nonzero leading coefficient");
    const int deg = static_cast<int>(coeffs.size()) - 1;
    std::vector<cplx> monic(coeffs.size());
    for (size_t i = 0; i < coeffs.size(); ++i) monic[i] = coeffs[i] / coeffs[0];

    // Radius bound max(1, sum |c_k|) keeps the initial ring around all roots.
    double radius = 0.0;
    for (int i = 1; i <= deg; ++i) radius += std::abs(monic[i]);
    radius = std::max(1.0, radius);

    std::vector<cplx> z(deg);
    const cplx seed(0.4, 0.9);  // non-real, off the unit circle, standard choice
    cplx w = 1.0;
    for (int k = 0; k < deg; ++k) {
        w *= seed;
        z[k] = radius * w;
    }

    for (int iter = 0; iter < 500; ++iter) {
        double step = 0.0;
        for (int k = 0; k < deg; ++k) {
            cplx den = 1.0;
            for (int j = 0; j < deg; ++j)
                if (j != k) den *= z[k] - z[j];
            if (std::abs(den) < 1e-300) den = 1e-300;
            const cplx d = poly_eval_c(monic, z[k]) / den;
            z[k] -= d;
            step = std::max(step, std::abs(d));
        }
        if (step < 1e-14 * std::max(1.0, radius)) break;
    }

    // Newton polish; near-multiple roots converge only linearly under
    // Durand-Kerner, a few Newton steps recover most of the residual.
    std::vector<cplx> deriv(deg);
    for (int i = 0; i < deg; ++i) deriv[i] = monic[i] * double(deg - i);
    for (auto& r : z)
        for (int it = 0; it < 8; ++it) {
            const cplx dp = poly_eval_c(deriv, r);
            if (std::abs(dp) < 1e-300) break;
            const cplx d = poly_eval_c(monic, r) / dp;
            r -= d;
            if (std::abs(d) < 1e-16 * std::max(1.0, std::abs(r))) break;
        }
    return z;
}

std::vector<double> real_roots(const std::vector<double>& coeffs, double imag_tol) {
    std::vector<double> out;
    for (const cplx& r : poly_roots(coeffs))
        if (std::abs(r.imag()) <= imag_tol) out.push_back(r.real());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace coinflip
