#include "coinflip/strategy.hpp"

#include <cmath>
#include <string>

namespace coinflip {

GeneratorCheck verify_generator_constraints(int n, const Mat& generator) {
    require_hermitian(generator, tols().hermitian_sym);
    GeneratorCheck c;
    c.psd_min_eig = min_eigenvalue(generator);
    c.trace_residual = std::abs(std::ldexp(trace(generator).real(), n - 1) - 1.0);
    c.parity_residual = std::abs(trace(generator * parity_z(n)).real());
    if (n <= 4) {
        const RawFamily fam = expand_family(CheatStrategy{n, generator});
        const Mat id = identity(1 << n);
        c.family_sum_residual = std::max(max_abs_diff(family_class_sum(fam, 0), id),
                                         max_abs_diff(family_class_sum(fam, 1), id));
    } else {
        // Explicit expansion holds 4^n matrices; for large registers use the
        // twirl identity instead: each class sum equals
        // 2^{n-1} Tr(G) * I +- 2^{n-1} Tr(G parity_z) * parity_z.
        c.family_sum_residual =
            c.trace_residual + std::ldexp(c.parity_residual, n - 1);
    }
    return c;
}

CheatStrategy CheatStrategy::checked(int n, Mat generator) {
    GeneratorCheck c;
    c.psd_min_eig = min_eigenvalue(generator);
    c.trace_residual = std::abs(std::ldexp(trace(generator).real(), n - 1) - 1.0);
    c.parity_residual = std::abs(trace(generator * parity_z(n)).real());
    if (c.psd_min_eig < -tols().psd || c.trace_residual > tols().constraint ||
        c.parity_residual > tols().constraint)
        throw StrategyError("invalid generator: min eig " + std::to_string(c.psd_min_eig) +
                            ", trace residual " + std::to_string(c.trace_residual) +
                            ", parity trace residual " + std::to_string(c.parity_residual));
    return {n, std::move(generator)};
}

Mat conjugate_flip(const Mat& a, unsigned r, unsigned m) {
    const int d = a.dim();
    Mat out(d);
    auto sign = [&](unsigned x) { return parity(x & m) ? -1.0 : 1.0; };
    for (int u = 0; u < d; ++u)
        for (int v = 0; v < d; ++v)
            out(u, v) = sign(u ^ r) * sign(v ^ r) * a(u ^ r, v ^ r);
    return out;
}

Mat family_element(const CheatStrategy& s, unsigned r, unsigned b) {
    return conjugate_flip(s.generator, r, b ^ r);
}

RawFamily expand_family(const CheatStrategy& s) {
    const unsigned d = 1u << s.n;
    RawFamily f;
    f.n = s.n;
    f.elems.resize(static_cast<size_t>(d) * d);
    for (unsigned r = 0; r < d; ++r)
        for (unsigned b = 0; b < d; ++b) f.at(r, b) = family_element(s, r, b);
    return f;
}

Mat family_class_sum(const RawFamily& f, int cls) {
    const unsigned d = 1u << f.n;
    Mat sum(static_cast<int>(d));
    for (unsigned r = 0; r < d; ++r) {
        if (parity(r) != cls) continue;
        for (unsigned b = 0; b < d; ++b) sum += f.at(r, b);
    }
    return sum;
}

RawFamily symmetrize(const RawFamily& f) {
    const unsigned d = 1u << f.n;
    const Mat id = identity(static_cast<int>(d));
    for (int cls : {0, 1}) {
        const double dev = max_abs_diff(family_class_sum(f, cls), id);
        if (dev > tols().constraint)
            throw StrategyError("symmetrize: class " + std::to_string(cls) +
                                " does not sum to identity (deviation " + std::to_string(dev) + ")");
    }
    RawFamily out;
    out.n = f.n;
    out.elems.assign(f.elems.size(), Mat(static_cast<int>(d)));
    const double w = 1.0 / (static_cast<double>(d) * d);
    for (unsigned r = 0; r < d; ++r)
        for (unsigned b = 0; b < d; ++b) {
            Mat acc(static_cast<int>(d));
            for (unsigned u = 0; u < d; ++u)
                for (unsigned v = 0; v < d; ++v)
                    acc += conjugate_flip(f.at(r ^ u, b ^ v ^ u), u, v);
            out.at(r, b) = w * acc;
        }
    return out;
}

namespace {

double success_sum(const RawFamily& f, double theta, int target, int classical_bit) {
    const int n = f.n;
    const unsigned d = 1u << n;
    const int cls = classical_bit ^ target;
    double total = 0.0;
    const double w = 1.0 / (static_cast<double>(d) * d);  // uniform preparation
    for (unsigned a = 0; a < d; ++a)
        for (unsigned s = 0; s < d; ++s) {
            const Vec psi = prep_state(n, theta, {a, s});
            for (unsigned r = 0; r < d; ++r) {
                if (parity(r) != cls) continue;
                for (unsigned b = 0; b < d; ++b) {
                    if (abort_triggered(n, a, s, b, r)) continue;
                    total += w * expectation(f.at(r, b), psi);
                }
            }
        }
    return total;
}

}  // namespace

double family_success_given_bit(const RawFamily& f, double theta, int target, int classical_bit) {
    return success_sum(f, theta, target, classical_bit);
}

double family_success_probability(const RawFamily& f, double theta, int target) {
    return 0.5 * (success_sum(f, theta, target, 0) + success_sum(f, theta, target, 1));
}

RawFamily random_feasible_family(int n, std::mt19937_64& rng) {
    const unsigned d = 1u << n;
    std::normal_distribution<double> gauss(0.0, 1.0);
    RawFamily f;
    f.n = n;
    f.elems.resize(static_cast<size_t>(d) * d);
    for (auto& e : f.elems) {
        Mat g(static_cast<int>(d));
        for (int i = 0; i < g.dim(); ++i)
            for (int j = 0; j < g.dim(); ++j) g(i, j) = cplx(gauss(rng), gauss(rng));
        e = g * adjoint(g);
        for (int i = 0; i < e.dim(); ++i) e(i, i) += 0.05;  // keep the class sums well conditioned
    }
    for (int cls : {0, 1}) {
        const Mat t = apply_spectral(family_class_sum(f, cls),
                                     [](double x) { return 1.0 / std::sqrt(x); });
        for (unsigned r = 0; r < d; ++r) {
            if (parity(r) != cls) continue;
            for (unsigned b = 0; b < d; ++b) f.at(r, b) = t * f.at(r, b) * t;
        }
    }
    return f;
}

Mat random_feasible_generator(int n, std::mt19937_64& rng) {
    const unsigned d = 1u << n;
    std::normal_distribution<double> gauss(0.0, 1.0);
    Mat g(static_cast<int>(d));
    for (int i = 0; i < g.dim(); ++i)
        for (int j = 0; j < g.dim(); ++j) g(i, j) = cplx(gauss(rng), gauss(rng));
    Mat psd = g * adjoint(g);
    // Averaging with the first-qubit flip conjugate cancels the full parity
    // string component (the flip anticommutes with it), keeping positivity.
    const Mat balanced = 0.5 * (psd + conjugate_flip(psd, 1u << (n - 1), 0));
    return (std::ldexp(1.0, 1 - n) / trace(balanced).real()) * balanced;
}

}  // namespace coinflip
