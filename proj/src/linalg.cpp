#include "coinflip/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <string>

namespace coinflip {

const Tolerances& tols() {
    static const Tolerances t = [] {
        Tolerances t;
        // Test hook: a tampered threshold must propagate to a failing verify run.
        if (const char* e = std::getenv("COINFLIP_TAMPER"); e && std::string(e) == "gap")
            t.gap = -1.0;
        return t;
    }();
    return t;
}

Mat& Mat::operator+=(const Mat& o) {
    for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
}

Mat& Mat::operator-=(const Mat& o) {
    for (size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
}

Mat& Mat::operator*=(cplx s) {
    for (auto& x : a_) x *= s;
    return *this;
}

Mat operator+(Mat a, const Mat& b) { return a += b; }
Mat operator-(Mat a, const Mat& b) { return a -= b; }
Mat operator*(double s, Mat a) { return a *= cplx(s, 0.0); }
Mat operator*(cplx s, Mat a) { return a *= s; }

Mat operator*(const Mat& a, const Mat& b) {
    const int n = a.dim();
    Mat c(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx{}) continue;
            for (int j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

Mat identity(int n) {
    Mat m(n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Mat adjoint(const Mat& a) {
    const int n = a.dim();
    Mat b(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) b(i, j) = std::conj(a(j, i));
    return b;
}

cplx trace(const Mat& a) {
    cplx t = 0.0;
    for (int i = 0; i < a.dim(); ++i) t += a(i, i);
    return t;
}

double frobenius(const Mat& a) {
    double s = 0.0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

double max_abs_diff(const Mat& a, const Mat& b) {
    double m = 0.0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

void add_outer(Mat& a, const Vec& v, double w) {
    const int n = a.dim();
    for (int i = 0; i < n; ++i) {
        const cplx wi = w * v[i];
        for (int j = 0; j < n; ++j) a(i, j) += wi * std::conj(v[j]);
    }
}

Vec apply(const Mat& a, const Vec& v) {
    const int n = a.dim();
    Vec out(n, 0.0);
    for (int i = 0; i < n; ++i) {
        cplx s = 0.0;
        for (int j = 0; j < n; ++j) s += a(i, j) * v[j];
        out[i] = s;
    }
    return out;
}

cplx inner(const Vec& a, const Vec& b) {
    cplx s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

double expectation(const Mat& a, const Vec& v) { return inner(v, coinflip::apply(a, v)).real(); }

double vnorm(const Vec& v) { return std::sqrt(inner(v, v).real()); }

Vec kron_vec(const Vec& a, const Vec& b) {
    Vec out(a.size() * b.size());
    size_t k = 0;
    for (const cplx& x : a)
        for (const cplx& y : b) out[k++] = x * y;
    return out;
}

void require_hermitian(const Mat& a, double tol) {
    const int n = a.dim();
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            const cplx x = a(i, j), y = a(j, i);
            if (!std::isfinite(x.real()) || !std::isfinite(x.imag()))
                throw NumericalError("non-finite matrix entry at (" + std::to_string(i) + "," +
                                     std::to_string(j) + ")");
            if (std::abs(x - std::conj(y)) > tol)
                throw NumericalError("matrix not Hermitian: |A[i][j] - conj(A[j][i])| = " +
                                     std::to_string(std::abs(x - std::conj(y))));
        }
}

int max_register_qubits() {
    static const int cap = [] {
        if (const char* e = std::getenv("COINFLIP_MAX_N")) {
            const int v = std::atoi(e);
            if (v >= 1) return std::min(v, 10);
        }
        return 10;
    }();
    return cap;
}

static void check_register_dim(long long d) {
    if (d > (1LL << max_register_qubits()))
        throw SizingError("operator dimension " + std::to_string(d) +
                          " exceeds register cap 2^" + std::to_string(max_register_qubits()));
}

Mat kron(const Mat& a, const Mat& b) {
    if (a.dim() < 1 || b.dim() < 1) throw SizingError("kron: empty factor");
    const long long d = static_cast<long long>(a.dim()) * b.dim();
    check_register_dim(d);
    Mat out(static_cast<int>(d));
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) {
            const cplx aij = a(i, j);
            if (aij == cplx{}) continue;
            for (int k = 0; k < b.dim(); ++k)
                for (int l = 0; l < b.dim(); ++l)
                    out(i * b.dim() + k, j * b.dim() + l) = aij * b(k, l);
        }
    return out;
}

Mat pauli(Pauli p) {
    Mat m(2);
    switch (p) {
        case Pauli::I: m(0, 0) = 1; m(1, 1) = 1; break;
        case Pauli::X: m(0, 1) = 1; m(1, 0) = 1; break;
        case Pauli::Y: m(0, 1) = cplx(0, -1); m(1, 0) = cplx(0, 1); break;
        case Pauli::Z: m(0, 0) = 1; m(1, 1) = -1; break;
    }
    return m;
}

Mat pauli_string(int n, const std::vector<Pauli>& letters) {
    if (n < 1 || static_cast<int>(letters.size()) != n)
        throw SizingError("pauli_string: need one letter per qubit");
    const long long d = 1LL << n;
    check_register_dim(d);
    Mat m(static_cast<int>(d));
    // Each Pauli letter acts as a signed (possibly bit-flipping) permutation:
    // X: |b> -> |b^1>, Z: |b> -> (-1)^b |b>, Y: |b> -> i(-1)^b |b^1>.
    for (long long col = 0; col < d; ++col) {
        long long row = col;
        cplx phase = 1.0;
        for (int i = 0; i < n; ++i) {
            const int bit = static_cast<int>((col >> (n - 1 - i)) & 1);
            switch (letters[i]) {
                case Pauli::I: break;
                case Pauli::X: row ^= 1LL << (n - 1 - i); break;
                case Pauli::Z: phase *= (bit ? -1.0 : 1.0); break;
                case Pauli::Y:
                    row ^= 1LL << (n - 1 - i);
                    phase *= cplx(0, 1) * (bit ? -1.0 : 1.0);
                    break;
            }
        }
        m(static_cast<int>(row), static_cast<int>(col)) = phase;
    }
    return m;
}

static Mat mask_string(int n, unsigned mask, Pauli letter) {
    std::vector<Pauli> letters(n, Pauli::I);
    for (int i = 0; i < n; ++i)
        if ((mask >> (n - 1 - i)) & 1) letters[i] = letter;
    return pauli_string(n, letters);
}

Mat pauli_x_mask(int n, unsigned mask) { return mask_string(n, mask, Pauli::X); }
Mat pauli_z_mask(int n, unsigned mask) { return mask_string(n, mask, Pauli::Z); }

Mat parity_z(int n) { return pauli_z_mask(n, (1u << n) - 1); }

Vec Spectrum::column(int k) const {
    Vec v(vectors.dim());
    for (int i = 0; i < vectors.dim(); ++i) v[i] = vectors(i, k);
    return v;
}

namespace {

double offdiag_norm(const Mat& a) {
    double s = 0.0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

// One cyclic Jacobi diagonalization pass over a (symmetrized in place).
// Accumulates rotations into *v when v is non-null.
void jacobi(Mat& a, Mat* v) {
    const int n = a.dim();
    const double base = frobenius(a);
    if (base == 0.0) return;
    const double target = tols().eig_offdiag * base;
    for (int sweep = 0; sweep < tols().eig_sweeps; ++sweep) {
        if (offdiag_norm(a) <= target) return;
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q) {
                const cplx alpha = a(p, q);
                const double aa = std::abs(alpha);
                if (aa < 1e-300) continue;
                const double tau = (a(p, p).real() - a(q, q).real()) / (2.0 * aa);
                const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const cplx eip = alpha / aa;      // e^{i phi}
                const cplx sem = s * std::conj(eip);
                const cplx sep = s * eip;
                // A <- A J, then A <- J^dag A; composition equals J^dag A J.
                for (int k = 0; k < n; ++k) {
                    const cplx akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp + sem * akq;
                    a(k, q) = -sep * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const cplx apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk + sep * aqk;
                    a(q, k) = -sem * apk + c * aqk;
                }
                if (v)
                    for (int k = 0; k < n; ++k) {
                        const cplx vkp = (*v)(k, p), vkq = (*v)(k, q);
                        (*v)(k, p) = c * vkp + sem * vkq;
                        (*v)(k, q) = -sep * vkp + c * vkq;
                    }
            }
    }
    throw NumericalError("jacobi: off-diagonal residual " + std::to_string(offdiag_norm(a)) +
                         " after " + std::to_string(tols().eig_sweeps) + " sweeps (target " +
                         std::to_string(target) + ")");
}

Mat symmetrized(const Mat& a) {
    require_hermitian(a, tols().hermitian_sym);
    const int n = a.dim();
    Mat b(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) b(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
    return b;
}

}  // namespace

Spectrum eig_hermitian(const Mat& a) {
    Mat w = symmetrized(a);
    Mat v = identity(a.dim());
    jacobi(w, &v);
    const int n = a.dim();
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](int i, int j) { return w(i, i).real() < w(j, j).real(); });
    Spectrum sp;
    sp.values.resize(n);
    sp.vectors = Mat(n);
    for (int k = 0; k < n; ++k) {
        sp.values[k] = w(idx[k], idx[k]).real();
        for (int i = 0; i < n; ++i) sp.vectors(i, k) = v(i, idx[k]);
    }
    return sp;
}

std::vector<double> eigenvalues(const Mat& a) {
    Mat w = symmetrized(a);
    jacobi(w, nullptr);
    std::vector<double> vals(a.dim());
    for (int i = 0; i < a.dim(); ++i) vals[i] = w(i, i).real();
    std::sort(vals.begin(), vals.end());
    return vals;
}

double min_eigenvalue(const Mat& a) { return eigenvalues(a).front(); }

bool is_psd(const Mat& a, double tol) { return min_eigenvalue(a) >= -tol; }

Mat apply_spectral(const Mat& a, const std::function<double(double)>& f) {
    const Spectrum sp = eig_hermitian(a);
    Mat out(a.dim());
    for (int k = 0; k < a.dim(); ++k) add_outer(out, sp.column(k), f(sp.values[k]));
    return out;
}

}  // namespace coinflip
