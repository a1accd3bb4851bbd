#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "coinflip/errors.hpp"
#include "coinflip/tolerances.hpp"

namespace coinflip {

using cplx = std::complex<double>;
using Vec  = std::vector<cplx>;

// Dense complex square matrix, row-major. Carries register operators of
// dimension 2^N; Hermiticity is a property checked where required, not a type.
class Mat {
public:
    Mat() = default;
    explicit Mat(int n) : n_(n), a_(static_cast<size_t>(n) * n) {}

    int dim() const { return n_; }
    cplx&       operator()(int i, int j)       { return a_[static_cast<size_t>(i) * n_ + j]; }
    const cplx& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }

    Mat& operator+=(const Mat& o);
    Mat& operator-=(const Mat& o);
    Mat& operator*=(cplx s);

private:
    int n_ = 0;
    std::vector<cplx> a_;
};

Mat operator+(Mat a, const Mat& b);
Mat operator-(Mat a, const Mat& b);
Mat operator*(const Mat& a, const Mat& b);
Mat operator*(double s, Mat a);
Mat operator*(cplx s, Mat a);

Mat identity(int n);
Mat adjoint(const Mat& a);
cplx trace(const Mat& a);
double frobenius(const Mat& a);
double max_abs_diff(const Mat& a, const Mat& b);

// A += w |v><v|
void add_outer(Mat& a, const Vec& v, double w);

Vec apply(const Mat& a, const Vec& v);
cplx inner(const Vec& a, const Vec& b);          // <a|b>, conjugation on the left
double expectation(const Mat& a, const Vec& v);  // Re <v|A|v>
double vnorm(const Vec& v);
Vec kron_vec(const Vec& a, const Vec& b);
// Tensor product with the left factor on the high-order index bits, matching
// kron_vec and pauli_string ordering. Throws SizingError if the combined
// dimension exceeds the register cap.
Mat kron(const Mat& a, const Mat& b);

// Throws NumericalError if any entry is non-finite or |A - A^dag| exceeds tol.
void require_hermitian(const Mat& a, double tol);

// Register size cap: COINFLIP_MAX_N (clamped to [1,10]), default 10.
int max_register_qubits();

enum class Pauli { I, X, Y, Z };

Mat pauli(Pauli p);
// Ordered tensor product; qubit 0 is the leftmost factor (most significant bit
// of the basis index). Built directly as a signed permutation, never by kron.
Mat pauli_string(int n, const std::vector<Pauli>& letters);
// Sigma_x^u / Sigma_z^w for bitmask u, w (bit i of the mask = qubit i, MSB-first).
Mat pauli_x_mask(int n, unsigned mask);
Mat pauli_z_mask(int n, unsigned mask);
// Full parity string: tensor of sigma_z on every qubit.
Mat parity_z(int n);

struct Spectrum {
    std::vector<double> values;  // ascending
    Mat vectors;                 // orthonormal columns, aligned with values
    Vec column(int k) const;
};

// Cyclic Jacobi for Hermitian matrices. Deterministic sweep order; stops when
// the off-diagonal Frobenius norm falls below tols().eig_offdiag relative to
// the input norm; throws NumericalError after tols().eig_sweeps sweeps.
Spectrum eig_hermitian(const Mat& a);
std::vector<double> eigenvalues(const Mat& a);  // same solver, no vector tracking
double min_eigenvalue(const Mat& a);
bool is_psd(const Mat& a, double tol);

// V f(D) V^dag for the eigendecomposition of a Hermitian a.
Mat apply_spectral(const Mat& a, const std::function<double(double)>& f);

}
