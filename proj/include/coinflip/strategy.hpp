#pragma once

#include <random>

#include "coinflip/states.hpp"

namespace coinflip {

// Symmetric receiver strategy, represented by the single generating POVM
// element. The full announcement family follows from conjugation by the
// bit-flip / sign-flip tensor rotations; the parity of the announced outcome
// tuple selects which classical bit the element serves.
struct CheatStrategy {
    int n = 0;
    Mat generator;

    // Validates: generator PSD, 2^{n-1} Tr(G) = 1, Tr(G parity_z) = 0, each
    // within the centralized tolerances. Throws StrategyError otherwise.
    static CheatStrategy checked(int n, Mat generator);
};

// The three generator constraints with their numeric residuals, plus the
// family completeness defect computed by explicit expansion.
struct GeneratorCheck {
    double psd_min_eig = 0.0;          // check 1: min eigenvalue of the generator
    double trace_residual = 0.0;       // check 2: |2^{n-1} Tr(G) - 1|
    double parity_residual = 0.0;      // check 3: |Tr(G parity_z)|
    double family_sum_residual = 0.0;  // max |class sum - identity|, both classes
    bool pass(double tol) const {
        return psd_min_eig >= -tol && trace_residual <= tol && parity_residual <= tol &&
               family_sum_residual <= tol;
    }
};
GeneratorCheck verify_generator_constraints(int n, const Mat& generator);

// sign(x & m) * |x ^ r> permutation conjugation: R A R^dag for R = Sx^r Sz^m.
Mat conjugate_flip(const Mat& a, unsigned r, unsigned m);

// Element announcing (outcome tuple r, basis tuple b).
Mat family_element(const CheatStrategy& s, unsigned r, unsigned b);

// Arbitrary (not necessarily symmetric) announcement family.
struct RawFamily {
    int n = 0;
    std::vector<Mat> elems;  // index r * 2^n + b

    Mat& at(unsigned r, unsigned b) { return elems[(static_cast<size_t>(r) << n) + b]; }
    const Mat& at(unsigned r, unsigned b) const { return elems[(static_cast<size_t>(r) << n) + b]; }
};

RawFamily expand_family(const CheatStrategy& s);

// Sum of the elements whose outcome tuple has parity cls.
Mat family_class_sum(const RawFamily& f, int cls);

// Group average over the rotation relabelings. Fixed point on families
// expanded from a generator; requires both class sums equal to the identity
// (throws StrategyError otherwise), which it then preserves exactly.
RawFamily symmetrize(const RawFamily& f);

// Exact success probability of the announcing family against an honest sender:
// average over the sender's preparation, the classical bit, and the family
// elements of the served class, counting announcements that survive the
// mismatch check. Deterministic (no sampling).
double family_success_probability(const RawFamily& f, double theta, int target);
// Same, conditioned on one value of the announced classical bit.
double family_success_given_bit(const RawFamily& f, double theta, int target, int classical_bit);

// Random PSD elements, then each parity class is normalized by conjugation
// with the inverse square root of its sum, so both class sums are identity.
RawFamily random_feasible_family(int n, std::mt19937_64& rng);

// Random generator satisfying all three constraints exactly (up to roundoff).
Mat random_feasible_generator(int n, std::mt19937_64& rng);

}
