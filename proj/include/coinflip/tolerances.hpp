#pragma once

namespace coinflip {

// Every numeric comparison in the library routes through this record.
// Defaults match the certification thresholds used by the acceptance suite.
struct Tolerances {
    double hermitian_sym = 1e-12;   // |A - A^dag| entrywise
    double entrywise     = 1e-12;   // oracle equivalence checks
    double eig_offdiag   = 1e-12;   // Jacobi stop: off-diag Frobenius, relative to input norm
    int    eig_sweeps    = 100;     // Jacobi sweep cap
    double eig_residual  = 1e-9;    // A v = mu v acceptance
    double psd           = 1e-9;    // min eigenvalue floor for PSD certification
    double constraint    = 1e-9;    // generator trace constraints, family completeness
    double gap           = 1e-6;    // certified duality gap target
    double null_space    = 1e-8;    // slack kernel eigenvalue cut
    double root_imag     = 1e-9;    // |Im| below which a polynomial root counts as real
    double golden_width  = 1e-12;   // dual line search bracket width
    double deriv_target  = 1e-11;   // dual polish: |d lambda_min / d lambda2| target
    double bisect_g      = 1e-9;    // fair point: |bob - alice| stop
    double bisect_width  = 1e-10;   // fair point: bracket width stop
};

// Mutable singleton so the verify tamper hook (COINFLIP_TAMPER) can inject a
// broken threshold and prove failure propagation end to end.
const Tolerances& tols();

}
