#pragma once

#include "lpheat/families.hpp"

namespace lpheat {

// All kernels evaluate in log space with the exponentially scaled Bessel
// function, so the Gaussian factors and the e^{+z} inside I_nu never meet as
// raw doubles. Times below this floor lose all relative precision in the
// hyperbolic prefactors and are rejected.
inline constexpr double kMinTime = 1e-6;

// A modified family expressed through its base kernel: the kernel order is
// alpha + e_j, a global prefactor e^{-t}, e^{-t/2} or e^{-2t} applies, and
// for lag/convL an extra (x_j y_j)^{coord_power} rides along.
struct KernelForm {
    Family base;
    AlphaIndex alpha;      // kernel order parameters
    double log_prefactor;  // ln of the t-dependent modifier prefactor
    int j;                 // 1-based modified coordinate, 0 if none
    double coord_power;    // exponent of the (x_j y_j) factor
};
KernelForm kernel_form(const FamilyId& family, const AlphaIndex& alpha, double t);

// ln of the 1-d heat-kernel factor of a base family at order nu.
double kernel_log_factor(Family base, double nu, double t, double x, double y);

// ln G_t(x, y) of the (possibly modified) heat kernel, any dimension.
// Symmetric in (x, y) by construction and finite on all admissible inputs.
double kernel_log_eval(const FamilyId& family, const AlphaIndex& alpha, double t, const Point& x,
                       const Point& y);

// Spectral eigenvalue of the k-th 1-d eigenfunction.
double family_eigenvalue(Family base, int k, double alpha);

// Truncated eigenfunction expansion sum_{k<n} e^{-t lambda_k} phi_k(x) phi_k(y)
// for a 1-d Laguerre base family; the ground-truth oracle the closed forms
// are checked against. Throws NonConvergence when the last term is not yet
// below 1e-12 of the partial sum.
double kernel_series_oracle(Family base, double alpha, double t, double x, double y, int n_terms);

}  // namespace lpheat
