#pragma once

#include <vector>

#include "lpheat/errors.hpp"

namespace lpheat {

struct QuadratureRule;

// Tuning knobs for the series/asymptotic evaluators below. Everything is a
// pure function of its arguments plus one of these, so custom configs are
// safe to use from any thread.
struct SpecFunConfig {
    double series_tol = 1e-14;         // relative cutoff for series tails, in (0, 1e-6)
    int max_terms = 10000;             // hard cap on series length, >= 100
    double asymptotic_switch_z = 0.0;  // <= 0 means: use 30 * max(1, nu^2)
    void validate() const;
};

const SpecFunConfig& default_specfun_config();

// ln Gamma(x) for x > 0. Lanczos (g = 7) plus one downward recurrence step
// below 0.5. Relative error stays under 1e-13 on [1e-3, 1e6].
double log_gamma(double x);

// Exponentially scaled modified Bessel function e^{-z} I_nu(z), nu > -1,
// z >= 0. Power series below the asymptotic switch, Hankel expansion above;
// the scaling keeps every kernel evaluation finite however large z gets.
// z = 0 returns 1 for nu = 0, 0 for nu > 0 and +inf for nu in (-1,0)
// (the scaled value genuinely diverges there).
double bessel_i_scaled(double nu, double z,
                       const SpecFunConfig& cfg = default_specfun_config());

// ln of the above; preferred inside kernel assembly where tiny z would
// underflow the linear-scale value.
double log_bessel_i_scaled(double nu, double z,
                           const SpecFunConfig& cfg = default_specfun_config());

// ln( e^{-z} I_nu(z) / (z/2)^nu ), finite for every z >= 0 (its z -> 0 limit
// is -ln Gamma(nu+1)). Kernels combine the (z/2)^nu power with their own
// coordinate powers analytically and add this, which keeps them exact even
// where z alone would round into the denormal range.
double log_bessel_i_scaled_reduced(double nu, double z,
                                   const SpecFunConfig& cfg = default_specfun_config());

// Confluent hypergeometric 1F1(a; b; z), b not a non-positive integer.
// Negative z is routed through the transform 1F1(a;b;z) = e^z 1F1(b-a;b;-z)
// so the series that actually runs has monotone terms. Returns +inf when the
// value overflows a double.
double hyp1f1(double a, double b, double z,
              const SpecFunConfig& cfg = default_specfun_config());

// Normalized Laguerre polynomial
//   (Gamma(k+1)/Gamma(k+alpha+1))^{1/2} L_k^alpha(x),  alpha > -1, x >= 0.
// Three-term recurrence with magnitude-triggered rescaling, so intermediate
// overflow cannot occur even when |L_k^alpha(x)| itself leaves double range.
double laguerre_normalized(int k, double alpha, double x);

// All orders 0..k_max at once (one recurrence pass).
std::vector<double> laguerre_normalized_sequence(int k_max, double alpha, double x);

// Closed form of int_0^inf y^{beta-1} e^{-p y^2} I_nu(q y) dy for p, q > 0,
// beta + nu > 0, nu > -1:
//   q^nu / (2^{nu+1} p^{(beta+nu)/2}) * Gamma((beta+nu)/2)/Gamma(nu+1)
//     * 1F1((beta+nu)/2; nu+1; q^2/(4p)).
double bessel_gauss_moment(double p, double q, double beta, double nu,
                           const SpecFunConfig& cfg = default_specfun_config());

// |quadrature LHS - closed RHS| / max(1, |RHS|) for the integral above. The
// two sides share no code path, so a small residual certifies both.
double bessel_gauss_moment_residual(double p, double q, double beta, double nu,
                                    const QuadratureRule& quad,
                                    const SpecFunConfig& cfg = default_specfun_config());

}  // namespace lpheat
