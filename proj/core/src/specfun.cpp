#include "lpheat/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "lpheat/quadrature.hpp"

namespace lpheat {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLnSqrt2Pi = 0.91893853320467274178;

[[noreturn]] void domain_fail(const std::string& what) { throw std::domain_error(what); }

}  // namespace

void SpecFunConfig::validate() const {
    if (!(series_tol > 0.0 && series_tol < 1e-6))
        domain_fail("SpecFunConfig: series_tol must lie in (0, 1e-6)");
    if (max_terms < 100) domain_fail("SpecFunConfig: max_terms must be >= 100");
}

const SpecFunConfig& default_specfun_config() {
    static const SpecFunConfig cfg{};
    return cfg;
}

double log_gamma(double x) {
    if (!(x > 0.0)) domain_fail("log_gamma: x must be > 0");
    if (x < 0.5) return log_gamma(x + 1.0) - std::log(x);

    // Lanczos, g = 7, 9 coefficients.
    static constexpr double c[9] = {
        0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
        771.32342877765313,      -176.61502916214059,    12.507343278686905,
        -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};
    const double z = x - 1.0;
    double a = c[0];
    for (int k = 1; k < 9; ++k) a += c[k] / (z + k);
    const double t = z + 7.5;
    return kLnSqrt2Pi + (z + 0.5) * std::log(t) - t + std::log(a);
}

namespace {

// ln of e^{-z} I_nu(z) / (z/2)^nu by the power series; all terms positive.
double log_bessel_series_reduced(double nu, double z, const SpecFunConfig& cfg) {
    const double q = 0.25 * z * z;
    double term = 1.0, sum = 1.0;
    for (int k = 0; k < cfg.max_terms; ++k) {
        term *= q / ((k + 1.0) * (nu + k + 1.0));
        sum += term;
        if (term < cfg.series_tol * sum) {
            return -z - log_gamma(nu + 1.0) + std::log(sum);
        }
    }
    throw NonConvergence("bessel_i_scaled: power series hit max_terms");
}

// ln of e^{-z} I_nu(z) ~ -ln(sqrt(2 pi z)) + ln sum_k (-1)^k a_k(nu)/z^k.
double log_bessel_asymptotic(double nu, double z) {
    const double mu = 4.0 * nu * nu;
    double term = 1.0, sum = 1.0, prev = kInf;
    for (int k = 1; k <= 40; ++k) {
        const double d = 2.0 * k - 1.0;
        term *= -(mu - d * d) / (8.0 * k * z);
        if (std::abs(term) >= prev && k > 8) break;  // divergent tail reached
        sum += term;
        prev = std::abs(term);
        if (prev < 1e-17 * std::abs(sum) && k >= 8) break;
    }
    return -0.5 * std::log(2.0 * M_PI * z) + std::log(sum);
}

}  // namespace

double log_bessel_i_scaled_reduced(double nu, double z, const SpecFunConfig& cfg) {
    cfg.validate();
    if (!(nu > -1.0)) domain_fail("bessel_i_scaled: order must be > -1");
    if (!(z >= 0.0)) domain_fail("bessel_i_scaled: argument must be >= 0");
    const double zswitch =
        cfg.asymptotic_switch_z > 0.0 ? cfg.asymptotic_switch_z : 30.0 * std::max(1.0, nu * nu);
    if (z <= zswitch) return log_bessel_series_reduced(nu, z, cfg);
    return log_bessel_asymptotic(nu, z) - nu * std::log(0.5 * z);
}

double log_bessel_i_scaled(double nu, double z, const SpecFunConfig& cfg) {
    cfg.validate();
    if (!(nu > -1.0)) domain_fail("bessel_i_scaled: order must be > -1");
    if (!(z >= 0.0)) domain_fail("bessel_i_scaled: argument must be >= 0");
    if (z == 0.0) {
        if (nu == 0.0) return 0.0;
        return nu > 0.0 ? -kInf : kInf;
    }
    return nu * std::log(0.5 * z) + log_bessel_i_scaled_reduced(nu, z, cfg);
}

double bessel_i_scaled(double nu, double z, const SpecFunConfig& cfg) {
    return std::exp(log_bessel_i_scaled(nu, z, cfg));
}

namespace {

// Direct Kummer series; requires z >= 0 at call sites that care about
// cancellation (all terms then share signs after a finite prefix).
double hyp1f1_series(double a, double b, double z, const SpecFunConfig& cfg) {
    double term = 1.0, sum = 1.0;
    for (int k = 0; k < cfg.max_terms; ++k) {
        if (a + k == 0.0) return sum;  // polynomial case terminates
        term *= (a + k) / (b + k) * z / (k + 1.0);
        sum += term;
        if (std::isinf(sum)) return kInf;
        if (std::abs(term) < cfg.series_tol * std::abs(sum)) return sum;
    }
    throw NonConvergence("hyp1f1: series hit max_terms");
}

}  // namespace

double hyp1f1(double a, double b, double z, const SpecFunConfig& cfg) {
    cfg.validate();
    if (b == 0.0 || (b < 0.0 && b == std::floor(b)))
        domain_fail("hyp1f1: b must not be a non-positive integer");
    if (z == 0.0) return 1.0;
    if (z < 0.0) {
        const double s = hyp1f1_series(b - a, b, -z, cfg);
        if (s > 0.0) return std::exp(z + std::log(s));
        return std::exp(z) * s;
    }
    return hyp1f1_series(a, b, z, cfg);
}

namespace {

// Recurrence state with a log-scale offset; rescales whenever the raw values
// threaten double range, which replaces a hard order cutoff (x as large as
// 1e4 overflows the plain recurrence well before k = 150).
struct ScaledPair {
    double lo = 0.0, hi = 1.0;  // L_{k-1}, L_k up to exp(offset)
    double offset = 0.0;

    void rescale() {
        const double m = std::max(std::abs(lo), std::abs(hi));
        if (m > 1e250) {
            lo *= 1e-250;
            hi *= 1e-250;
            offset += 250.0 * M_LN10;
        } else if (m > 0.0 && m < 1e-250) {
            lo *= 1e250;
            hi *= 1e250;
            offset -= 250.0 * M_LN10;
        }
    }
};

double assemble(double value, double log_scale) {
    if (value == 0.0) return 0.0;
    const double mag = log_scale + std::log(std::abs(value));
    return std::copysign(std::exp(mag), value);
}

}  // namespace

std::vector<double> laguerre_normalized_sequence(int k_max, double alpha, double x) {
    if (!(alpha > -1.0)) domain_fail("laguerre_normalized: alpha must be > -1");
    if (k_max < 0) domain_fail("laguerre_normalized: k must be >= 0");
    if (!(x >= 0.0)) domain_fail("laguerre_normalized: x must be >= 0");

    std::vector<double> out(static_cast<std::size_t>(k_max) + 1);
    ScaledPair s;
    double log_norm = -0.5 * log_gamma(alpha + 1.0);  // ln (Gamma(k+1)/Gamma(k+alpha+1))^{1/2} at k=0
    out[0] = assemble(s.hi, s.offset + log_norm);
    if (k_max == 0) return out;

    s.lo = 1.0;
    s.hi = 1.0 + alpha - x;
    log_norm += 0.5 * (std::log(1.0) - std::log(1.0 + alpha));
    out[1] = assemble(s.hi, s.offset + log_norm);

    for (int k = 1; k < k_max; ++k) {
        const double next = ((2.0 * k + 1.0 + alpha - x) * s.hi - (k + alpha) * s.lo) / (k + 1.0);
        s.lo = s.hi;
        s.hi = next;
        s.rescale();
        log_norm += 0.5 * (std::log(k + 1.0) - std::log(k + 1.0 + alpha));
        out[static_cast<std::size_t>(k) + 1] = assemble(s.hi, s.offset + log_norm);
    }
    return out;
}

double laguerre_normalized(int k, double alpha, double x) {
    return laguerre_normalized_sequence(k, alpha, x).back();
}

double bessel_gauss_moment(double p, double q, double beta, double nu, const SpecFunConfig& cfg) {
    if (!(p > 0.0 && q > 0.0)) domain_fail("bessel_gauss_moment: p and q must be > 0");
    if (!(beta + nu > 0.0)) domain_fail("bessel_gauss_moment: beta + nu must be > 0");
    if (!(nu > -1.0)) domain_fail("bessel_gauss_moment: nu must be > -1");
    const double h = 0.5 * (beta + nu);
    const double log_pre = nu * std::log(q) - (nu + 1.0) * M_LN2 - h * std::log(p) +
                           log_gamma(h) - log_gamma(nu + 1.0);
    return std::exp(log_pre) * hyp1f1(h, nu + 1.0, q * q / (4.0 * p), cfg);
}

double bessel_gauss_moment_residual(double p, double q, double beta, double nu,
                                    const QuadratureRule& quad, const SpecFunConfig& cfg) {
    const double rhs = bessel_gauss_moment(p, q, beta, nu, cfg);

    // Envelope in u = y^2: the integrand is
    // u^{(beta+nu)/2 - 1} * entire(u) * e^{-p u + (q/sqrt(p)) sqrt(p u)}.
    const HalfLineEnvelope env{0.5 * (beta + nu) - 1.0, p, true, q / std::sqrt(p)};
    auto logf = [&](double y) {
        return (beta - 1.0) * std::log(y) - p * y * y + q * y + log_bessel_i_scaled(nu, q * y, cfg);
    };
    const double lhs = std::exp(integrate_halfline_log(logf, env, quad));
    return std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));
}

}  // namespace lpheat
