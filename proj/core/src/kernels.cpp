#include "lpheat/kernels.hpp"

#include <cmath>

#include "lpheat/specfun.hpp"

namespace lpheat {

namespace {

void check_time(double t) {
    if (!(t >= kMinTime)) throw std::domain_error("kernel: t must be >= 1e-6");
}

void check_point(const Point& x, std::size_t d, const char* name) {
    if (x.size() != d) throw std::domain_error(std::string("kernel: bad dimension of ") + name);
    for (double xi : x)
        if (!(xi > 0.0)) throw std::domain_error(std::string("kernel: ") + name + " must be in (0, inf)^d");
}

}  // namespace

KernelForm kernel_form(const FamilyId& family, const AlphaIndex& alpha, double t) {
    require_admissible(family, alpha);
    check_time(t);
    KernelForm f{family.base, alpha, 0.0, 0, 0.0};
    if (!family.modified()) return f;
    f.j = family.modified_j;
    f.alpha[f.j - 1] += 1.0;
    switch (family.base) {
        case Family::lag:
            f.log_prefactor = -t;
            f.coord_power = 0.5;
            break;
        case Family::stdL:
            f.log_prefactor = -0.5 * t;
            break;
        case Family::hermL:
            f.log_prefactor = -2.0 * t;
            break;
        case Family::convL:
            f.log_prefactor = -2.0 * t;
            f.coord_power = 1.0;
            break;
        default: break;  // unreachable: admissibility rejects modified Bessel
    }
    return f;
}

namespace {

// coef * ln(w), with coef = 0 winning over w = 0 (the limit the kernels need).
double power_log(double coef, double w) { return coef == 0.0 ? 0.0 : coef * std::log(w); }

}  // namespace

// Each factor folds the (z/2)^nu part of the Bessel function into its own
// coordinate powers before taking any logarithm, so no intermediate can
// underflow even when the Bessel argument itself rounds into denormals.
double kernel_log_factor(Family base, double nu, double t, double x, double y) {
    check_time(t);
    switch (base) {
        case Family::lag: {
            const double sh = std::sinh(0.5 * t);
            const double z = std::sqrt(x * y) / sh;
            const double rsd = std::sqrt(x) - std::sqrt(y);
            // -e^{-t/2}(x+y)/(2 sh) + z, grouped so small t cannot cancel badly
            const double expo = ((x + y) * (-std::expm1(-0.5 * t)) - rsd * rsd) / (2.0 * sh);
            // (xy)^{-nu/2} (z/2)^nu = (2 sh)^{-nu}
            return 0.5 * t * (nu + 1.0) - std::log(2.0 * sh) - nu * std::log(2.0 * sh) + expo +
                   log_bessel_i_scaled_reduced(nu, z);
        }
        case Family::stdL: {
            const double sh = std::sinh(0.5 * t);
            const double z = std::sqrt(x * y) / sh;
            const double rsd = std::sqrt(x) - std::sqrt(y);
            const double coshm1 = 2.0 * std::pow(std::sinh(0.25 * t), 2);
            const double expo = -(rsd * rsd + (x + y) * coshm1) / (2.0 * sh);
            return -std::log(2.0 * sh) + power_log(0.5 * nu, x * y) - nu * std::log(2.0 * sh) +
                   expo + log_bessel_i_scaled_reduced(nu, z);
        }
        case Family::hermL: {
            const double sh = std::sinh(2.0 * t);
            const double z = x * y / sh;
            const double coshm1 = 2.0 * std::pow(std::sinh(t), 2);
            const double expo = -((x - y) * (x - y) + (x * x + y * y) * coshm1) / (2.0 * sh);
            return -std::log(sh) + power_log(nu + 0.5, x * y) - nu * std::log(2.0 * sh) + expo +
                   log_bessel_i_scaled_reduced(nu, z);
        }
        case Family::convL: {
            const double sh = std::sinh(2.0 * t);
            const double z = x * y / sh;
            const double coshm1 = 2.0 * std::pow(std::sinh(t), 2);
            const double expo = -((x - y) * (x - y) + (x * x + y * y) * coshm1) / (2.0 * sh);
            // (xy)^{-nu} (z/2)^nu = (2 sh)^{-nu}: no xy power survives
            return -std::log(sh) - nu * std::log(2.0 * sh) + expo +
                   log_bessel_i_scaled_reduced(nu, z);
        }
        case Family::besselSmall: {
            const double z = x * y / (2.0 * t);
            return -std::log(2.0 * t) + power_log(nu + 0.5, x * y) - nu * std::log(4.0 * t) -
                   (x - y) * (x - y) / (4.0 * t) + log_bessel_i_scaled_reduced(nu, z);
        }
        case Family::besselBig: {
            const double z = x * y / (2.0 * t);
            return -std::log(2.0 * t) - nu * std::log(4.0 * t) - (x - y) * (x - y) / (4.0 * t) +
                   log_bessel_i_scaled_reduced(nu, z);
        }
    }
    return 0.0;
}

double kernel_log_eval(const FamilyId& family, const AlphaIndex& alpha, double t, const Point& x,
                       const Point& y) {
    const KernelForm f = kernel_form(family, alpha, t);
    check_point(x, alpha.size(), "x");
    check_point(y, alpha.size(), "y");
    double s = f.log_prefactor;
    if (f.j != 0 && f.coord_power != 0.0)
        s += f.coord_power * (std::log(x[f.j - 1]) + std::log(y[f.j - 1]));
    for (std::size_t i = 0; i < alpha.size(); ++i)
        s += kernel_log_factor(f.base, f.alpha[i], t, x[i], y[i]);
    return s;
}

double family_eigenvalue(Family base, int k, double alpha) {
    switch (base) {
        case Family::lag: return k;
        case Family::stdL: return k + 0.5 * (alpha + 1.0);
        case Family::hermL:
        case Family::convL: return 4.0 * k + 2.0 * alpha + 2.0;
        default: throw std::domain_error("family_eigenvalue: Bessel spectra are continuous");
    }
}

namespace {

// 1-d eigenfunction of a Laguerre base family; lag holds the normalized
// polynomial values at x (lag, stdL) or at x^2 (hermL, convL).
double eigenfunction(Family base, double alpha, int k, double x, const std::vector<double>& lag) {
    switch (base) {
        case Family::lag: return lag[k];
        case Family::stdL: return lag[k] * std::pow(x, 0.5 * alpha) * std::exp(-0.5 * x);
        case Family::hermL:
            return M_SQRT2 * lag[k] * std::pow(x, alpha + 0.5) * std::exp(-0.5 * x * x);
        case Family::convL: return M_SQRT2 * lag[k] * std::exp(-0.5 * x * x);
        default: throw std::domain_error("kernel_series_oracle: Laguerre families only");
    }
}

}  // namespace

double kernel_series_oracle(Family base, double alpha, double t, double x, double y, int n_terms) {
    if (base == Family::besselSmall || base == Family::besselBig)
        throw std::domain_error("kernel_series_oracle: Laguerre families only");
    require_admissible({base, 0}, {alpha});
    check_time(t);
    if (!(x > 0.0 && y > 0.0)) throw std::domain_error("kernel_series_oracle: x, y must be > 0");
    if (n_terms < 1 || n_terms > 500)
        throw std::domain_error("kernel_series_oracle: n_terms must lie in [1, 500]");

    const bool squared = base == Family::hermL || base == Family::convL;
    const std::vector<double> lx = laguerre_normalized_sequence(n_terms - 1, alpha, squared ? x * x : x);
    const std::vector<double> ly = laguerre_normalized_sequence(n_terms - 1, alpha, squared ? y * y : y);

    double sum = 0.0, last = 0.0;
    for (int k = 0; k < n_terms; ++k) {
        last = std::exp(-t * family_eigenvalue(base, k, alpha)) *
               eigenfunction(base, alpha, k, x, lx) * eigenfunction(base, alpha, k, y, ly);
        sum += last;
    }
    if (n_terms > 1 && !(std::abs(last) <= 1e-12 * std::abs(sum)))
        throw NonConvergence("kernel_series_oracle: truncated series has not settled");
    return sum;
}

}  // namespace lpheat
