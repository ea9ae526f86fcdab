#include "lpheat/hfunc.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "lpheat/quadrature.hpp"
#include "lpheat/specfun.hpp"

namespace lpheat {

namespace {

constexpr double kGridLo = 1e-8;
constexpr double kGridHi = 1e8;
constexpr int kGridN = 2000;
constexpr int kIntegralNodes = 400;

const std::vector<TanhSinhNode>& unit_nodes() {
    static const std::vector<TanhSinhNode> nodes = tanh_sinh_nodes(kIntegralNodes);
    return nodes;
}

double log_add_exp(double a, double b) {
    if (a < b) std::swap(a, b);
    if (b == -std::numeric_limits<double>::infinity()) return a;
    return a + std::log1p(std::exp(b - a));
}

// ln int_0^{1/2} x^{p-1} exp(logg(x)) dx where logg(0) = 0, for a fixed-order
// rule. For p >= 1/2 the tanh-sinh nodes absorb the endpoint power; below
// that the mass outside the reachable range, ~(x_min)^p, stops being
// negligible, so the divergent part is integrated exactly and the rule only
// sees the remainder, which vanishes like x^p at 0:
//   int x^{p-1} g = 2^{-p}/p + int x^{p-1} (g(x) - 1).
double log_power_half_integral(double p, const std::function<double(double)>& logg) {
    if (p >= 0.5) {
        double m = -std::numeric_limits<double>::infinity();
        std::vector<double> lt;
        lt.reserve(unit_nodes().size());
        for (const TanhSinhNode& nd : unit_nodes()) {
            const double x = 0.5 * nd.x;
            const double l = std::log(0.5 * nd.w) + (p - 1.0) * std::log(x) + logg(x);
            lt.push_back(l);
            m = std::max(m, l);
        }
        double s = 0.0;
        for (double l : lt) s += std::exp(l - m);
        return m + std::log(s);
    }
    double acc = 0.0;
    for (const TanhSinhNode& nd : unit_nodes()) {
        const double x = 0.5 * nd.x;
        acc += 0.5 * nd.w * std::exp((p - 1.0) * std::log(x)) * std::expm1(logg(x));
    }
    return std::log(std::exp(-p * M_LN2) / p + acc);
}

// ln int_0^1 sigma^{d-1} (1-sigma)^{eta-1} e^{-u sigma} dsigma, d = gamma-eta.
// Split at 1/2 so each half has one endpoint power, handled by
// log_power_half_integral; near sigma = 1 the roles of d and eta swap and a
// factor e^{-u} comes out.
double log_beta_kernel_integral(double d, double eta, double u) {
    const double left = log_power_half_integral(
        d, [&](double x) { return (eta - 1.0) * std::log1p(-x) - u * x; });
    const double right =
        -u + log_power_half_integral(
                 eta, [&](double r) { return (d - 1.0) * std::log1p(-r) + u * r; });
    return log_add_exp(left, right);
}

// ln int_0^L s^{d-1} e^{-s} (1-s/u)^{eta-1} ds with L chosen so the dropped
// tail is below double noise; only used for u > 800, where s = L stays well
// clear of the (1-s/u) singularity and only the s = 0 endpoint matters.
// Substituting s = 2L x maps the range onto x in (0, 1/2].
double log_truncated_integral(double d, double eta, double u) {
    const double L = 745.0;
    return d * std::log(2.0 * L) + log_power_half_integral(d, [&](double x) {
               const double s = 2.0 * L * x;
               return (eta - 1.0) * std::log1p(-s / u) - s;
           });
}

}  // namespace

void HParams::validate() const {
    if (!(eta > 0.0) || !(gamma >= eta))
        throw std::domain_error("HParams: need gamma >= eta > 0");
}

double h_eval(const HParams& p, double u) {
    p.validate();
    if (!(u > 0.0)) throw std::domain_error("h_eval: u must be > 0");
    if (p.eta == p.gamma) return 1.0;

    const double d = p.gamma - p.eta;
    double log_h;
    if (u <= 800.0) {
        log_h = d * std::log(u) - log_gamma(d) + log_beta_kernel_integral(d, p.eta, u);
    } else {
        log_h = -log_gamma(d) + log_truncated_integral(d, p.eta, u);
    }
    return std::exp(log_h);
}

double h_eval_series(const HParams& p, double u) {
    p.validate();
    if (!(u > 0.0)) throw std::domain_error("h_eval_series: u must be > 0");
    if (p.eta == p.gamma) return 1.0;
    const double lg = log_gamma(p.eta) - log_gamma(p.gamma) + (p.gamma - p.eta) * std::log(u) - u;
    return std::exp(lg) * hyp1f1(p.eta, p.gamma, u);
}

namespace {

// Golden-section maximum of f over [lo, hi] in log-u coordinates.
double golden_max_log(const HParams& p, double lo, double hi) {
    const double gr = 0.61803398874989484820;
    double a = std::log(lo), b = std::log(hi);
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = h_eval(p, std::exp(c)), fd = h_eval(p, std::exp(d));
    while (b - a > 1e-10) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = h_eval(p, std::exp(c));
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = h_eval(p, std::exp(d));
        }
    }
    return std::exp(0.5 * (a + b));
}

std::vector<double> geometric_grid(double lo, double hi, int n) {
    std::vector<double> g(n);
    const double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < n; ++i) g[i] = std::exp(llo + (lhi - llo) * i / (n - 1));
    return g;
}

}  // namespace

HSup h_sup(const HParams& p) {
    p.validate();
    if (p.eta == p.gamma) return {1.0, std::nullopt};

    const std::vector<double> grid = geometric_grid(kGridLo, kGridHi, kGridN);
    double best = -1.0;
    int best_i = 0;
    for (int i = 0; i < kGridN; ++i) {
        const double v = h_eval(p, grid[i]);
        if (v > best) {
            best = v;
            best_i = i;
        }
    }
    const double lo = grid[std::max(best_i - 1, 0)];
    const double hi = grid[std::min(best_i + 1, kGridN - 1)];
    const double um = golden_max_log(p, lo, hi);
    const double vm = h_eval(p, um);
    if (vm > best) best = vm;

    // Tail limit is 1 for every eta < gamma.
    if (best <= 1.0) return {1.0, std::nullopt};
    return {best, um};
}

HClassification h_classify(const HParams& p, double tol) {
    p.validate();
    if (!(tol > 0.0 && tol <= 1e-4))
        throw std::domain_error("h_classify: tol must lie in (0, 1e-4]");

    if (p.eta == p.gamma) return {HKind::identity, 1.0, std::nullopt, std::nullopt};

    const HSup s = h_sup(p);
    if (p.eta >= 1.0) {
        if (!(s.sup <= 1.0 + tol))
            throw ClassificationMismatch("h_classify: sup exceeds 1 where eta >= 1");
        if (!(h_eval(p, 1e8) >= 1.0 - 1e-3))
            throw ClassificationMismatch("h_classify: tail limit fell short of 1");
        // the certified sup is 1; the grid can sit a few ulp above it
        return {HKind::sup_one, std::min(s.sup, 1.0), std::nullopt, std::nullopt};
    }

    if (!(s.sup >= 1.0 + tol))
        throw ClassificationMismatch("h_classify: sup not above 1 where eta < 1");
    const std::vector<double> grid = geometric_grid(kGridLo, kGridHi, kGridN);
    int last_below = -1;
    for (int i = 0; i < kGridN; ++i) {
        if (h_eval(p, grid[i]) <= 1.0) last_below = i;
    }
    if (last_below + 1 >= kGridN)
        throw ClassificationMismatch("h_classify: no sampled u with H > 1 beyond it");
    return {HKind::exceeds, s.sup, s.argmax, grid[last_below + 1]};
}

}  // namespace lpheat
