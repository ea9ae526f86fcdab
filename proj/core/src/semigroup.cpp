#include "lpheat/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <thread>

#include "lpheat/hfunc.hpp"
#include "lpheat/specfun.hpp"

namespace lpheat {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kApplyTarget = 1e-8;  // relative accuracy target of apply/row_mass

void check_time(double t) {
    if (!(t >= kMinTime)) throw std::domain_error("semigroup: t must be >= 1e-6");
}

void check_point(const Point& x, std::size_t d) {
    if (x.size() != d) throw std::domain_error("semigroup: dimension mismatch between alpha and x");
    for (double xi : x)
        if (!(xi > 0.0)) throw std::domain_error("semigroup: x must be in (0, inf)^d");
}

// Decay profile of the i-th row integrand (kernel at the resolved order
// times the original measure times the modified coordinate factor). The
// sqrt_growth entry is the coefficient of the Bessel argument expressed in
// the envelope variable: z = b sqrt(y) (lag, stdL) or z = b y (the rest)
// turns into sqrt_growth * sqrt(v) under v = scale * y or scale * y^2.
HalfLineEnvelope coord_envelope(const KernelForm& f, const AlphaIndex& orig_alpha, int i, double t,
                                double xi) {
    const double nu = f.alpha[i];
    const double a0 = orig_alpha[i];
    const double jp = (f.j == i + 1) ? f.coord_power : 0.0;
    switch (f.base) {
        case Family::lag: {
            const double c = -1.0 / std::expm1(-t);
            return {a0 + jp, c, false, std::sqrt(xi / c) / std::sinh(0.5 * t)};
        }
        case Family::stdL: {
            const double c = 0.5 / std::tanh(0.5 * t);
            return {0.5 * nu, c, false, std::sqrt(xi / c) / std::sinh(0.5 * t)};
        }
        case Family::hermL: {
            const double c = 0.5 / std::tanh(2.0 * t);
            return {0.5 * nu - 0.25, c, true, xi / (std::sinh(2.0 * t) * std::sqrt(c))};
        }
        case Family::convL: {
            const double c = 0.5 / std::tanh(2.0 * t);
            return {a0 + 0.5 * jp, c, true, xi / (std::sinh(2.0 * t) * std::sqrt(c))};
        }
        case Family::besselSmall: {
            const double c = 0.25 / t;
            return {0.5 * nu - 0.25, c, true, xi / (2.0 * t * std::sqrt(c))};
        }
        case Family::besselBig: {
            const double c = 0.25 / t;
            return {a0, c, true, xi / (2.0 * t * std::sqrt(c))};
        }
    }
    return {0.0, 1.0, false, 0.0};
}

// ln of the positive part of the i-th row integrand at y.
std::function<double(double)> coord_log_weight(const FamilyId& family, const KernelForm& f,
                                               const AlphaIndex& orig_alpha, int i, double t,
                                               double xi) {
    const double nu = f.alpha[i];
    const double a0 = orig_alpha[i];
    const double jp = (f.j == i + 1) ? f.coord_power : 0.0;
    const Family base = f.base;
    return [=, &family](double y) {
        double l = kernel_log_factor(base, nu, t, xi, y) +
                   measure_log_density_coord(family, a0, y);
        if (jp != 0.0) l += jp * (std::log(xi) + std::log(y));
        return l;
    };
}

double rel_gap(double a, double b) {
    const double m = std::max(std::abs(a), std::abs(b));
    return m == 0.0 ? 0.0 : std::abs(a - b) / m;
}

}  // namespace

double apply(const FamilyId& family, const AlphaIndex& alpha, double t,
             std::span<const std::function<double(double)>> factors, const Point& x,
             const QuadratureRule& quad) {
    const KernelForm form = kernel_form(family, alpha, t);
    check_point(x, alpha.size());
    quad.validate();
    if (factors.size() != alpha.size())
        throw std::domain_error("apply: one f factor per coordinate required");

    double total = std::exp(form.log_prefactor);
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        const auto logw = coord_log_weight(family, form, alpha, static_cast<int>(i), t, x[i]);
        const HalfLineEnvelope env = coord_envelope(form, alpha, static_cast<int>(i), t, x[i]);
        QuadratureRule fine = quad;
        fine.order = 2 * quad.order;
        const double coarse = integrate_halfline_weighted(logw, factors[i], env, quad);
        const double value = integrate_halfline_weighted(logw, factors[i], env, fine);
        if (rel_gap(coarse, value) > 10.0 * kApplyTarget)
            throw NonConvergence("apply: quadrature not settled after doubling the order");
        total *= value;
    }
    return total;
}

double apply(const FamilyId& family, const AlphaIndex& alpha, double t,
             const std::function<double(double)>& f, double x, const QuadratureRule& quad) {
    const std::function<double(double)> fs[1] = {f};
    return apply(family, alpha, t, fs, Point{x}, quad);
}

double row_mass(const FamilyId& family, const AlphaIndex& alpha, double t, const Point& x,
                const QuadratureRule& quad) {
    const KernelForm form = kernel_form(family, alpha, t);
    check_point(x, alpha.size());
    quad.validate();

    double log_total = form.log_prefactor;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        const auto logw = coord_log_weight(family, form, alpha, static_cast<int>(i), t, x[i]);
        const HalfLineEnvelope env = coord_envelope(form, alpha, static_cast<int>(i), t, x[i]);
        QuadratureRule fine = quad;
        fine.order = 2 * quad.order;
        const double coarse = integrate_halfline_log(logw, env, quad);
        const double value = integrate_halfline_log(logw, env, fine);
        if (std::abs(std::expm1(value - coarse)) > 10.0 * kApplyTarget)
            throw NonConvergence("row_mass: quadrature not settled after doubling the order");
        log_total += value;
    }
    return std::exp(log_total);
}

namespace {

// H_{eta,gamma}(u) with the u -> 0 limit filled in for underflowed u.
double h_factor(double eta, double gamma, double u) {
    if (u <= 0.0) return eta == gamma ? 1.0 : 0.0;
    return h_eval({eta, gamma}, u);
}

double stdL_factor(double a, double t, double x) {
    return 1.0 / std::cosh(0.5 * t) * std::exp(-0.5 * x * std::tanh(0.5 * t)) *
           h_factor(0.5 * a + 1.0, a + 1.0, x / std::sinh(t));
}

double hermL_factor(double a, double t, double x) {
    return std::pow(std::cosh(2.0 * t), -0.5) * std::exp(-0.5 * x * x * std::tanh(2.0 * t)) *
           h_factor(0.5 * a + 0.75, a + 1.0, x * x / std::sinh(4.0 * t));
}

double convL_factor(double a, double t, double x) {
    return std::pow(std::cosh(2.0 * t), -(a + 1.0)) * std::exp(-0.5 * x * x * std::tanh(2.0 * t));
}

double bessel_small_factor(double a, double t, double x) {
    return h_factor(0.5 * a + 0.75, a + 1.0, x * x / (4.0 * t));
}

}  // namespace

double tt_one_coord(const FamilyId& family, const AlphaIndex& alpha, int i, double t, double xi) {
    const double a = alpha[static_cast<std::size_t>(i)];
    const bool on_j = family.modified() && family.modified_j == i + 1;
    switch (family.base) {
        case Family::lag:
            if (!on_j) return 1.0;
            // e^{-t/2} H_{a+3/2, a+2}(x e^{-t} / (1 - e^{-t}))
            return std::exp(-0.5 * t) *
                   h_factor(a + 1.5, a + 2.0, xi * std::exp(-t) / (-std::expm1(-t)));
        case Family::stdL:
            return on_j ? std::exp(-0.5 * t) * stdL_factor(a + 1.0, t, xi) : stdL_factor(a, t, xi);
        case Family::hermL:
            return on_j ? std::exp(-2.0 * t) * hermL_factor(a + 1.0, t, xi) : hermL_factor(a, t, xi);
        case Family::convL:
            if (!on_j) return convL_factor(a, t, xi);
            return std::exp(-2.0 * t) * std::pow(std::cosh(2.0 * t), -(a + 1.0)) *
                   std::exp(-0.5 * xi * xi * std::tanh(2.0 * t)) *
                   h_factor(a + 1.5, a + 2.0, xi * xi / std::sinh(4.0 * t));
        case Family::besselSmall: return bessel_small_factor(a, t, xi);
        case Family::besselBig: return 1.0;
    }
    return 1.0;
}

double tt_one_closed(const FamilyId& family, const AlphaIndex& alpha, double t, const Point& x) {
    require_admissible(family, alpha);
    check_time(t);
    check_point(x, alpha.size());
    double v = 1.0;
    for (std::size_t i = 0; i < alpha.size(); ++i)
        v *= tt_one_coord(family, alpha, static_cast<int>(i), t, x[i]);
    return v;
}

double contraction_bound(const FamilyId& family, const AlphaIndex& alpha, double t) {
    require_admissible(family, alpha);
    check_time(t);
    const double d = static_cast<double>(alpha.size());
    double abs_sum = 0.0;
    for (double a : alpha) abs_sum += a;
    double bound = 1.0;
    switch (family.base) {
        case Family::lag: bound = 1.0; break;
        case Family::stdL: bound = std::pow(std::cosh(0.5 * t), -d); break;
        case Family::hermL: bound = std::pow(std::cosh(2.0 * t), -0.5 * d); break;
        case Family::convL: bound = std::pow(std::cosh(2.0 * t), -(abs_sum + d)); break;
        case Family::besselSmall:
        case Family::besselBig: bound = 1.0; break;
    }
    if (family.modified()) {
        switch (family.base) {
            case Family::lag: bound = std::exp(-0.5 * t); break;
            case Family::stdL: bound *= std::exp(-0.5 * t); break;
            case Family::hermL:
            case Family::convL: bound *= std::exp(-2.0 * t); break;
            default: break;
        }
    }
    return bound;
}

namespace {

struct CoordSup {
    double sup;
    double x_rep;
    bool attained;
};

struct CoordLimits {
    double at_zero;
    double at_inf;
};

bool coord_is_constant(const FamilyId& family, int i) {
    const bool on_j = family.modified() && family.modified_j == i + 1;
    if (family.base == Family::besselBig) return true;
    if (family.base == Family::lag && !on_j) return true;
    return false;
}

CoordLimits coord_limits(const FamilyId& family, const AlphaIndex& alpha, int i, double t) {
    const double a = alpha[static_cast<std::size_t>(i)];
    const bool on_j = family.modified() && family.modified_j == i + 1;
    switch (family.base) {
        case Family::lag:
            if (!on_j) return {1.0, 1.0};
            return {0.0, std::exp(-0.5 * t)};  // H -> 1 at infinity
        case Family::stdL: {
            const double pre = on_j ? std::exp(-0.5 * t) : 1.0;
            const double aa = on_j ? a + 1.0 : a;
            return {aa == 0.0 ? pre / std::cosh(0.5 * t) : 0.0, 0.0};
        }
        case Family::hermL: {
            const double pre = on_j ? std::exp(-2.0 * t) : 1.0;
            const double aa = on_j ? a + 1.0 : a;
            return {aa == -0.5 ? pre * std::pow(std::cosh(2.0 * t), -0.5) : 0.0, 0.0};
        }
        case Family::convL: {
            if (!on_j) return {std::pow(std::cosh(2.0 * t), -(a + 1.0)), 0.0};
            return {0.0, 0.0};
        }
        case Family::besselSmall: return {a == -0.5 ? 1.0 : 0.0, 1.0};
        case Family::besselBig: return {1.0, 1.0};
    }
    return {0.0, 0.0};
}

double coord_scale(const FamilyId& family, int i, double t) {
    const bool on_j = family.modified() && family.modified_j == i + 1;
    switch (family.base) {
        case Family::lag:
            return on_j ? std::exp(-0.5 * t) / std::sqrt(-std::expm1(-t)) : 1.0;
        case Family::stdL: return std::sqrt(std::sinh(t));
        case Family::hermL:
        case Family::convL: return std::sqrt(std::sinh(4.0 * t));
        case Family::besselSmall:
        case Family::besselBig: return std::sqrt(t);
    }
    return 1.0;
}

// Golden-section maximum of the coordinate factor in log-x coordinates.
double golden_max_coord(const FamilyId& family, const AlphaIndex& alpha, int i, double t,
                        double lo, double hi) {
    const double gr = 0.61803398874989484820;
    double a = std::log(lo), b = std::log(hi);
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = tt_one_coord(family, alpha, i, t, std::exp(c));
    double fd = tt_one_coord(family, alpha, i, t, std::exp(d));
    while (b - a > 1e-10) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = tt_one_coord(family, alpha, i, t, std::exp(c));
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = tt_one_coord(family, alpha, i, t, std::exp(d));
        }
    }
    return std::exp(0.5 * (a + b));
}

CoordSup coord_sup(const FamilyId& family, const AlphaIndex& alpha, int i, double t) {
    if (coord_is_constant(family, i)) return {1.0, 1.0, true};

    const double s = coord_scale(family, i, t);
    const double lo = 1e-6 * s, hi = 1e6 * s;
    constexpr int n = 2000;
    std::vector<double> grid;
    grid.reserve(n + 20);
    const double llo = std::log(lo), lhi = std::log(hi);
    for (int k = 0; k < n; ++k) grid.push_back(std::exp(llo + (lhi - llo) * k / (n - 1)));
    const double ws = std::sqrt(std::sinh(4.0 * t));
    for (int c = 1; c <= 20; ++c) grid.push_back(c * ws);  // witness abscissas
    std::sort(grid.begin(), grid.end());

    double best = -1.0;
    std::size_t best_k = 0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double v = tt_one_coord(family, alpha, i, t, grid[k]);
        if (v > best) {
            best = v;
            best_k = k;
        }
    }
    const double xl = grid[best_k > 0 ? best_k - 1 : 0];
    const double xr = grid[std::min(best_k + 1, grid.size() - 1)];
    const double xm = golden_max_coord(family, alpha, i, t, xl, xr);
    const double fm = tt_one_coord(family, alpha, i, t, xm);

    CoordSup out{std::max(best, fm), fm >= best ? xm : grid[best_k], true};
    const CoordLimits lim = coord_limits(family, alpha, i, t);
    if (lim.at_zero > out.sup) out = {lim.at_zero, lo, false};
    if (lim.at_inf > out.sup) out = {lim.at_inf, hi, false};
    // Ties at quadrature-noise level go to the boundary: the limits are
    // closed-form exact, the grid values are not.
    if (out.attained && lim.at_inf >= out.sup * (1.0 - 1e-12))
        out = {std::max(out.sup, lim.at_inf), hi, false};
    else if (out.attained && lim.at_zero >= out.sup * (1.0 - 1e-12))
        out = {std::max(out.sup, lim.at_zero), lo, false};
    return out;
}

}  // namespace

SupResult sup_tt_one(const FamilyId& family, const AlphaIndex& alpha, double t) {
    require_admissible(family, alpha);
    check_time(t);
    SupResult out{1.0, Point(alpha.size(), 1.0), true};
    double sup = 1.0;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        const CoordSup c = coord_sup(family, alpha, static_cast<int>(i), t);
        sup *= c.sup;
        out.argmax[i] = c.x_rep;
        out.attained = out.attained && c.attained;
    }
    out.sup = sup;
    return out;
}

double ck_residual(const FamilyId& family, const AlphaIndex& alpha, double t, double s, double x,
                   double y, const QuadratureRule& quad) {
    if (family.modified())
        throw std::domain_error("ck_residual: base families only");
    if (alpha.size() != 1) throw std::domain_error("ck_residual: d = 1 only");
    require_admissible(family, alpha);
    check_time(t);
    check_time(s);
    if (!(x > 0.0 && y > 0.0)) throw std::domain_error("ck_residual: x, y must be > 0");
    quad.validate();

    const double a = alpha[0];
    HalfLineEnvelope env{};
    switch (family.base) {
        case Family::lag: {
            const double c = 1.0 + 1.0 / std::expm1(t) + 1.0 / std::expm1(s);
            env = {a, c, false,
                   (std::sqrt(x) / std::sinh(0.5 * t) + std::sqrt(y) / std::sinh(0.5 * s)) /
                       std::sqrt(c)};
            break;
        }
        case Family::stdL: {
            const double c = 0.5 / std::tanh(0.5 * t) + 0.5 / std::tanh(0.5 * s);
            env = {a, c, false,
                   (std::sqrt(x) / std::sinh(0.5 * t) + std::sqrt(y) / std::sinh(0.5 * s)) /
                       std::sqrt(c)};
            break;
        }
        case Family::hermL:
        case Family::convL: {
            const double c = 0.5 / std::tanh(2.0 * t) + 0.5 / std::tanh(2.0 * s);
            env = {a, c, true,
                   (x / std::sinh(2.0 * t) + y / std::sinh(2.0 * s)) / std::sqrt(c)};
            break;
        }
        case Family::besselSmall:
        case Family::besselBig: {
            const double c = 0.25 / t + 0.25 / s;
            env = {a, c, true, (x / (2.0 * t) + y / (2.0 * s)) / std::sqrt(c)};
            break;
        }
    }
    auto logf = [&](double z) {
        return kernel_log_factor(family.base, a, t, x, z) +
               kernel_log_factor(family.base, a, s, z, y) +
               measure_log_density_coord(family, a, z);
    };
    QuadratureRule fine = quad;
    fine.order = 2 * quad.order;
    const double coarse = integrate_halfline_log(logf, env, quad);
    const double conv = integrate_halfline_log(logf, env, fine);
    if (std::abs(std::expm1(conv - coarse)) > 10.0 * kApplyTarget)
        throw NonConvergence("ck_residual: quadrature not settled after doubling the order");

    const double direct = kernel_log_eval(family, alpha, t + s, {x}, {y});
    return std::abs(std::expm1(conv - direct));
}

namespace {

ContractivityReport one_report(const FamilyId& family, const AlphaIndex& alpha,
                               const std::vector<double>& t_grid, double tol) {
    ContractivityReport r;
    r.family = family;
    r.alpha = alpha;
    r.t_grid = t_grid;
    r.contractive = true;
    r.within_bound = true;

    double max_sup = -kInf, max_excess = -kInf;
    std::size_t max_i = 0;
    std::vector<SupResult> sups;
    sups.reserve(t_grid.size());
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        const SupResult sr = sup_tt_one(family, alpha, t_grid[i]);
        const double bound = contraction_bound(family, alpha, t_grid[i]);
        sups.push_back(sr);
        r.sup_per_t.push_back(sr.sup);
        r.bound_per_t.push_back(bound);
        if (sr.sup > max_sup) {
            max_sup = sr.sup;
            max_i = i;
        }
        max_excess = std::max(max_excess, sr.sup / bound);
        if (sr.sup > bound * (1.0 + tol)) r.within_bound = false;
    }

    r.contractive = max_sup <= 1.0 + tol;
    if (!r.contractive) {
        r.witness_t = t_grid[max_i];
        r.witness_x = sups[max_i].argmax;
        r.witness_value = tt_one_closed(family, alpha, t_grid[max_i], sups[max_i].argmax);
        if (!(*r.witness_value > 1.0 + tol))
            throw ClassificationMismatch(
                "contractivity_sweep: witness point does not exceed 1 + tol");
        r.excess_constant = max_excess;
    }
    return r;
}

}  // namespace

std::vector<ContractivityReport> contractivity_sweep(const FamilyId& family,
                                                     const std::vector<AlphaIndex>& alpha_grid,
                                                     const std::vector<double>& t_grid,
                                                     double tol) {
    if (!(tol > 0.0)) throw std::domain_error("contractivity_sweep: tol must be > 0");
    if (t_grid.empty()) throw std::domain_error("contractivity_sweep: empty t grid");
    for (const AlphaIndex& a : alpha_grid) require_admissible(family, a);

    std::vector<ContractivityReport> out(alpha_grid.size());
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (alpha_grid.size() < 2 || hw < 2) {
        for (std::size_t i = 0; i < alpha_grid.size(); ++i)
            out[i] = one_report(family, alpha_grid[i], t_grid, tol);
        return out;
    }
    // Independent slots; concurrent evaluation is bit-identical to sequential.
    std::vector<std::future<ContractivityReport>> fut(alpha_grid.size());
    for (std::size_t i = 0; i < alpha_grid.size(); ++i)
        fut[i] = std::async(std::launch::async | std::launch::deferred,
                            [&, i] { return one_report(family, alpha_grid[i], t_grid, tol); });
    for (std::size_t i = 0; i < alpha_grid.size(); ++i) out[i] = fut[i].get();
    return out;
}

}  // namespace lpheat
