#include "lpheat/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>

#include <Eigen/Dense>

#include "lpheat/specfun.hpp"

namespace lpheat {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double log_sum_exp(std::span<const double> v) {
    double m = -kInf;
    for (double x : v) m = std::max(m, x);
    if (m == -kInf) return -kInf;
    double s = 0.0;
    for (double x : v) s += std::exp(x - m);
    return m + std::log(s);
}

}  // namespace

void QuadratureRule::validate() const {
    if (order < 16) throw std::domain_error("QuadratureRule: order must be >= 16");
    if (!(truncation_radius >= 0.0) || std::isinf(truncation_radius))
        throw std::domain_error("QuadratureRule: truncation_radius must be finite and >= 0");
}

namespace {

// Raw L_k^{(a)} recurrence up to order n with magnitude-triggered rescaling;
// returns L_n and L_{n-1} times exp(log_scale).
struct RawLaguerre {
    double l_n, l_nm1, log_scale;
};

RawLaguerre raw_laguerre(int n, double a, double x) {
    double lo = 0.0, hi = 1.0, off = 0.0;
    for (int k = 0; k < n; ++k) {
        const double next =
            k == 0 ? 1.0 + a - x
                   : ((2.0 * k + 1.0 + a - x) * hi - (k + a) * lo) / (k + 1.0);
        lo = hi;
        hi = next;
        const double m = std::max(std::abs(lo), std::abs(hi));
        if (m > 1e250) {
            lo *= 1e-250;
            hi *= 1e-250;
            off += 250.0 * M_LN10;
        } else if (m > 0.0 && m < 1e-250) {
            lo *= 1e250;
            hi *= 1e250;
            off -= 250.0 * M_LN10;
        }
    }
    return {hi, lo, off};
}

}  // namespace

GaussLaguerre gauss_laguerre(double a, int n) {
    if (!(a > -1.0)) throw std::domain_error("gauss_laguerre: weight exponent must be > -1");
    if (n < 1) throw std::domain_error("gauss_laguerre: order must be >= 1");

    Eigen::VectorXd diag(n);
    Eigen::VectorXd sub(std::max(n - 1, 1));
    for (int i = 0; i < n; ++i) diag[i] = 2.0 * i + a + 1.0;
    for (int i = 1; i < n; ++i) sub[i - 1] = std::sqrt(i * (i + a));

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub.head(std::max(n - 1, 0)), Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw NonConvergence("gauss_laguerre: tridiagonal eigensolve failed");

    GaussLaguerre out;
    out.node.resize(n);
    out.weight.resize(n);
    out.log_weight.resize(n);
    // ln of the normalization (Gamma(n+2)/Gamma(n+a+2))^{1/2} of order n+1.
    const double log_norm = 0.5 * (log_gamma(n + 2.0) - log_gamma(n + a + 2.0));
    for (int i = 0; i < n; ++i) {
        double x = es.eigenvalues()[i];
        for (int it = 0; it < 3; ++it) {  // Newton polish on L_n^{(a)}(x) = 0
            const RawLaguerre r = raw_laguerre(n, a, x);
            const double deriv = (n * r.l_n - (n + a) * r.l_nm1) / x;
            if (deriv == 0.0) break;
            const double step = r.l_n / deriv;
            x -= step;
            if (std::abs(step) < 1e-15 * x) break;
        }
        const RawLaguerre r1 = raw_laguerre(n + 1, a, x);
        const double log_lnorm = std::log(std::abs(r1.l_n)) + r1.log_scale + log_norm;
        const double lw = std::log(x) - std::log(n + 1.0) - std::log(n + 1.0 + a) - 2.0 * log_lnorm;
        out.node[i] = x;
        out.log_weight[i] = lw;
        out.weight[i] = std::exp(lw);
    }
    return out;
}

std::vector<TanhSinhNode> tanh_sinh_nodes(int n) {
    if (n < 3) throw std::domain_error("tanh_sinh_nodes: need at least 3 nodes");
    // |w| <= W resolves endpoint distances down to ~exp(-pi/2 * sinh W).
    const double W = 4.0;
    const double h = 2.0 * W / (n - 1);
    std::vector<TanhSinhNode> out;
    out.reserve(n);
    for (int k = 0; k < n; ++k) {
        const double w = -W + k * h;
        const double s = 0.5 * M_PI * std::sinh(w);
        const double x = 1.0 / (1.0 + std::exp(-2.0 * s));
        const double one_minus = 1.0 / (1.0 + std::exp(2.0 * s));
        const double c = std::cosh(s);
        const double dx = 0.5 * M_PI * std::cosh(w) / (2.0 * c * c);
        if (x <= 0.0 || one_minus <= 0.0 || dx == 0.0) continue;
        out.push_back({x, one_minus, dx * h});
    }
    return out;
}

namespace {

// Radius R_v with v^p e^{-v + B sqrt(v)} a factor e^{-drop} below its peak
// value for v >= R_v.
double envelope_radius(double p, double B, double drop) {
    auto lf = [&](double v) { return p * std::log(v) - v + B * std::sqrt(v); };
    // coarse geometric scan for the peak
    double fmax = -std::numeric_limits<double>::infinity();
    double vmax = 1.0;
    const double hi_scan = 10.0 * (std::abs(p) + 1.0) * (B * B + 10.0);
    for (double v = 1e-3; v <= hi_scan; v *= 1.15) {
        const double f = lf(v);
        if (f > fmax) {
            fmax = f;
            vmax = v;
        }
    }
    const double target = fmax - drop;
    double lo = vmax, hi = vmax + 60.0;
    while (lf(hi) > target) hi += 60.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (lf(mid) > target ? lo : hi) = mid;
    }
    return hi;
}

double y_from_v(double v, const HalfLineEnvelope& env) {
    const double u = v / env.scale;
    return env.square_map ? std::sqrt(u) : u;
}

// ln |dv -> dy| Jacobian of the envelope substitution at node v.
double log_jacobian(double v, const HalfLineEnvelope& env) {
    if (!env.square_map) return -std::log(env.scale);
    return -M_LN2 - 0.5 * std::log(env.scale) - 0.5 * std::log(v);
}

std::vector<double> log_terms(const std::function<double(double)>& logf,
                              const HalfLineEnvelope& env, const QuadratureRule& rule, int order,
                              std::vector<double>* ys) {
    rule.validate();
    if (!(env.scale > 0.0)) throw std::domain_error("integrate_halfline: envelope scale must be > 0");
    std::vector<double> lt;
    if (rule.scheme == QuadScheme::gauss_laguerre_generalized) {
        const GaussLaguerre gl = gauss_laguerre(env.power, order);
        lt.reserve(gl.node.size());
        for (std::size_t i = 0; i < gl.node.size(); ++i) {
            const double v = gl.node[i];
            const double y = y_from_v(v, env);
            const double l = gl.log_weight[i] - env.power * std::log(v) + v +
                             log_jacobian(v, env) + logf(y);
            if (std::isnan(l) || l == kInf)
                throw NonConvergence("integrate_halfline: integrand not evaluable at a node");
            lt.push_back(l);
            if (ys) ys->push_back(y);
        }
    } else {
        // Truncation depth and endpoint map are coupled to the order, so the
        // order-doubling convergence checks in the callers also see any
        // systematic truncation or endpoint-mass error, not just the rule's
        // own discretization error.
        double ymax = rule.truncation_radius;
        if (ymax <= 0.0)
            ymax = y_from_v(envelope_radius(env.power, env.sqrt_growth, 41.5 + 0.05 * order), env);
        // The integrand behaves like y^p at 0; powers near -1 park too much
        // mass below the smallest reachable node. The map y = R tau^m lifts
        // the transformed endpoint exponent to m(1+p) - 1.
        const double p = env.square_map ? 2.0 * env.power + 1.0 : env.power;
        const double m = std::max(1.0, (0.30 + 1.0e-3 * order) / (1.0 + p));
        for (const TanhSinhNode& nd : tanh_sinh_nodes(order)) {
            const double y = ymax * std::exp(m * std::log(nd.x));
            if (y <= 0.0) continue;
            const double l = std::log(nd.w * ymax * m) + (m - 1.0) * std::log(nd.x) + logf(y);
            if (std::isnan(l) || l == kInf)
                throw NonConvergence("integrate_halfline: integrand not evaluable at a node");
            lt.push_back(l);
            if (ys) ys->push_back(y);
        }
    }
    return lt;
}

// Truncated rule with the divergent part peeled off analytically. For
// endpoint powers near -1 a tail of the mass sits below the smallest
// positive double, where no sampling rule can reach it; writing
//   int_0^R y^p g(y) dy = g(0) R^{1+p}/(1+p) + int_0^R y^p (g(y) - g(0)) dy
// moves that tail into the exact first term. g(0) is read off at a point
// deep inside the power-dominated region.
double tanh_sinh_subtracted_log(const std::function<double(double)>& logf,
                                const HalfLineEnvelope& env, double p, int order) {
    double ymax = envelope_radius(env.power, env.sqrt_growth, 41.5 + 0.05 * order);
    ymax = y_from_v(ymax, env);
    // The remainder vanishes like y^{1+p}, so the plain map suffices and the
    // node budget stays with the bulk of the integrand.
    const double m = 1.0;
    const double yref = 1e-250;
    const double log_g0 = logf(yref) - p * std::log(yref);
    const double log_analytic = log_g0 + (1.0 + p) * std::log(ymax) - std::log1p(p);

    std::vector<double> la;
    std::vector<double> sg;
    double M = log_analytic;
    for (const TanhSinhNode& nd : tanh_sinh_nodes(order)) {
        const double y = ymax * std::exp(m * std::log(nd.x));
        if (y <= 0.0) continue;
        const double delta = logf(y) - p * std::log(y) - log_g0;
        if (std::isnan(delta)) throw NonConvergence("integrate_halfline: integrand not evaluable");
        const double e = std::expm1(delta);
        if (e == 0.0) continue;
        const double l = std::log(nd.w * ymax * m) + (m - 1.0) * std::log(nd.x) +
                         p * std::log(y) + log_g0 + std::log(std::abs(e));
        la.push_back(l);
        sg.push_back(e > 0.0 ? 1.0 : -1.0);
        M = std::max(M, l);
    }
    double s = std::exp(log_analytic - M);
    for (std::size_t i = 0; i < la.size(); ++i) s += sg[i] * std::exp(la[i] - M);
    if (!(s > 0.0))
        throw NonConvergence("integrate_halfline: subtracted rule lost all significance");
    return M + std::log(s);
}

}  // namespace

double integrate_halfline_log(const std::function<double(double)>& logf,
                              const HalfLineEnvelope& env, const QuadratureRule& rule) {
    if (rule.scheme == QuadScheme::tanh_sinh_truncated && rule.truncation_radius <= 0.0) {
        const double p = env.square_map ? 2.0 * env.power + 1.0 : env.power;
        if (p < -0.5) return tanh_sinh_subtracted_log(logf, env, p, rule.order);
    }
    const std::vector<double> lt = log_terms(logf, env, rule, rule.order, nullptr);
    return log_sum_exp(lt);
}

double integrate_halfline_weighted(const std::function<double(double)>& logw,
                                   const std::function<double(double)>& f,
                                   const HalfLineEnvelope& env, const QuadratureRule& rule) {
    std::vector<double> ys;
    const std::vector<double> lt = log_terms(logw, env, rule, rule.order, &ys);
    double m = -kInf;
    for (double l : lt) m = std::max(m, l);
    if (m == -kInf) return 0.0;
    double s = 0.0;
    for (std::size_t i = 0; i < lt.size(); ++i) s += std::exp(lt[i] - m) * f(ys[i]);
    return std::exp(m) * s;
}

}  // namespace lpheat
