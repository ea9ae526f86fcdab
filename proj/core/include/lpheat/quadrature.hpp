#pragma once

#include <functional>
#include <vector>

#include "lpheat/errors.hpp"

namespace lpheat {

enum class QuadScheme { gauss_laguerre_generalized, tanh_sinh_truncated };

// Product rule over coordinates; each 1-d integral over (0, inf) is done
// against the family's known exponential/Gaussian envelope.
struct QuadratureRule {
    QuadScheme scheme = QuadScheme::gauss_laguerre_generalized;
    int order = 200;                 // nodes per coordinate, >= 16
    double truncation_radius = 0.0;  // tanh-sinh only; <= 0 means: derive from the envelope
    bool per_coordinate = true;
    void validate() const;
};

// Nodes/weights with sum_i w_i g(x_i) ~ int_0^inf g(x) x^a e^{-x} dx, a > -1.
// Nodes are Jacobi-matrix eigenvalues polished by Newton steps on the
// recurrence; weights come from the Christoffel formula in log space, so
// log_weight keeps full relative accuracy even where weight itself
// underflows to zero.
struct GaussLaguerre {
    std::vector<double> node, weight, log_weight;
};
GaussLaguerre gauss_laguerre(double a, int n);

// Tanh-sinh abscissas on (0,1). 1-x is carried separately so integrands with
// an endpoint power at 1 keep full precision.
struct TanhSinhNode {
    double x, one_minus, w;
};
std::vector<TanhSinhNode> tanh_sinh_nodes(int n);

// Decay profile of a positive half-line integrand: after the substitution
// v = scale*y (square_map = false) or v = scale*y^2 (square_map = true) the
// integrand is v^power * (entire in v) * e^{-v + sqrt_growth * sqrt(v)}.
// The sqrt term is the growth of the scaled Bessel factor; the truncated
// scheme must include it or it cuts the integrand while it is still large.
struct HalfLineEnvelope {
    double power;
    double scale;
    bool square_map;
    double sqrt_growth = 0.0;
};

// ln of int_0^inf exp(logf(y)) dy for a positive integrand with the given
// envelope. Assembled in log space end to end, so kernels at small t cannot
// overflow or drown.
double integrate_halfline_log(const std::function<double(double)>& logf,
                              const HalfLineEnvelope& env, const QuadratureRule& rule);

// int_0^inf exp(logw(y)) f(y) dy for a positive weight part logw and an
// arbitrary-sign smooth factor f.
double integrate_halfline_weighted(const std::function<double(double)>& logw,
                                   const std::function<double(double)>& f,
                                   const HalfLineEnvelope& env, const QuadratureRule& rule);

}  // namespace lpheat
