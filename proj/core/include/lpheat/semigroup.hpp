#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "lpheat/families.hpp"
#include "lpheat/kernels.hpp"
#include "lpheat/quadrature.hpp"

namespace lpheat {

// T_t f(x) by per-coordinate quadrature for a tensor-product f; factors[i]
// is the i-th 1-d factor of f. Signals NonConvergence when doubling the
// quadrature order moves the result by more than 10x the 1e-8 target.
double apply(const FamilyId& family, const AlphaIndex& alpha, double t,
             std::span<const std::function<double(double)>> factors, const Point& x,
             const QuadratureRule& quad);

// One-dimensional convenience overload.
double apply(const FamilyId& family, const AlphaIndex& alpha, double t,
             const std::function<double(double)>& f, double x, const QuadratureRule& quad);

// Closed form of T_t 1(x); the product of the per-coordinate factors below.
double tt_one_closed(const FamilyId& family, const AlphaIndex& alpha, double t, const Point& x);

// The i-th coordinate factor of T_t 1 (0-based i). Modifier prefactors are
// folded into the modified coordinate.
double tt_one_coord(const FamilyId& family, const AlphaIndex& alpha, int i, double t, double xi);

// Quadrature of int K_t(x, y) dmu(y); must reproduce tt_one_closed.
double row_mass(const FamilyId& family, const AlphaIndex& alpha, double t, const Point& x,
                const QuadratureRule& quad);

// Closed-form operator-norm bound of T_t on every L^p (valid on the
// family's contractive alpha range; outside it the sweep records the
// empirical excess over this same expression).
double contraction_bound(const FamilyId& family, const AlphaIndex& alpha, double t);

struct SupResult {
    double sup;
    Point argmax;   // representative point; for boundary suprema the nearest grid end
    bool attained;  // false when some coordinate's sup is only a limit at 0 or infinity
};

// sup_x T_t 1(x) over (0, inf)^d: per-coordinate geometric grids on the
// family's natural scale, golden-section refinement, and the analytic
// boundary limits of the closed forms.
SupResult sup_tt_one(const FamilyId& family, const AlphaIndex& alpha, double t);

// | int G_t(x,z) G_s(z,y) dmu(z) - G_{t+s}(x,y) | / G_{t+s}(x,y), d = 1,
// base families only (multi-d follows from the tensor structure).
double ck_residual(const FamilyId& family, const AlphaIndex& alpha, double t, double s, double x,
                   double y, const QuadratureRule& quad);

struct ContractivityReport {
    FamilyId family;
    AlphaIndex alpha;
    std::vector<double> t_grid;
    std::vector<double> sup_per_t;
    std::vector<double> bound_per_t;
    bool contractive;                // max_t sup <= 1 + tol
    bool within_bound;               // sup <= bound * (1 + tol) at every t
    std::optional<double> witness_t; // present iff non-contractive:
    std::optional<Point> witness_x;  //   a point with T_t 1 > 1 + tol
    std::optional<double> witness_value;
    std::optional<double> excess_constant;  // max_t sup/bound when non-contractive
};

// One report per alpha. Pure; grid entries are processed independently (and
// possibly concurrently), so reports are bit-identical run to run.
std::vector<ContractivityReport> contractivity_sweep(const FamilyId& family,
                                                     const std::vector<AlphaIndex>& alpha_grid,
                                                     const std::vector<double>& t_grid, double tol);

}  // namespace lpheat
