#pragma once

#include <optional>

#include "lpheat/errors.hpp"

namespace lpheat {

// Parameters of the contraction gauge
//   H_{eta,gamma}(u) = Gamma(eta)/Gamma(gamma) * u^{gamma-eta} e^{-u} 1F1(eta; gamma; u),
// defined for gamma >= eta > 0. Whether a semigroup in this library is an
// L^p contraction reduces to whether the sup of this function is 1 or
// exceeds 1.
struct HParams {
    double eta;
    double gamma;
    void validate() const;
};

// H_{eta,gamma}(u), u > 0. For eta < gamma this runs the integral
// representation
//   H(u) = 1/Gamma(gamma-eta) int_0^u s^{gamma-eta-1} e^{-s} (1-s/u)^{eta-1} ds
// on a fixed tanh-sinh rule that absorbs both endpoint powers; eta == gamma
// returns exactly 1. Good to ~1e-11 relative across u in [1e-8, 1e8].
double h_eval(const HParams& p, double u);

// Same quantity straight from the 1F1 series form; usable for u up to ~700
// before e^u overflows intermediate factors. Kept public as the independent
// second route for equivalence checks.
double h_eval_series(const HParams& p, double u);

struct HSup {
    double sup;
    std::optional<double> argmax;  // nullopt: the sup is only approached as u -> inf
};

// sup over u in (0, inf): 2000-point geometric grid on [1e-8, 1e8], then
// golden-section refinement to relative width 1e-10, compared against the
// tail limit 1.
HSup h_sup(const HParams& p);

enum class HKind {
    identity,  // eta == gamma: H constant 1
    sup_one,   // eta >= 1, eta < gamma: sup is 1, approached at infinity
    exceeds,   // eta < 1, eta < gamma: sup > 1, and H > 1 beyond some u0
};

struct HClassification {
    HKind kind;
    double sup_value;
    std::optional<double> argmax_u;      // nullopt: at infinity (or constant)
    std::optional<double> threshold_u0;  // exceeds only: H > 1 for all sampled u >= u0
};

// Trichotomy by (eta, gamma), cross-checked numerically with tolerance tol
// in (0, 1e-4]. Throws ClassificationMismatch if the numbers contradict the
// predicted kind.
HClassification h_classify(const HParams& p, double tol);

}  // namespace lpheat
