#pragma once

#include <stdexcept>

namespace lpheat {

// Quadrature or series failed to reach the requested accuracy.
struct NonConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Numeric evidence contradicts an analytically known classification.
// Not recoverable: it means either the evaluator or the caller is broken.
struct ClassificationMismatch : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace lpheat
