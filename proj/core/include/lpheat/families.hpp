#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lpheat/errors.hpp"

namespace lpheat {

// The six base semigroup families.
//   lag          Laguerre polynomial system, measure x^alpha e^{-x} dx
//   stdL         standard Laguerre functions, Lebesgue measure
//   hermL        Hermite-type Laguerre functions, Lebesgue measure
//   convL        convolution-type Laguerre functions, measure x^{2 alpha + 1} dx
//   besselSmall  Bessel semigroup with sqrt(xy) kernel, Lebesgue measure
//   besselBig    Bessel semigroup with (xy)^{-alpha} kernel, measure x^{2 alpha + 1} dx
enum class Family { lag, stdL, hermL, convL, besselSmall, besselBig };

// A base family, or its modified variant acting on coordinate j (1-based).
// Only the four Laguerre families have modified variants.
struct FamilyId {
    Family base;
    int modified_j = 0;  // 0: plain semigroup

    bool modified() const { return modified_j != 0; }
};

using AlphaIndex = std::vector<double>;  // one type parameter per coordinate, each > -1
using Point = std::vector<double>;       // a point of (0, inf)^d

const char* family_name(Family f);
std::optional<Family> family_from_name(std::string_view name);

// Name as used on the command line: base name, or "modified-<base>".
std::string family_id_name(const FamilyId& f);
std::optional<FamilyId> family_id_from_name(std::string_view name, int j = 1);

struct Admissibility {
    bool ok;
    std::string reason;  // empty when ok
    explicit operator bool() const { return ok; }
};

// Whether the semigroup is well defined on every L^p for this alpha. This is
// the domain-of-definition region, not the contractivity region; the two
// differ and keeping them apart is the whole point of the sweep machinery.
Admissibility admissible(const FamilyId& family, const AlphaIndex& alpha);

// Throwing form for operation entry points.
void require_admissible(const FamilyId& family, const AlphaIndex& alpha);

// ln density of the family's reference measure w.r.t. Lebesgue at x.
// Modified variants integrate against the measure of the original alpha.
double measure_log_density(const FamilyId& family, const AlphaIndex& alpha, const Point& x);

// Per-coordinate version of the above.
double measure_log_density_coord(const FamilyId& family, double alpha_i, double xi);

}  // namespace lpheat
