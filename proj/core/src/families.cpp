#include "lpheat/families.hpp"

#include <cmath>
#include <sstream>

namespace lpheat {

const char* family_name(Family f) {
    switch (f) {
        case Family::lag: return "lag";
        case Family::stdL: return "stdL";
        case Family::hermL: return "hermL";
        case Family::convL: return "convL";
        case Family::besselSmall: return "besselSmall";
        case Family::besselBig: return "besselBig";
    }
    return "?";
}

std::optional<Family> family_from_name(std::string_view name) {
    for (Family f : {Family::lag, Family::stdL, Family::hermL, Family::convL,
                     Family::besselSmall, Family::besselBig}) {
        if (name == family_name(f)) return f;
    }
    return std::nullopt;
}

std::string family_id_name(const FamilyId& f) {
    if (!f.modified()) return family_name(f.base);
    return std::string("modified-") + family_name(f.base);
}

std::optional<FamilyId> family_id_from_name(std::string_view name, int j) {
    constexpr std::string_view prefix = "modified-";
    if (name.starts_with(prefix)) {
        auto base = family_from_name(name.substr(prefix.size()));
        if (!base) return std::nullopt;
        return FamilyId{*base, j};
    }
    auto base = family_from_name(name);
    if (!base) return std::nullopt;
    return FamilyId{*base, 0};
}

namespace {

Admissibility fail(const std::string& reason) { return {false, reason}; }

std::string coord_msg(int i, double v, const char* constraint) {
    std::ostringstream os;
    os << "alpha[" << i << "] = " << v << " violates " << constraint;
    return os.str();
}

// Per-coordinate bounds: {strict lower bound?, bound value}.
struct Bound {
    double value;
    bool strict;
    const char* text;
    bool holds(double a) const { return strict ? a > value : a >= value; }
};

constexpr Bound kLagBase{-1.0, true, "alpha_i > -1 (lag)"};
constexpr Bound kStdLBase{0.0, false, "alpha_i >= 0 (stdL)"};
constexpr Bound kHermLBase{-0.5, false, "alpha_i >= -1/2 (hermL)"};
constexpr Bound kConvLBase{-1.0, true, "alpha_i > -1 (convL)"};

Bound base_bound(Family f) {
    switch (f) {
        case Family::lag: return kLagBase;
        case Family::stdL: return kStdLBase;
        case Family::hermL: return kHermLBase;
        case Family::convL: return kConvLBase;
        case Family::besselSmall: return {-0.5, false, "alpha_i >= -1/2 (besselSmall)"};
        case Family::besselBig: return {-1.0, true, "alpha_i > -1 (besselBig)"};
    }
    return kLagBase;
}

// Modified coordinate j gets a widened range; the kernel runs at alpha_j + 1.
Bound modified_bound(Family f) {
    switch (f) {
        case Family::lag: return {-1.5, true, "alpha_j > -3/2 (modified-lag)"};
        case Family::stdL: return {-1.0, false, "alpha_j >= -1 (modified-stdL)"};
        case Family::hermL: return {-1.5, false, "alpha_j >= -3/2 (modified-hermL)"};
        case Family::convL: return {-1.5, true, "alpha_j > -3/2 (modified-convL)"};
        default: return {0.0, false, ""};
    }
}

}  // namespace

Admissibility admissible(const FamilyId& family, const AlphaIndex& alpha) {
    const int d = static_cast<int>(alpha.size());
    if (d < 1) return fail("alpha must have dimension >= 1");
    for (int i = 0; i < d; ++i) {
        if (!std::isfinite(alpha[i])) return fail(coord_msg(i, alpha[i], "finiteness"));
    }
    if (family.modified()) {
        if (family.base == Family::besselSmall || family.base == Family::besselBig)
            return fail("Bessel semigroups have no modified variant");
        if (family.modified_j < 1 || family.modified_j > d)
            return fail("modified coordinate j out of range");
    }
    for (int i = 0; i < d; ++i) {
        const bool is_j = family.modified() && i + 1 == family.modified_j;
        const Bound b = is_j ? modified_bound(family.base) : base_bound(family.base);
        if (!b.holds(alpha[i])) return fail(coord_msg(i, alpha[i], b.text));
    }
    return {true, ""};
}

void require_admissible(const FamilyId& family, const AlphaIndex& alpha) {
    const Admissibility a = admissible(family, alpha);
    if (!a.ok) throw std::domain_error(family_id_name(family) + ": " + a.reason);
}

double measure_log_density_coord(const FamilyId& family, double alpha_i, double xi) {
    if (!(xi > 0.0)) throw std::domain_error("measure_log_density: x must be in (0, inf)^d");
    switch (family.base) {
        case Family::lag: return alpha_i * std::log(xi) - xi;
        case Family::stdL:
        case Family::hermL:
        case Family::besselSmall: return 0.0;
        case Family::convL:
        case Family::besselBig: return (2.0 * alpha_i + 1.0) * std::log(xi);
    }
    return 0.0;
}

double measure_log_density(const FamilyId& family, const AlphaIndex& alpha, const Point& x) {
    require_admissible(family, alpha);
    if (x.size() != alpha.size())
        throw std::domain_error("measure_log_density: dimension mismatch between alpha and x");
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        s += measure_log_density_coord(family, alpha[i], x[i]);
    return s;
}

}  // namespace lpheat
