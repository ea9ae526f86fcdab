#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lpheat/hfunc.hpp"

using namespace lpheat;

namespace {
double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }
}  // namespace

TEST_CASE("h_eval: eta == gamma is exactly 1") {
    CHECK(h_eval({2.4, 2.4}, 17.0) == 1.0);
    CHECK(h_eval({0.5, 0.5}, 1e-8) == 1.0);
    CHECK(h_eval({0.5, 0.5}, 1e8) == 1.0);
}

TEST_CASE("h_eval: frozen references across the u range") {
    CHECK(rel(h_eval({0.75, 1.5}, 4.0), 1.057061695158579541) < 1e-11);
    CHECK(rel(h_eval({0.75, 1.5}, 1e-6), 4.372588796114330723e-5) < 1e-11);
    CHECK(rel(h_eval({0.75, 1.5}, 300.0), 1.000627294472806036) < 1e-11);
    CHECK(rel(h_eval({1.25, 2.25}, 7.0), 0.9583265244699982985) < 1e-11);
    CHECK(rel(h_eval({0.4, 2.0}, 1e4), 1.000096019974232597) < 1e-11);
    CHECK(rel(h_eval({2.5, 2.9}, 1e7), 0.9999999400000021) < 1e-11);
    CHECK(rel(h_eval({0.9, 1.1}, 50.0), 1.000405451300967884) < 1e-11);
}

TEST_CASE("h_eval: tail limit is 1") {
    CHECK(h_eval({1.0, 1.5}, 1e8) >= 1.0 - 1e-4);
    CHECK(h_eval({1.0, 1.5}, 1e8) <= 1.0);
}

TEST_CASE("h_eval: domain") {
    CHECK_THROWS_AS(h_eval({0.0, 1.0}, 1.0), std::domain_error);
    CHECK_THROWS_AS(h_eval({2.0, 1.0}, 1.0), std::domain_error);
    CHECK_THROWS_AS(h_eval({1.0, 2.0}, 0.0), std::domain_error);
}

TEST_CASE("h_eval: integral and series forms agree to 1e-9 for u <= 50") {
    const double etas[7] = {0.1, 0.35, 0.55, 0.75, 1.0, 1.6, 2.5};
    const double ds[4] = {0.05, 0.25, 0.5, 1.25};
    const double us[8] = {1e-6, 1e-2, 0.4, 1.0, 4.7, 18.0, 33.0, 50.0};
    int n = 0;
    for (double eta : etas)
        for (double d : ds)
            for (double u : us) {
                const HParams p{eta, eta + d};
                CHECK(rel(h_eval(p, u), h_eval_series(p, u)) < 1e-9);
                ++n;
            }
    CHECK(n >= 200);
}

TEST_CASE("h: limits at the ends of the u range for eta < 1 < gamma and friends") {
    // H(u) ~ Gamma(eta)/Gamma(gamma) u^{gamma-eta} near 0, so the 1e-3
    // smallness threshold needs gaps gamma - eta >= 1/2 on this grid.
    for (double eta : {0.2, 0.5, 0.8, 0.95}) {
        for (double d : {0.5, 1.0, 2.0}) {
            const HParams p{eta, eta + d};
            CHECK(h_eval(p, 1e-8) <= 1e-3);
            CHECK(h_eval(p, 1e8) >= 1.0 - 1e-3);
        }
    }
}

TEST_CASE("h: below 1 for eta >= 1, eta < gamma") {
    // The gap 1 - H(u) closes exponentially at eta = 1, so strictness in
    // doubles is only checkable while it is representable (u <= 25 covers
    // every grid pair); beyond that assert the exact weak bound.
    for (double eta : {1.0, 1.4, 2.2}) {
        for (double d : {0.25, 1.0}) {
            for (double lu = std::log(1e-8); lu <= std::log(1e8); lu += 0.37) {
                const double u = std::exp(lu);
                const double h = h_eval({eta, eta + d}, u);
                CHECK(h <= 1.0 + 1e-13);  // evaluator noise floor
                if (u <= 25.0) CHECK(h < 1.0);
            }
        }
    }
}

TEST_CASE("h_sup: constant, tail-approached and interior cases") {
    const HSup s0 = h_sup({2.0, 2.0});
    CHECK(s0.sup == 1.0);

    const HSup s1 = h_sup({1.2, 2.0});
    CHECK(s1.sup == 1.0);
    CHECK(!s1.argmax.has_value());  // approached at infinity

    const HSup s2 = h_sup({0.75, 1.5});
    CHECK(rel(s2.sup, 1.061901080170516444) < 1e-11);
    REQUIRE(s2.argmax.has_value());
    CHECK(rel(*s2.argmax, 3.1361252897545333) < 1e-6);

    const HSup s3 = h_sup({0.9, 1.1});
    CHECK(rel(s3.sup, 1.005146894686096808) < 1e-11);
}

TEST_CASE("h_classify: representative cases") {
    const HClassification c0 = h_classify({2.0, 2.0}, 1e-6);
    CHECK(c0.kind == HKind::identity);
    CHECK(c0.sup_value == 1.0);

    const HClassification c1 = h_classify({1.25, 2.25}, 1e-6);
    CHECK(c1.kind == HKind::sup_one);
    CHECK(c1.sup_value <= 1.0 + 1e-6);
    CHECK(!c1.argmax_u.has_value());

    const HClassification c2 = h_classify({0.9, 1.1}, 1e-6);
    CHECK(c2.kind == HKind::exceeds);
    CHECK(c2.sup_value > 1.0 + 1e-4);
    REQUIRE(c2.threshold_u0.has_value());
    // H stays above 1 on a geometric sample beyond u0
    for (double lu = std::log(*c2.threshold_u0); lu <= std::log(1e8); lu += 0.5)
        CHECK(h_eval({0.9, 1.1}, std::exp(lu)) > 1.0);
}

TEST_CASE("h_classify: matches the closed-form predicate on the 90-point grid") {
    for (int i = 1; i <= 30; ++i) {
        const double eta = i / 10.0;
        for (double d : {0.0, 0.25, 1.0}) {
            const HClassification c = h_classify({eta, eta + d}, 1e-6);
            if (d == 0.0)
                CHECK(c.kind == HKind::identity);
            else if (eta >= 1.0)
                CHECK(c.kind == HKind::sup_one);
            else
                CHECK(c.kind == HKind::exceeds);
        }
    }
}

TEST_CASE("h_classify: tol validation") {
    CHECK_THROWS_AS(h_classify({1.0, 2.0}, 0.0), std::domain_error);
    CHECK_THROWS_AS(h_classify({1.0, 2.0}, 1e-3), std::domain_error);
}
