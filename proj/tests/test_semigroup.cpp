#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <thread>

#include "lpheat/hfunc.hpp"
#include "lpheat/semigroup.hpp"
#include "lpheat/specfun.hpp"

using namespace lpheat;

namespace {
double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }
const QuadratureRule kGauss{};
const QuadratureRule kTanhSinh{QuadScheme::tanh_sinh_truncated, 300, 0.0, true};
}  // namespace

TEST_CASE("QuadratureRule validation") {
    QuadratureRule q;
    q.order = 8;
    CHECK_THROWS_AS(q.validate(), std::domain_error);
}

TEST_CASE("gauss_laguerre: moments of the weight") {
    for (double a : {-0.95, -0.5, 0.0, 1.3, 4.0}) {
        const GaussLaguerre gl = gauss_laguerre(a, 48);
        for (int k = 0; k <= 8; ++k) {
            double m = 0.0;
            for (std::size_t i = 0; i < gl.node.size(); ++i)
                m += gl.weight[i] * std::pow(gl.node[i], k);
            const double want = std::exp(log_gamma(a + k + 1.0));  // int x^{a+k} e^{-x}
            CHECK(rel(m, want) < 1e-11);
        }
    }
}

TEST_CASE("tanh_sinh_nodes: a doubly singular Beta integral") {
    const auto nodes = tanh_sinh_nodes(300);
    double s = 0.0;
    for (const auto& nd : nodes)
        s += nd.w * std::pow(nd.x, -0.5) * std::pow(nd.one_minus, -0.25);
    const double want = std::exp(log_gamma(0.5) + log_gamma(0.75) - log_gamma(1.25));
    CHECK(rel(s, want) < 1e-12);
}

TEST_CASE("tt_one_closed: frozen values") {
    CHECK(rel(tt_one_closed({Family::stdL, 0}, {0.0}, 1.0, {2.0}), 0.5586502546162494362) < 1e-12);
    CHECK(rel(tt_one_closed({Family::hermL, 0}, {-0.5}, 0.3, {1.0}), 0.7021610910242276986) <
          1e-12);
    CHECK(rel(tt_one_closed({Family::besselSmall, 0}, {0.5}, 1.0, {2.0}), 0.8427007929497148693) <
          1e-11);
    CHECK(rel(tt_one_closed({Family::convL, 0}, {1.0}, 0.5, {2.0}), 0.09156098986235901885) <
          1e-12);
    CHECK(rel(tt_one_closed({Family::stdL, 0}, {0.6}, 0.37, {1.4}), 0.8389274354568533164) < 1e-11);
    CHECK(rel(tt_one_closed({Family::hermL, 0}, {0.6}, 0.37, {1.4}), 0.3762383548125115624) <
          1e-11);
    CHECK(rel(tt_one_closed({Family::lag, 1}, {0.6}, 0.37, {1.4}), 0.6924092208556707902) < 1e-11);
    CHECK(rel(tt_one_closed({Family::convL, 1}, {0.6}, 0.37, {1.4}), 0.1037873640933623524) <
          1e-11);
    // composition rules for the two remaining modified variants
    CHECK(rel(tt_one_closed({Family::stdL, 1}, {0.6}, 0.37, {1.4}),
              std::exp(-0.37 / 2) * tt_one_closed({Family::stdL, 0}, {1.6}, 0.37, {1.4})) < 1e-14);
    CHECK(rel(tt_one_closed({Family::hermL, 1}, {0.6}, 0.37, {1.4}),
              std::exp(-2 * 0.37) * tt_one_closed({Family::hermL, 0}, {1.6}, 0.37, {1.4})) < 1e-14);
}

TEST_CASE("tt_one_closed: conservative families are exactly 1") {
    CHECK(tt_one_closed({Family::lag, 0}, {0.5, -0.2}, 0.7, {1.0, 3.0}) == 1.0);
    CHECK(tt_one_closed({Family::besselBig, 0}, {1.0}, 0.25, {2.0}) == 1.0);
    CHECK(tt_one_closed({Family::besselSmall, 0}, {-0.5}, 1.0, {2.0}) == 1.0);
}

TEST_CASE("tt_one_closed: multi-d is the product of coordinate factors") {
    const double v = tt_one_closed({Family::hermL, 0}, {0.25, 1.5}, 0.4, {1.0, 2.0});
    const double w = tt_one_closed({Family::hermL, 0}, {0.25}, 0.4, {1.0}) *
                     tt_one_closed({Family::hermL, 0}, {1.5}, 0.4, {2.0});
    CHECK(rel(v, w) < 1e-15);
}

TEST_CASE("row_mass: agrees with tt_one_closed, both schemes") {
    struct Case {
        FamilyId f;
        AlphaIndex a;
    };
    const Case cases[] = {
        {{Family::lag, 0}, {0.5, -0.2}}, {{Family::stdL, 0}, {0.6}},
        {{Family::hermL, 0}, {0.6}},     {{Family::convL, 0}, {1.0}},
        {{Family::besselSmall, 0}, {0.6}}, {{Family::besselBig, 0}, {0.6}},
        {{Family::lag, 1}, {0.6}},       {{Family::stdL, 1}, {-1.0}},
        {{Family::hermL, 1}, {-1.4}},    {{Family::convL, 1}, {-1.2}},
    };
    const double t = 0.37;
    for (const Case& c : cases) {
        const Point x(c.a.size(), 1.4);
        const double closed = tt_one_closed(c.f, c.a, t, x);
        CHECK(rel(row_mass(c.f, c.a, t, x, kGauss), closed) < 1e-7);
        CHECK(rel(row_mass(c.f, c.a, t, x, kTanhSinh), closed) < 1e-7);
    }
}

TEST_CASE("row_mass: modified coordinate hard against the admissibility wall") {
    // alpha_j close to -3/2 puts an endpoint power near y^{-1} into the row
    // integrand; part of its mass sits below the smallest positive double,
    // where only the analytic-subtraction path of the truncated rule (and
    // the weight of the Gauss rule) can account for it.
    for (const char* nm : {"modified-lag", "modified-convL"}) {
        const FamilyId f = *family_id_from_name(nm, 1);
        for (double t : {0.05, 0.4, 2.5}) {
            const double closed = tt_one_closed(f, {-1.49}, t, {1.3});
            CHECK(rel(row_mass(f, {-1.49}, t, {1.3}, kGauss), closed) < 1e-9);
            CHECK(rel(row_mass(f, {-1.49}, t, {1.3}, kTanhSinh), closed) < 1e-9);
        }
    }
}

TEST_CASE("row_mass: the two conservative families have unit mass") {
    CHECK(rel(row_mass({Family::lag, 0}, {0.5, -0.2}, 0.7, {1.0, 3.0}, kGauss), 1.0) < 1e-7);
    CHECK(rel(row_mass({Family::besselBig, 0}, {-0.3}, 0.2, {0.5}, kGauss), 1.0) < 1e-7);
    // strict loss of mass at an interior point for the submarkovian ones
    for (const Family f : {Family::stdL, Family::hermL, Family::convL, Family::besselSmall}) {
        CHECK(tt_one_closed({f, 0}, {1.0}, 0.5, {1.0}) < 1.0 - 1e-6);
    }
}

TEST_CASE("apply: constant function, eigenfunction, and semigroup law") {
    const auto one = [](double) { return 1.0; };
    CHECK(rel(apply({Family::lag, 0}, {0.5}, 1.0, one, 1.0, kGauss), 1.0) < 1e-8);
    CHECK(rel(apply({Family::besselBig, 0}, {0.7}, 0.4, one, 2.0, kGauss), 1.0) < 1e-8);

    // phi_0 of the Hermite-type family is an eigenfunction: eigenvalue 2a+2
    const double a = 1.0, t = 0.7, x = 1.3;
    const auto phi0 = [a](double y) {
        return M_SQRT2 * std::exp(-0.5 * log_gamma(a + 1.0)) * std::pow(y, a + 0.5) *
               std::exp(-0.5 * y * y);
    };
    CHECK(rel(apply({Family::hermL, 0}, {a}, t, phi0, x, kTanhSinh),
              std::exp(-t * (2.0 * a + 2.0)) * phi0(x)) < 1e-8);

    // T_t (T_s 1) = T_{t+s} 1, one (t, s, x) triple per family
    struct Case {
        FamilyId f;
        double alpha;
    };
    const Case cases[] = {{{Family::lag, 0}, 0.5},         {{Family::stdL, 0}, 0.8},
                          {{Family::hermL, 0}, 0.3},       {{Family::convL, 0}, 0.5},
                          {{Family::besselSmall, 0}, 0.7}, {{Family::besselBig, 0}, 0.7},
                          {{Family::lag, 1}, -0.7},        {{Family::stdL, 1}, -0.5},
                          {{Family::hermL, 1}, -1.0},      {{Family::convL, 1}, -0.9}};
    const double tt = 0.4, s = 0.3, xx = 1.2;
    for (const Case& c : cases) {
        const FamilyId f = c.f;
        const AlphaIndex al{c.alpha};
        const auto tts = [&](double y) { return tt_one_closed(f, al, s, {y}); };
        const double lhs = apply(f, al, tt, tts, xx, kTanhSinh);
        const double rhs = tt_one_closed(f, al, tt + s, {xx});
        CHECK(rel(lhs, rhs) < 1e-6);
    }
}

TEST_CASE("apply: unsettled quadrature raises the non-convergence signal") {
    const auto wild = [](double y) { return std::cos(150.0 * y * y); };
    QuadratureRule coarse{QuadScheme::tanh_sinh_truncated, 16, 0.0, true};
    CHECK_THROWS_AS(apply({Family::hermL, 0}, {0.5}, 0.2, wild, 1.0, coarse), NonConvergence);
    CHECK_THROWS_AS(row_mass({Family::hermL, 0}, {0.5}, 0.05, {1.0}, coarse), NonConvergence);
}

TEST_CASE("tt_one_closed: x small enough to underflow the gauge argument") {
    // gamma > eta: the closed form falls to its 0 limit smoothly...
    CHECK(tt_one_closed({Family::hermL, 0}, {0.5}, 0.5, {1e-160}) ==
          doctest::Approx(4.7694706072453144e-161).epsilon(1e-10));
    CHECK(tt_one_closed({Family::hermL, 0}, {0.5}, 0.5, {1e-200}) == 0.0);  // u underflows
    CHECK(tt_one_closed({Family::lag, 1}, {0.5}, 0.5, {1e-300}) ==
          doctest::Approx(7.2737958998054954e-151).epsilon(1e-10));
    // ...while eta = gamma keeps the plain prefactor
    CHECK(tt_one_closed({Family::hermL, 0}, {-0.5}, 0.5, {1e-160}) ==
          doctest::Approx(1.0 / std::sqrt(std::cosh(1.0))).epsilon(1e-14));
}

TEST_CASE("contraction_bound: closed forms") {
    const double t = 0.8;
    CHECK(contraction_bound({Family::lag, 0}, {0.5, 0.5}, t) == 1.0);
    CHECK(rel(contraction_bound({Family::stdL, 0}, {0.5, 0.5}, t),
              std::pow(std::cosh(t / 2), -2.0)) < 1e-15);
    CHECK(rel(contraction_bound({Family::hermL, 0}, {0.5}, t), std::pow(std::cosh(2 * t), -0.5)) <
          1e-15);
    CHECK(rel(contraction_bound({Family::convL, 0}, {0.5, 1.0}, t),
              std::pow(std::cosh(2 * t), -3.5)) < 1e-15);
    CHECK(rel(contraction_bound({Family::lag, 1}, {0.5}, t), std::exp(-t / 2)) < 1e-15);
    CHECK(rel(contraction_bound({Family::hermL, 1}, {0.5}, t),
              std::exp(-2 * t) * std::pow(std::cosh(2 * t), -0.5)) < 1e-15);
}

TEST_CASE("sup_tt_one: bounds attained and crossed") {
    // stdL at alpha = 0: sup equals sech(t/2), approached as x -> 0
    for (double t : {0.1, 0.8, 2.0}) {
        const SupResult s = sup_tt_one({Family::stdL, 0}, {0.0}, t);
        CHECK(std::abs(s.sup - 1.0 / std::cosh(0.5 * t)) < 1e-9);
        CHECK(!s.attained);
    }
    // Hermite-type at alpha inside (-1/2, 1/2): not a contraction for small t
    CHECK(sup_tt_one({Family::hermL, 0}, {0.0}, 0.01).sup > 1.0);
    CHECK(sup_tt_one({Family::hermL, 0}, {0.4}, 1e-3).sup > 1.0 + 1e-4);
    // at the isolated point -1/2 and on [1/2, inf) it is one
    CHECK(sup_tt_one({Family::besselSmall, 0}, {-0.5}, 0.5).sup == 1.0);
    CHECK(sup_tt_one({Family::besselSmall, 0}, {1.5}, 0.5).sup <= 1.0);
    // modified lag at alpha_j >= -1/2: sup is exactly e^{-t/2}, at infinity
    const SupResult m = sup_tt_one({Family::lag, 1}, {-0.5}, 0.6);
    CHECK(std::abs(m.sup - std::exp(-0.3)) < 1e-9);
    CHECK(!m.attained);
    // mixed d = 2 of Hermite type: one bad coordinate poisons the pair
    CHECK(sup_tt_one({Family::hermL, 0}, {0.0, 1.0}, 1e-3).sup > 1.0);
}

TEST_CASE("ck_residual: base families satisfy the semigroup identity") {
    CHECK(ck_residual({Family::lag, 0}, {0.5}, 0.5, 0.5, 1.0, 2.0, kGauss) <= 1e-7);
    CHECK(ck_residual({Family::hermL, 0}, {1.0}, 0.3, 0.7, 0.5, 1.5, kGauss) <= 1e-7);
    // t = s, x = y: integral of the squared kernel
    CHECK(ck_residual({Family::besselSmall, 0}, {1.0}, 0.2, 0.2, 1.0, 1.0, kGauss) <= 1e-7);
    CHECK(ck_residual({Family::stdL, 0}, {1.0}, 0.5, 0.25, 0.7, 1.2, kTanhSinh) <= 1e-7);
    CHECK_THROWS_AS(ck_residual({Family::lag, 1}, {0.5}, 0.5, 0.5, 1.0, 2.0, kGauss),
                    std::domain_error);
    CHECK_THROWS_AS(ck_residual({Family::lag, 0}, {0.5}, 0.0, 0.5, 1.0, 2.0, kGauss),
                    std::domain_error);
    CHECK_THROWS_AS(ck_residual({Family::lag, 0}, {0.5, 0.5}, 0.5, 0.5, 1.0, 2.0, kGauss),
                    std::domain_error);
}

TEST_CASE("contractivity_sweep: sharp ranges on canonical grids") {
    const std::vector<double> ts{1e-3, 1e-2, 0.1, 0.5, 1.0, 3.0};

    SUBCASE("Hermite-type") {
        const std::vector<AlphaIndex> grid{{-0.5}, {-0.4}, {0.0}, {0.4}, {0.5}, {1.0}, {3.0}};
        const auto reps = contractivity_sweep({Family::hermL, 0}, grid, ts, 1e-6);
        const bool want[7] = {true, false, false, false, true, true, true};
        for (int i = 0; i < 7; ++i) {
            CHECK(reps[i].contractive == want[i]);
            if (want[i]) CHECK(reps[i].within_bound);
            if (!want[i]) {
                REQUIRE(reps[i].witness_value.has_value());
                CHECK(*reps[i].witness_value > 1.0 + 1e-6);
                REQUIRE(reps[i].excess_constant.has_value());
                CHECK(*reps[i].excess_constant > 1.0);
            }
        }
    }

    SUBCASE("standard family is contractive with the sech bound") {
        const auto reps = contractivity_sweep({Family::stdL, 0}, {{0.0}, {0.5}, {2.0}}, ts, 1e-6);
        for (const auto& r : reps) {
            CHECK(r.contractive);
            CHECK(r.within_bound);
        }
    }

    SUBCASE("modified polynomial family") {
        const std::vector<AlphaIndex> grid{{-1.4}, {-1.0}, {-0.6}, {-0.5}, {0.0}};
        const auto reps = contractivity_sweep({Family::lag, 1}, grid, ts, 1e-6);
        const bool want[5] = {false, false, false, true, true};
        for (int i = 0; i < 5; ++i) {
            CHECK(reps[i].contractive == want[i]);
            if (!want[i]) {
                // sup exceeds e^{-t/2} only by a bounded factor
                REQUIRE(reps[i].excess_constant.has_value());
                CHECK(*reps[i].excess_constant > 1.0);
                CHECK(*reps[i].excess_constant < 10.0);
            }
        }
    }

    SUBCASE("inadmissible grid entries are rejected") {
        CHECK_THROWS_AS(contractivity_sweep({Family::stdL, 0}, {{-0.2}}, ts, 1e-6),
                        std::domain_error);
    }
}

TEST_CASE("contractivity_sweep: concurrent evaluation is bit-identical") {
    const std::vector<double> ts{1e-2, 0.5, 3.0};
    const std::vector<AlphaIndex> grid{{-0.5}, {0.0}, {0.4}, {1.0}};
    const auto a = contractivity_sweep({Family::hermL, 0}, grid, ts, 1e-6);
    const auto b = contractivity_sweep({Family::hermL, 0}, grid, ts, 1e-6);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].contractive == b[i].contractive);
        for (std::size_t k = 0; k < a[i].sup_per_t.size(); ++k)
            CHECK(a[i].sup_per_t[k] == b[i].sup_per_t[k]);  // bitwise
    }
}

TEST_CASE("pure functions: concurrent calls reproduce the sequential values") {
    const double want_h = h_eval({0.75, 1.5}, 4.0);
    const double want_k = kernel_log_eval({Family::hermL, 0}, {0.6}, 0.37, {1.4}, {0.9});
    const double want_m = row_mass({Family::convL, 1}, {-1.2}, 0.37, {1.4}, kGauss);
    std::vector<std::thread> pool;
    std::vector<int> bad(8, 0);
    for (int w = 0; w < 8; ++w) {
        pool.emplace_back([&, w] {
            for (int i = 0; i < 50; ++i) {
                if (h_eval({0.75, 1.5}, 4.0) != want_h) bad[w] = 1;
                if (kernel_log_eval({Family::hermL, 0}, {0.6}, 0.37, {1.4}, {0.9}) != want_k)
                    bad[w] = 1;
            }
            if (row_mass({Family::convL, 1}, {-1.2}, 0.37, {1.4}, kGauss) != want_m) bad[w] = 1;
        });
    }
    for (auto& th : pool) th.join();
    for (int w = 0; w < 8; ++w) CHECK(bad[w] == 0);
}

TEST_CASE("counterexample: a zero-order-term operator that is not conservative") {
    // order 1/2 (spectrally: the sine transform) loses mass; order -1/2
    // (cosine transform) preserves it, although both come from d^2/dx^2.
    const double v1 = tt_one_closed({Family::besselSmall, 0}, {0.5}, 1.0, {2.0});
    CHECK(v1 < 1.0 - 1e-3);
    const double v2 = tt_one_closed({Family::besselSmall, 0}, {-0.5}, 1.0, {2.0});
    CHECK(std::abs(v2 - 1.0) <= 1e-12);
}
