#include <benchmark/benchmark.h>

#include "lpheat/hfunc.hpp"
#include "lpheat/kernels.hpp"
#include "lpheat/semigroup.hpp"
#include "lpheat/specfun.hpp"

using namespace lpheat;

static void BM_BesselScaledSeries(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(bessel_i_scaled(0.7, 12.5));
}
BENCHMARK(BM_BesselScaledSeries);

static void BM_BesselScaledAsymptotic(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(bessel_i_scaled(0.7, 4000.0));
}
BENCHMARK(BM_BesselScaledAsymptotic);

static void BM_Hyp1F1(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(hyp1f1(1.25, 2.0, 17.0));
}
BENCHMARK(BM_Hyp1F1);

static void BM_HEval(benchmark::State& state) {
    const HParams p{0.75, 1.5};
    double u = 1e-3;
    for (auto _ : state) {
        benchmark::DoNotOptimize(h_eval(p, u));
        u = u < 1e6 ? u * 1.7 : 1e-3;
    }
}
BENCHMARK(BM_HEval);

static void BM_KernelLogEval(benchmark::State& state) {
    const FamilyId f{static_cast<Family>(state.range(0)), 0};
    const AlphaIndex a{0.5};
    for (auto _ : state) benchmark::DoNotOptimize(kernel_log_eval(f, a, 0.25, {1.1}, {2.3}));
}
BENCHMARK(BM_KernelLogEval)->DenseRange(0, 5);

static void BM_GaussLaguerreNodes(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(gauss_laguerre(0.5, n));
}
BENCHMARK(BM_GaussLaguerreNodes)->Arg(100)->Arg(200)->Arg(400);

static void BM_RowMass(benchmark::State& state) {
    const QuadratureRule q{};
    for (auto _ : state)
        benchmark::DoNotOptimize(row_mass({Family::hermL, 0}, {0.6}, 0.37, {1.4}, q));
}
BENCHMARK(BM_RowMass);

static void BM_SupTtOne(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(sup_tt_one({Family::hermL, 0}, {0.25}, 0.01));
}
BENCHMARK(BM_SupTtOne);

BENCHMARK_MAIN();
