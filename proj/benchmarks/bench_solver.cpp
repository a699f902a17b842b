#include <benchmark/benchmark.h>

#include "implode/kempf_ness.hpp"
#include "implode/strata.hpp"

using namespace implode;

static void BM_SolveRealMoment(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const DimensionVector dv = DimensionVector::full_flag_for(GroupKind::A, n);
    const std::vector<Complex> zeros(dv.edges(), Complex(0, 0));
    const std::vector<double> target(dv.edges(), 0.0);
    const Quiver q = random_on_complex_level(dv, zeros, 11);
    SolveOptions opts;
    opts.tol = 1e-8;
    for (auto _ : state) benchmark::DoNotOptimize(solve_real_moment(q, target, opts));
}
BENCHMARK(BM_SolveRealMoment)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_PolystableTest(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const DimensionVector dv = DimensionVector::full_flag_for(GroupKind::A, n);
    const Quiver q = random_quiver(dv, QuiverMode::symplectic, 12);
    for (auto _ : state) benchmark::DoNotOptimize(polystable_test(q));
}
BENCHMARK(BM_PolystableTest)->Arg(3)->Arg(5)->Arg(8);

static void BM_EnumerateStrata(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_strata(GroupKind::A, n));
}
BENCHMARK(BM_EnumerateStrata)->Arg(6)->Arg(10)->Arg(14);

BENCHMARK_MAIN();
