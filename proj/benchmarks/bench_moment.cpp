#include <benchmark/benchmark.h>

#include "implode/moment.hpp"
#include "implode/quiver.hpp"

using namespace implode;

static void BM_HkMoment(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const DimensionVector dv = DimensionVector::full_flag_for(GroupKind::A, n);
    const Quiver q = random_quiver(dv, QuiverMode::hyperkahler, 1);
    for (auto _ : state) benchmark::DoNotOptimize(hk_moment(q));
}
BENCHMARK(BM_HkMoment)->Arg(3)->Arg(5)->Arg(8)->Arg(12);

static void BM_GaugeAction(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const DimensionVector dv = DimensionVector::full_flag_for(GroupKind::A, n);
    const Quiver q = random_quiver(dv, QuiverMode::hyperkahler, 2);
    GaugeElement g = GaugeElement::identity(dv);
    for (auto _ : state) benchmark::DoNotOptimize(act_gauge(q, g));
}
BENCHMARK(BM_GaugeAction)->Arg(3)->Arg(5)->Arg(8);

static void BM_QuaternionRotate(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const DimensionVector dv = DimensionVector::full_flag_for(GroupKind::A, n);
    const Quiver q = random_quiver(dv, QuiverMode::hyperkahler, 3);
    const Quaternion u{0.5, 0.5, 0.5, 0.5};
    for (auto _ : state) benchmark::DoNotOptimize(quaternion_rotate(q, u));
}
BENCHMARK(BM_QuaternionRotate)->Arg(3)->Arg(8);

BENCHMARK_MAIN();
