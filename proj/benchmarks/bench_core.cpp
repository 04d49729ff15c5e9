#include <benchmark/benchmark.h>

#include "refrabill/analysis.hpp"

using namespace refrabill;

namespace {

struct Fixture {
    BoundaryCurve curve = build_boundary(CurveSpec::ellipse(1.5, 1.0));
    BilliardParams params{1.0, 1.0, 2.0, 100.0};
    IntervalSystem system = build_interval_system(
        curve, find_central_configurations(curve), 0.05 * curve.total_length());
};

Fixture& fixture() {
    static Fixture f;
    return f;
}

} // namespace

static void BM_OuterArcSolve(benchmark::State& state) {
    auto& F = fixture();
    double xi = 0.05;
    for (auto _ : state) {
        xi = (xi < 0.3) ? xi + 1.0e-7 : 0.05;
        benchmark::DoNotOptimize(solve_outer_arc(F.curve, F.params, 0.0, xi));
    }
}
BENCHMARK(BM_OuterArcSolve);

static void BM_InnerArcSolve(benchmark::State& state) {
    auto& F = fixture();
    const Vec2 p0 = F.curve.point(0.1);
    Vec2 p1 = F.curve.point(2.1);
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_inner_arc(F.params, p0, p1));
}
BENCHMARK(BM_InnerArcSolve);

static void BM_OuterJacobiLength(benchmark::State& state) {
    auto& F = fixture();
    for (auto _ : state)
        benchmark::DoNotOptimize(s_outer(F.curve, F.params, 0.05, 0.25));
}
BENCHMARK(BM_OuterJacobiLength);

static void BM_ReturnMap(benchmark::State& state) {
    auto& F = fixture();
    const SurfaceState st =
        make_outward_state(F.curve, F.params, F.system.intervals[0].xi_bar, 0.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(return_map(F.curve, F.params, F.system, st));
}
BENCHMARK(BM_ReturnMap);

static void BM_MirandaCheck(benchmark::State& state) {
    auto& F = fixture();
    const Word w{{0, 1}, Word::Kind::Periodic};
    for (auto _ : state)
        benchmark::DoNotOptimize(
            miranda_check(F.curve, F.params, F.system, w, ChainMode::Periodic));
}
BENCHMARK(BM_MirandaCheck);

static void BM_RealizePeriodic(benchmark::State& state) {
    auto& F = fixture();
    const Word w{{0, 1, 2, 3}, Word::Kind::Periodic};
    RealizeOptions opt;
    opt.run_miranda = false;
    for (auto _ : state)
        benchmark::DoNotOptimize(realize_periodic(F.curve, F.params, F.system, w, opt));
}
BENCHMARK(BM_RealizePeriodic);

static void BM_SaddleSpectrum(benchmark::State& state) {
    auto& F = fixture();
    for (auto _ : state)
        benchmark::DoNotOptimize(saddle_spectrum(F.curve, F.params, F.system, 0));
}
BENCHMARK(BM_SaddleSpectrum);

BENCHMARK_MAIN();
