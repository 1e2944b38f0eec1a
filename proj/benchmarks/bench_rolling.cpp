#include "rollframe/geometry.hpp"
#include "rollframe/oracle.hpp"
#include "rollframe/rolling.hpp"
#include "rollframe/zoo.hpp"

#include <benchmark/benchmark.h>
#include <cmath>

using namespace rollframe;

namespace {

constexpr double kTwoPi = 6.283185307179586;

struct Fixture {
    ZooEntry entry = make_chart("sphere");
    ChartCurve curve = make_curve(entry, "latitude", {{"value", 1.0471975511965976}},
                                  0.0, kTwoPi);
};

void BM_FundamentalSolution(benchmark::State& state) {
    Fixture f;
    const TimeGrid grid(0.0, kTwoPi, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        RollingSolution sol = fundamental_solution(f.entry.chart, f.curve, grid);
        benchmark::DoNotOptimize(sol.x_node(grid.steps()));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FundamentalSolution)->RangeMultiplier(4)->Range(128, 8192)->Complexity();

void BM_TraceCurve(benchmark::State& state) {
    Fixture f;
    const TimeGrid grid(0.0, kTwoPi, static_cast<int>(state.range(0)));
    const RollingSolution sol = fundamental_solution(f.entry.chart, f.curve, grid);
    for (auto _ : state) {
        auto samples = trace_curve(sol, 0.0, grid);
        benchmark::DoNotOptimize(samples.back().ambient);
    }
}
BENCHMARK(BM_TraceCurve)->RangeMultiplier(4)->Range(128, 2048);

void BM_Christoffel(benchmark::State& state) {
    Fixture f;
    Vec x(2);
    x << 1.0, 0.3;
    for (auto _ : state) {
        auto gamma = christoffel(f.entry.chart, x);
        benchmark::DoNotOptimize(gamma[0](0, 0));
    }
}
BENCHMARK(BM_Christoffel);

void BM_OracleDevelop(benchmark::State& state) {
    Fixture f;
    const TimeGrid grid(0.0, kTwoPi, static_cast<int>(state.range(0)));
    Vec x0 = Vec::Zero(2);
    for (auto _ : state) {
        auto samples = develop_direct(f.entry.chart, f.curve, x0, 0.0, grid);
        benchmark::DoNotOptimize(samples.back().ambient);
    }
}
BENCHMARK(BM_OracleDevelop)->Arg(1024)->Arg(4096);

} // namespace

BENCHMARK_MAIN();
