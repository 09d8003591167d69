#include <benchmark/benchmark.h>

#include <vector>

#include "spectral/measure_space.hpp"
#include "spectral/random.hpp"
#include "spectral/sde_solver.hpp"
#include "spectral/simplex.hpp"
#include "spectral/volatility.hpp"

using namespace spectral;

namespace {

std::vector<double> grid(const Interval& I, std::size_t n) {
    std::vector<double> s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = I.lower() + I.length() * (i + 0.5) / n;
    return s;
}

void BM_HstarNorm(benchmark::State& state) {
    const Interval I(1.0, 1.0);
    const auto n = static_cast<std::size_t>(state.range(0));
    SplitMix64 rng(1);
    std::vector<double> w(n);
    for (auto& v : w) v = rng.uniform(-1.0, 1.0);
    const AtomicMeasure mu(I, grid(I, n), w);
    for (auto _ : state) benchmark::DoNotOptimize(hstar_norm(mu));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_HstarNorm)->RangeMultiplier(4)->Range(4, 4096)->Complexity();

void BM_Project(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    SplitMix64 rng(2);
    std::vector<double> x(n);
    for (auto& v : x) v = rng.uniform(-1.0, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(project(x));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Project)->RangeMultiplier(4)->Range(4, 4096)->Complexity();

void BM_SimulatePath(benchmark::State& state) {
    const Interval I(0.0, 1.0);
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto scheme = state.range(1) == 0 ? Scheme::projected_euler : Scheme::exponential;
    const SimulationConfig sim{grid(I, n),
                               make_centered_field(I, {PiecewiseLinearFn::identity(I)}, {0.5}),
                               1e-3, 1.0, scheme, 7, 1};
    const auto x0 = SimplexPoint::uniform(n);
    std::size_t p = 0;
    for (auto _ : state) benchmark::DoNotOptimize(simulate_path(sim, x0, p++));
}
BENCHMARK(BM_SimulatePath)->ArgsProduct({{2, 16, 64}, {0, 1}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
