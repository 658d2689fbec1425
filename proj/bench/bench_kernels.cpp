#include "tvacov/locallinear.hpp"
#include "tvacov/parallel.hpp"
#include "tvacov/scb.hpp"

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

using namespace tvacov;

namespace {

std::vector<double> noise(std::size_t n) {
    std::mt19937_64 eng(11);
    std::normal_distribution<double> z;
    std::vector<double> v(n);
    for (double& x : v) x = z(eng);
    return v;
}

void fit_parallel(benchmark::State& state) {
    const auto n = std::size_t(state.range(0));
    set_threads(int(state.range(1)));
    const std::vector<double> y = noise(n);
    const std::vector<double> grid = evaluation_grid(n, 0.2);
    for (auto _ : state) benchmark::DoNotOptimize(fit_curve(y, 0.2, Kernel{}, grid));
}

void fit_serial(benchmark::State& state) {
    const auto n = std::size_t(state.range(0));
    const std::vector<double> y = noise(n);
    const std::vector<double> grid = evaluation_grid(n, 0.2);
    for (auto _ : state) benchmark::DoNotOptimize(reference::fit_curve(y, 0.2, Kernel{}, grid));
}

void bootstrap_parallel(benchmark::State& state) {
    const auto n = std::size_t(state.range(0));
    set_threads(int(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(bootstrap_sup_draws(n, 0.2, Kernel{}, 500, 3));
}

void bootstrap_serial(benchmark::State& state) {
    const auto n = std::size_t(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(reference::bootstrap_sup_draws(n, 0.2, Kernel{}, 500, 3));
}

}  // namespace

BENCHMARK(fit_serial)->Arg(400)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(fit_parallel)->ArgsProduct({{400, 2000}, {1, 2, 4}})->Unit(benchmark::kMillisecond);
BENCHMARK(bootstrap_serial)->Arg(400)->Arg(800)->Unit(benchmark::kMillisecond);
BENCHMARK(bootstrap_parallel)->ArgsProduct({{400, 800}, {1, 2, 4}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
