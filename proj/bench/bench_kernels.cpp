#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "elastica/generators.hpp"
#include "elastica/kernels.hpp"

using namespace elastica;

namespace {

DiscreteCurve curve_of(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_fourier_curve(1.0, 6, 0.4, n, rng);
}

template <auto Kernel>
void curvature(benchmark::State& state) {
  const auto c = curve_of(static_cast<std::size_t>(state.range(0)), 1);
  std::vector<double> kappa(c.size(), 0.0);
  for (auto _ : state) {
    Kernel(c.points(), kappa);
    benchmark::DoNotOptimize(kappa.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <auto Kernel>
void velocity(benchmark::State& state) {
  const auto c = curve_of(static_cast<std::size_t>(state.range(0)), 2);
  std::vector<double> kappa(c.size(), 0.0), v(c.size(), 0.0);
  kernels::serial::curvature_interior(c.points(), kappa);
  for (auto _ : state) {
    Kernel(c.arclength(), kappa, 2.0, v);
    benchmark::DoNotOptimize(v.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <auto Kernel>
void hausdorff(benchmark::State& state) {
  const auto a = curve_of(static_cast<std::size_t>(state.range(0)), 3);
  const auto b = curve_of(static_cast<std::size_t>(state.range(0)), 4);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(a.points(), b.points()));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(curvature<kernels::serial::curvature_interior>)->Name("curvature/serial")->RangeMultiplier(8)->Range(256, 1 << 17);
BENCHMARK(curvature<kernels::omp::curvature_interior>)->Name("curvature/omp")->RangeMultiplier(8)->Range(256, 1 << 17);
BENCHMARK(velocity<kernels::serial::velocity_interior>)->Name("velocity/serial")->RangeMultiplier(8)->Range(256, 1 << 17);
BENCHMARK(velocity<kernels::omp::velocity_interior>)->Name("velocity/omp")->RangeMultiplier(8)->Range(256, 1 << 17);
BENCHMARK(hausdorff<kernels::serial::directed_hausdorff>)->Name("hausdorff/serial")->RangeMultiplier(4)->Range(256, 1 << 14);
BENCHMARK(hausdorff<kernels::omp::directed_hausdorff>)->Name("hausdorff/omp")->RangeMultiplier(4)->Range(256, 1 << 14);

BENCHMARK_MAIN();
