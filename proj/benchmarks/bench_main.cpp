#include <cmath>
#include <numbers>
#include <vector>

#include <benchmark/benchmark.h>

#include "diffrakt/estimators.hpp"
#include "diffrakt/gaf.hpp"
#include "diffrakt/kernels.hpp"
#include "diffrakt/numerics.hpp"
#include "diffrakt/samplers.hpp"
#include "diffrakt/window.hpp"

using namespace diffrakt;

static void BM_BesselHalfOrder(benchmark::State& state) {
  double z = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bessel_j(HalfOrder::from_twice(1), z));
    z = z < 50.0 ? z + 0.37 : 0.1;
  }
}
BENCHMARK(BM_BesselHalfOrder);

static void BM_GafH(benchmark::State& state) {
  double s = 0.01;
  for (auto _ : state) {
    benchmark::DoNotOptimize(gaf_h(s));
    s = s < 3.0 ? s + 0.013 : 0.01;
  }
}
BENCHMARK(BM_GafH);

static void BM_RadialFourierGauss(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  RadialProfile g{d, [](double r) { return std::exp(-std::numbers::pi * r * r); }, "gauss", 8.0, 0.5};
  for (auto _ : state) benchmark::DoNotOptimize(radial_fourier(g, 0.7));
}
BENCHMARK(BM_RadialFourierGauss)->Arg(1)->Arg(2)->Arg(3);

static void BM_SpectralDppSine(benchmark::State& state) {
  const Window w = Window::interval(0.0, static_cast<double>(state.range(0)));
  const SpectralDppPlan plan(KernelSpec::sine(), w, 4 * static_cast<int>(state.range(0)));
  std::uint64_t seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(plan.sample(seed++));
}
BENCHMARK(BM_SpectralDppSine)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

static void BM_ScatteringBinned(benchmark::State& state) {
  const Window w = Window::interval(0.0, 500.0);
  const SpectralDppPlan plan(KernelSpec::sine(), w, 2048);
  std::vector<PointConfiguration> samples;
  for (std::uint64_t i = 0; i < 8; ++i) samples.push_back(plan.sample(derive_seed(42, i)));
  std::vector<double> centres;
  for (int k = 1; k <= 60; ++k) centres.push_back(0.05 * k);
  EstimatorOptions opts;
  opts.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(estimate_scattering_binned(samples, centres, 0.05, opts));
}
BENCHMARK(BM_ScatteringBinned)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
