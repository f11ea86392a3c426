#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "rivol/dfa.hpp"
#include "rivol/intervals.hpp"
#include "rivol/ks.hpp"
#include "rivol/rng.hpp"
#include "rivol/stretched_exp.hpp"
#include "rivol/synth.hpp"

using namespace rivol;

namespace {

StretchedExpFit unit_mean_fit(double gamma) {
  StretchedExpFit fit;
  fit.gamma = gamma;
  fit.a = std::pow(std::tgamma(2.0 / gamma) / std::tgamma(1.0 / gamma), gamma);
  fit.b = fit.norm_c();
  return fit;
}

void BM_dfa(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  std::vector<double> x(n);
  Rng rng(1);
  for (double& v : x) v = rng.normal();
  const auto scales = default_scales(n);
  for (auto _ : state) benchmark::DoNotOptimize(dfa_fluctuation(x, scales));
  state.SetComplexityN(static_cast<benchmark::IterationCount>(n));
}
BENCHMARK(BM_dfa)->Range(1 << 12, 1 << 17)->Complexity();

void BM_ks_two_sample(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const StretchedExpFit fit = unit_mean_fit(0.5);
  const auto a = empirical_cdf_values(se_sample_scaled(fit, n, 1));
  const auto b = empirical_cdf_values(se_sample_scaled(fit, n, 2));
  for (auto _ : state) benchmark::DoNotOptimize(ks_two_sample(a, b));
}
BENCHMARK(BM_ks_two_sample)->Range(1 << 10, 1 << 17);

void BM_se_sample(benchmark::State& state) {
  const StretchedExpFit fit = unit_mean_fit(0.3);
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(se_sample_scaled(fit, n, ++seed));
}
BENCHMARK(BM_se_sample)->Range(1 << 10, 1 << 15);

void BM_fit_se(benchmark::State& state) {
  const StretchedExpFit fit = unit_mean_fit(0.4);
  const auto dist = log_binned_pdf(se_sample_scaled(fit, 50000, 3), 20);
  for (auto _ : state) benchmark::DoNotOptimize(fit_se(dist));
}
BENCHMARK(BM_fit_se);

void BM_gen_fgn(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(gen_fgn(0.85, n, ++seed));
}
BENCHMARK(BM_gen_fgn)->Range(1 << 12, 1 << 18);

void BM_extract_intervals(benchmark::State& state) {
  VolatilitySeries vol;
  vol.stage = Stage::normalized;
  Rng rng(4);
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  for (std::size_t t = 0; t < n; ++t) {
    vol.values.push_back(std::exp(rng.normal()));
    vol.minute_of_day.push_back(static_cast<int>(t % 240));
    vol.day_index.push_back(static_cast<int>(t / 240));
  }
  for (auto _ : state) benchmark::DoNotOptimize(extract_intervals(vol, 2.0));
}
BENCHMARK(BM_extract_intervals)->Range(1 << 14, 1 << 17);

}  // namespace

BENCHMARK_MAIN();
