// OpenMP kernels against their serial references.
#include <benchmark/benchmark.h>

#include <random>

#include "jdd/discrepancy.hpp"
#include "jdd/kernels.hpp"

namespace {

jdd::Matrix random_points(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  jdd::Matrix m(rows, cols);
  for (auto& v : m.values()) v = u(rng);
  return m;
}

jdd::PairedSample random_sample(std::size_t m, std::uint64_t seed) {
  return jdd::PairedSample(random_points(m, 28, seed), random_points(m, 28, seed + 1));
}

void BM_Gram(benchmark::State& state) {
  const auto a = random_points(static_cast<std::size_t>(state.range(0)), 28, 1);
  const auto k = jdd::KernelSpec::rbf(0.25);
  for (auto _ : state) benchmark::DoNotOptimize(jdd::gram(k, a, a));
}

void BM_GramSerial(benchmark::State& state) {
  const auto a = random_points(static_cast<std::size_t>(state.range(0)), 28, 1);
  const auto k = jdd::KernelSpec::rbf(0.25);
  for (auto _ : state) benchmark::DoNotOptimize(jdd::serial::gram(k, a, a));
}

void BM_Jdd(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto p = random_sample(m, 2);
  const auto q = random_sample(m, 4);
  const auto k = jdd::KernelSpec::rbf(0.25);
  for (auto _ : state) benchmark::DoNotOptimize(jdd::jdd_biased(k, k, p, q));
}

void BM_JddSerial(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto p = random_sample(m, 2);
  const auto q = random_sample(m, 4);
  const auto k = jdd::KernelSpec::rbf(0.25);
  for (auto _ : state) benchmark::DoNotOptimize(jdd::serial::jdd_biased(k, k, p, q));
}

void BM_JddNaive(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto p = random_sample(m, 2);
  const auto q = random_sample(m, 4);
  const auto k = jdd::KernelSpec::rbf(0.25);
  for (auto _ : state) benchmark::DoNotOptimize(jdd::jdd_naive_oracle(k, k, p, q));
}

}  // namespace

BENCHMARK(BM_Gram)->RangeMultiplier(4)->Range(64, 1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GramSerial)->RangeMultiplier(4)->Range(64, 1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Jdd)->RangeMultiplier(4)->Range(64, 1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_JddSerial)->RangeMultiplier(4)->Range(64, 1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_JddNaive)->RangeMultiplier(4)->Range(64, 256)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
