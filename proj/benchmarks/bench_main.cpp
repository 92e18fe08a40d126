#include <benchmark/benchmark.h>

#include "concav/eigen_bounds.hpp"
#include "concav/relu_bounds.hpp"
#include "concav/relu_model.hpp"

namespace {

concav::ReluDataset dataset(std::size_t d, std::size_t k, std::size_t n) {
  return concav::generate_dataset(concav::NetConfig{d, k, n, 1});
}

void BM_Alpha2FastPath(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  const auto data = dataset(10, k, 1000);
  for (auto _ : state) benchmark::DoNotOptimize(concav::bound_alpha2(data, k));
}
BENCHMARK(BM_Alpha2FastPath)->Arg(2)->Arg(5)->Arg(50);

void BM_Alpha2Explicit(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  const auto data = dataset(10, k, 1000);
  for (auto _ : state) {
    const auto m = concav::abar_gram(data, k);
    benchmark::DoNotOptimize(concav::power_iteration(m).value);
  }
}
BENCHMARK(BM_Alpha2Explicit)->Arg(2)->Arg(5)->Arg(50);

void BM_GershgorinAndCassini(benchmark::State& state) {
  const auto data = dataset(10, 5, 1000);
  const auto m = concav::abar_gram(data, 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(concav::gershgorin_upper(m));
    benchmark::DoNotOptimize(
        concav::brauer_cassini_upper(m, concav::CassiniVariant::kStandard));
  }
}
BENCHMARK(BM_GershgorinAndCassini);

void BM_LossGradient(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto data = dataset(10, 5, n);
  const auto w = concav::initial_student(concav::NetConfig{10, 5, n, 1});
  for (auto _ : state) benchmark::DoNotOptimize(concav::gradient(w, data));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_LossGradient)->Arg(1000)->Arg(10000);

void BM_OracleRandomSearch(benchmark::State& state) {
  const auto data = dataset(10, 5, 200);
  concav::OracleOptions o;
  o.budget = 100;
  for (auto _ : state) benchmark::DoNotOptimize(concav::alpha_oracle(data, 5, o));
}
BENCHMARK(BM_OracleRandomSearch);

}  // namespace

BENCHMARK_MAIN();
