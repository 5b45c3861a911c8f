#include <benchmark/benchmark.h>

#include <vector>

#include "transport/estimators.hpp"
#include "transport/replication.hpp"
#include "transport/rng.hpp"
#include "transport/simulation.hpp"
#include "transport/svg.hpp"

namespace {

transport::StudyDataset make_study(std::uint64_t seed) {
  const auto config = transport::calibrated({});
  transport::RandomSource rng(seed);
  return transport::generate_dataset(config, rng).dataset;
}

void BM_GenerateDataset(benchmark::State& state) {
  const auto config = transport::calibrated({});
  std::uint64_t seed = 1;
  for (auto _ : state) {
    transport::RandomSource rng(seed++);
    benchmark::DoNotOptimize(transport::generate_dataset(config, rng));
  }
}
BENCHMARK(BM_GenerateDataset);

void BM_FitEligibility(benchmark::State& state) {
  const auto study = make_study(11);
  for (auto _ : state)
    benchmark::DoNotOptimize(transport::fit_eligibility(study));
}
BENCHMARK(BM_FitEligibility);

void BM_EstimateAll(benchmark::State& state) {
  const auto study = make_study(12);
  for (auto _ : state) {
    benchmark::DoNotOptimize(transport::estimate_naive(study));
    benchmark::DoNotOptimize(transport::estimate_interaction_ols(study));
    benchmark::DoNotOptimize(transport::estimate_ipsw(study));
    benchmark::DoNotOptimize(transport::estimate_gformula(study, 2));
  }
}
BENCHMARK(BM_EstimateAll);

void BM_Replicate(benchmark::State& state) {
  const auto config = transport::calibrated({});
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(
        transport::run_replications(config, 10, 99, threads));
}
BENCHMARK(BM_Replicate)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_RenderSvg(benchmark::State& state) {
  const auto summary = transport::run_replications(transport::calibrated({}), 10, 7);
  for (auto _ : state)
    benchmark::DoNotOptimize(transport::render_boxplot_svg(summary));
}
BENCHMARK(BM_RenderSvg);

}  // namespace

BENCHMARK_MAIN();
