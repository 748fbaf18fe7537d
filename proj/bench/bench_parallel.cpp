// OpenMP kernels against their serial references.

#include <benchmark/benchmark.h>

#include "aging/estimation.hpp"
#include "aging/functionals.hpp"
#include "aging/simstudy.hpp"

namespace {

std::vector<double> grid(double lo, double hi, std::size_t n) {
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = lo + (hi - lo) * i / (n - 1);
  return g;
}

const aging::HazardModel& model() {
  static const auto m = aging::HazardModel::truncated_log_weibull(0.5, 2.0);
  return m;
}

void BM_Profile(benchmark::State& state) {
  const auto g = grid(0.05, 5, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(aging::profile(model(), g));
}

void BM_ProfileSerial(benchmark::State& state) {
  const auto g = grid(0.05, 5, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(aging::profile_serial(model(), g));
}

aging::SurvivalSample sample(std::size_t n) {
  std::vector<aging::Observation> obs;
  for (double t : aging::sample_weibull(0.5, 1.5, n, 1)) obs.push_back({t, true});
  return aging::make_sample(std::move(obs));
}

void BM_KernelHazard(benchmark::State& state) {
  const auto s = sample(static_cast<std::size_t>(state.range(0)));
  const auto g = grid(s.min_time(), s.max_time(), 512);
  for (auto _ : state) benchmark::DoNotOptimize(aging::kernel_hazard(s, std::nullopt, g));
}

void BM_KernelHazardSerial(benchmark::State& state) {
  const auto s = sample(static_cast<std::size_t>(state.range(0)));
  const auto g = grid(s.min_time(), s.max_time(), 512);
  for (auto _ : state) benchmark::DoNotOptimize(aging::kernel_hazard_serial(s, std::nullopt, g));
}

aging::SimConfig study(std::size_t reps) {
  auto cfg = aging::parse_sim_config("sample_sizes=1000,5000\n");
  cfg.replications = reps;
  return cfg;
}

void BM_Study(benchmark::State& state) {
  const auto cfg = study(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(aging::run_study(cfg));
}

void BM_StudySerial(benchmark::State& state) {
  const auto cfg = study(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(aging::run_study_serial(cfg));
}

}  // namespace

BENCHMARK(BM_Profile)->Arg(64)->Arg(512)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ProfileSerial)->Arg(64)->Arg(512)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_KernelHazard)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_KernelHazardSerial)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Study)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_StudySerial)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_MAIN();
