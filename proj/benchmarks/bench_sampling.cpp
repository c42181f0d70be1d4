#include <benchmark/benchmark.h>

#include "ghzsim/decoherence.hpp"
#include "ghzsim/estimators.hpp"
#include "ghzsim/oracle.hpp"
#include "ghzsim/samplers.hpp"

using namespace ghzsim;

namespace {

constexpr std::size_t kBatch = 4096;

template <class Sampler>
void run_sampler(benchmark::State& state, Sampler sample) {
  const GhzSpec spec = make_ghz(static_cast<int>(state.range(0)), 0.5);
  RngStream rng(1, 0);
  for (auto _ : state) {
    auto batch = sample(spec, kBatch, rng);
    benchmark::DoNotOptimize(batch);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * kBatch));
}

void BM_SampleQ(benchmark::State& s) { run_sampler(s, sample_q); }
void BM_SamplePNumber(benchmark::State& s) { run_sampler(s, sample_pp_number); }
void BM_SamplePSchwinger(benchmark::State& s) { run_sampler(s, sample_pp_schwinger); }

template <class Sampler>
void run_weights(benchmark::State& state, Sampler sample) {
  const int m = static_cast<int>(state.range(0));
  const Preset p = make_preset(PresetKind::automatic, m);
  RngStream rng(2, 0);
  const auto batch = sample(p.spec, kBatch, rng);
  for (auto _ : state) {
    auto w = weights_A(batch, p.plan);
    benchmark::DoNotOptimize(w);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * kBatch));
}

void BM_WeightsQ(benchmark::State& s) { run_weights(s, sample_q); }
void BM_WeightsPNumber(benchmark::State& s) { run_weights(s, sample_pp_number); }
void BM_WeightsPSchwinger(benchmark::State& s) { run_weights(s, sample_pp_schwinger); }

void BM_Dephase(benchmark::State& state) {
  const std::vector<Complex> w(kBatch, Complex{1.0, 0.5});
  RngStream rng(3, 0);
  for (auto _ : state) {
    auto acc = dephase_trajectories(w, 4, 0.1, 100, rng);
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * kBatch * 100));
}

void BM_Oracle(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const Preset p = make_preset(PresetKind::automatic, m);
  for (auto _ : state) {
    const StateVector s = build_state(p.spec);
    benchmark::DoNotOptimize(oracle_A(s, p.plan));
  }
}

}  // namespace

BENCHMARK(BM_SampleQ)->Arg(2)->Arg(8)->Arg(20)->Arg(60);
BENCHMARK(BM_SamplePNumber)->Arg(2)->Arg(8)->Arg(20)->Arg(60);
BENCHMARK(BM_SamplePSchwinger)->Arg(2)->Arg(8)->Arg(20)->Arg(60);
BENCHMARK(BM_WeightsQ)->Arg(2)->Arg(8)->Arg(20)->Arg(60);
BENCHMARK(BM_WeightsPNumber)->Arg(2)->Arg(8)->Arg(20)->Arg(60);
BENCHMARK(BM_WeightsPSchwinger)->Arg(2)->Arg(8)->Arg(20)->Arg(60);
BENCHMARK(BM_Dephase);
BENCHMARK(BM_Oracle)->Arg(4)->Arg(8)->Arg(12);
BENCHMARK_MAIN();
