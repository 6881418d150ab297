// Serial vs OpenMP batch kernels. Run with --benchmark_counters_tabular=true.
#include <benchmark/benchmark.h>
#include <omp.h>

#include "pfkit/corpus.hpp"
#include "pfkit/properties.hpp"
#include "pfkit/verify.hpp"

using namespace pfkit;

namespace {

const std::vector<CorpusEntry>& corpus() { return builtin_corpus(); }

const std::vector<ExponentMatrix>& sweep_inputs() {
  static const std::vector<ExponentMatrix> ms = random_invertible(400, 77);
  return ms;
}

VerifyOptions oracle_options() {
  VerifyOptions o;
  o.oracle = true;
  o.max_dhat = 12;
  return o;
}

void annotate(benchmark::State& state, size_t items) {
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * items));
  state.counters["threads"] = omp_get_max_threads();
}

void BM_VerifySerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(verify_serial(corpus(), corpus(), VerifyOptions()));
  annotate(state, corpus().size());
}

void BM_VerifyParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(verify_parallel(corpus(), corpus(), VerifyOptions()));
  annotate(state, corpus().size());
}

void BM_VerifyOracleSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(verify_serial(corpus(), corpus(), oracle_options()));
  annotate(state, corpus().size());
}

void BM_VerifyOracleParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(verify_parallel(corpus(), corpus(), oracle_options()));
  annotate(state, corpus().size());
}

void BM_SweepSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(property_sweep_serial(sweep_inputs()));
  annotate(state, sweep_inputs().size());
}

void BM_SweepParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(property_sweep_parallel(sweep_inputs()));
  annotate(state, sweep_inputs().size());
}

}  // namespace

BENCHMARK(BM_VerifySerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VerifyParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VerifyOracleSerial)->Unit(benchmark::kMillisecond)->Iterations(1);
BENCHMARK(BM_VerifyOracleParallel)->Unit(benchmark::kMillisecond)->Iterations(1);
BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Unit(benchmark::kMillisecond);

int main(int argc, char** argv) {
  // Build the shared inputs outside the timed loops.
  corpus();
  sweep_inputs();
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
