// Serial reference kernel vs the blocked OpenMP kernel, plus a parallel
// lambda sweep. Thread count follows TFIM_RFS_THREADS / OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include <vector>

#include "tfim/correlators.hpp"
#include "tfim/parallel.hpp"
#include "tfim/rfs.hpp"

namespace {

void BM_CorrelatorsSerial(benchmark::State& state) {
  const tfim::ChainSpec spec{state.range(0), 0.97};
  for (auto _ : state) {
    benchmark::DoNotOptimize(tfim::reference::correlators_finite_serial(spec));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_CorrelatorsBlocked(benchmark::State& state) {
  const tfim::ChainSpec spec{state.range(0), 0.97};
  for (auto _ : state) {
    benchmark::DoNotOptimize(tfim::correlators_finite(spec));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SweepParallel(benchmark::State& state) {
  const std::int64_t n = state.range(0);
  std::vector<double> chi(256);
  for (auto _ : state) {
    tfim::parallel_for(chi.size(), [&](std::size_t i) {
      chi[i] = tfim::rfs_finite({n, 0.8 + 0.3 * static_cast<double>(i) / 255.0}).chi;
    });
    benchmark::DoNotOptimize(chi.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(chi.size()));
}

void BM_SweepSerial(benchmark::State& state) {
  const std::int64_t n = state.range(0);
  std::vector<double> chi(256);
  for (auto _ : state) {
    for (std::size_t i = 0; i < chi.size(); ++i) {
      chi[i] = tfim::rfs_closed_form(tfim::build_rdm(tfim::reference::correlators_finite_serial(
                                         {n, 0.8 + 0.3 * static_cast<double>(i) / 255.0})))
                   .chi;
    }
    benchmark::DoNotOptimize(chi.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(chi.size()));
}

}  // namespace

BENCHMARK(BM_CorrelatorsSerial)->RangeMultiplier(8)->Range(1 << 10, 1 << 22);
BENCHMARK(BM_CorrelatorsBlocked)->RangeMultiplier(8)->Range(1 << 10, 1 << 22);
BENCHMARK(BM_SweepSerial)->Arg(1024)->Arg(16384);
BENCHMARK(BM_SweepParallel)->Arg(1024)->Arg(16384);

int main(int argc, char** argv) {
  tfim::configure_threads_from_env();
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
