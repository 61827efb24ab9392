// Serial reference versus OpenMP kernels.

#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "netbound/fme.hpp"
#include "netbound/scan.hpp"
#include "netbound/trilocal.hpp"

using namespace netbound;

namespace {

/// Candidate rows after eliminating F3, F3', F3'' and then F5 without pruning.
const LinearInequalitySystem& redundancy_input() {
  static const LinearInequalitySystem system = [] {
    const auto order = default_elimination_order();
    const std::vector<std::string> head(order.begin(), order.begin() + 3);
    const auto reduced = eliminate_all(hexagon_zero_marginal_system(), head);
    return fm_eliminate(reduced, order[3]);
  }();
  return system;
}

void BM_RemoveRedundantSerial(benchmark::State& state) {
  const auto& sys = redundancy_input();
  for (auto _ : state) benchmark::DoNotOptimize(remove_redundant_serial(sys));
  state.counters["rows"] = static_cast<double>(sys.size());
}

void BM_RemoveRedundantParallel(benchmark::State& state) {
  const auto& sys = redundancy_input();
  for (auto _ : state) benchmark::DoNotOptimize(remove_redundant(sys));
  state.counters["rows"] = static_cast<double>(sys.size());
}

SearchOptions search_options() {
  SearchOptions o;
  o.d = 3;
  o.seed = 4;
  o.restarts = 16;
  o.budget = 6000;
  o.stop_below = 0;  // run every restart to completion
  return o;
}

const SearchTarget kTarget = SearchTarget::symmetric(0.1, 0.45);

void BM_SearchSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(search_serial(kTarget, search_options()));
}

void BM_SearchParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(search(kTarget, search_options()));
}

ScanConfig scan_config() {
  ScanConfig cfg;
  cfg.plane = Plane::E1E2;
  cfg.resolution = 11;
  cfg.restarts = 4;
  cfg.budget = 4000;
  return cfg;
}

void BM_ScanSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(scan_serial(scan_config()));
}

void BM_ScanParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(scan(scan_config()));
}

}  // namespace

BENCHMARK(BM_RemoveRedundantSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_RemoveRedundantParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SearchSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SearchParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ScanSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ScanParallel)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
