// Serial reference kernels against their OpenMP and bitset counterparts.

#include <map>

#include <benchmark/benchmark.h>

#include "apfree/apcheck.hpp"
#include "apfree/constructions.hpp"
#include "apfree/modperm.hpp"

namespace {

using apfree::CheckKernel;

const apfree::FinitePermutation& k_terms(std::int64_t i_max) {
  static std::map<std::int64_t, apfree::FinitePermutation> cache;
  auto it = cache.find(i_max);
  if (it == cache.end()) it = cache.emplace(i_max, apfree::k_window(i_max).terms).first;
  return it->second;
}

void check_window(benchmark::State& state, CheckKernel kernel) {
  const auto& seq = k_terms(state.range(0));
  for (auto _ : state) {
    auto w = apfree::find_monotone_aps(seq, 3, apfree::DiffFilter::any(), std::nullopt, kernel);
    benchmark::DoNotOptimize(w);
  }
  state.counters["terms"] = static_cast<double>(seq.size());
}

void BM_PairSerial(benchmark::State& s) { check_window(s, CheckKernel::pair_serial); }
void BM_PairParallel(benchmark::State& s) { check_window(s, CheckKernel::pair_parallel); }
void BM_MiddleSweep(benchmark::State& s) { check_window(s, CheckKernel::middle_sweep); }

BENCHMARK(BM_PairSerial)->DenseRange(8, 12, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PairParallel)->DenseRange(8, 12, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MiddleSweep)->DenseRange(8, 14, 2)->Unit(benchmark::kMillisecond);

void brute_count(benchmark::State& state, bool parallel) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(apfree::brute_count_mod_free(n, 3, 10, parallel));
}

void BM_BruteCountSerial(benchmark::State& s) { brute_count(s, false); }
void BM_BruteCountParallel(benchmark::State& s) { brute_count(s, true); }

BENCHMARK(BM_BruteCountSerial)->DenseRange(7, 9)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BruteCountParallel)->DenseRange(7, 9)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
