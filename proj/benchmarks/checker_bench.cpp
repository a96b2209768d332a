#include <benchmark/benchmark.h>

#include "ivl/checker.hpp"
#include "ivl/harness.hpp"

namespace {

using namespace ivl;

std::vector<History> corpus(ObjectKind kind, std::size_t ops) {
  const auto params = fuzz_params_for(kind, 3, ops);
  std::vector<History> out;
  for (std::uint64_t seed = 0; seed < 64; ++seed) out.push_back(replay(random_schedule(seed, params)));
  return out;
}

void BM_CheckIvlCounter(benchmark::State& state) {
  const auto histories = corpus(ObjectKind::Counter, static_cast<std::size_t>(state.range(0)));
  const auto spec = SequentialSpec::counter();
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(check_ivl(histories[i++ % histories.size()], spec).ivl);
}
BENCHMARK(BM_CheckIvlCounter)->DenseRange(4, 10, 2)->Unit(benchmark::kMicrosecond);

void BM_CheckLinearizableLocked(benchmark::State& state) {
  const auto histories = corpus(ObjectKind::LockedCounter, static_cast<std::size_t>(state.range(0)));
  const auto spec = SequentialSpec::counter();
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(check_linearizable(histories[i++ % histories.size()], spec).linearizable);
}
BENCHMARK(BM_CheckLinearizableLocked)->DenseRange(4, 10, 2)->Unit(benchmark::kMicrosecond);

}  // namespace
