#include <benchmark/benchmark.h>

#include "bpe/fomc.hpp"
#include "bpe/oracle.hpp"
#include "bpe/pop.hpp"
#include "bpe/reductions.hpp"
#include "cli/commands.hpp"

namespace {

void BM_MarModifiedPadP(benchmark::State& state) {
  const bpe::SasInstance inst = bpe::cli::pad_p_instance(static_cast<int>(state.range(0)));
  std::uint64_t nodes = 0;
  for (auto _ : state) {
    const auto result = bpe::mar_plan(inst, 3, bpe::Variant::modified);
    nodes = result.stats.nodes;
    benchmark::DoNotOptimize(result.structure);
  }
  state.counters["nodes"] = static_cast<double>(nodes);
}
BENCHMARK(BM_MarModifiedPadP)->Arg(10)->Arg(100)->Arg(1000)->Arg(10000);

void BM_BfsPadP(benchmark::State& state) {
  const bpe::SasInstance inst = bpe::cli::pad_p_instance(static_cast<int>(state.range(0)));
  std::size_t explored = 0;
  for (auto _ : state) {
    const auto result = bpe::bfs_bounded_plan(inst, 3);
    explored = result.explored;
    benchmark::DoNotOptimize(result.plan);
  }
  state.counters["states"] = static_cast<double>(explored);
}
BENCHMARK(BM_BfsPadP)->Arg(10)->Arg(100)->Arg(1000);

void BM_BfsTriangleReduction(benchmark::State& state) {
  const bpe::PartitionedGraph g(3, 1,
                                {bpe::Edge({0, 0}, {1, 0}), bpe::Edge({0, 0}, {2, 0}),
                                 bpe::Edge({1, 0}, {2, 0})});
  const auto reduced = bpe::partitioned_clique_to_planning(g);
  for (auto _ : state) {
    benchmark::DoNotOptimize(bpe::bfs_bounded_plan(reduced.instance, reduced.k_prime).plan);
  }
}
BENCHMARK(BM_BfsTriangleReduction)->Unit(benchmark::kMillisecond);

void BM_ModelCheckingPadCore(benchmark::State& state) {
  const bpe::SasInstance inst = bpe::cli::pad_p_instance(0);
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(bpe::decide_via_model_checking(inst, k).plan_exists);
  }
}
BENCHMARK(BM_ModelCheckingPadCore)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
