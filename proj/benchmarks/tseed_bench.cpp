#include <memory>
#include <random>
#include <string>

#include <benchmark/benchmark.h>

#include "tseed/aggregation.hpp"
#include "tseed/measures.hpp"
#include "tseed/propagation.hpp"
#include "tseed/windowing.hpp"

namespace {

using namespace tseed;

std::shared_ptr<const NodeTable> nodes(std::size_t n) {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back(std::to_string(i));
  return std::make_shared<const NodeTable>(NodeTable::from_ids(std::move(ids)));
}

// Sparse random contact log: n nodes, about `per_node` events each.
EventLog random_log(std::size_t n, std::size_t per_node, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<NodeIndex> node(0, static_cast<NodeIndex>(n - 1));
  std::uniform_int_distribution<Timestamp> time(0, 1'000'000);
  std::vector<Event> events;
  for (std::size_t i = 0; i < n * per_node; ++i) {
    const auto s = node(rng), t = node(rng);
    if (s != t) events.push_back({s, t, time(rng)});
  }
  return EventLog(std::move(events), nodes(n));
}

IntervalGraph random_graph(std::size_t n, std::size_t avg_degree, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<NodeIndex> node(0, static_cast<NodeIndex>(n - 1));
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n * avg_degree; ++i) edges.push_back({node(rng), node(rng)});
  return IntervalGraph(1, {0, 1, true}, std::move(edges));
}

void BM_BuildTsn(benchmark::State& state) {
  const auto log = random_log(static_cast<std::size_t>(state.range(0)), 20, 1);
  for (auto _ : state) benchmark::DoNotOptimize(build_tsn(log, 10));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(log.size()));
}
BENCHMARK(BM_BuildTsn)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_Betweenness(benchmark::State& state) {
  const auto g = random_graph(static_cast<std::size_t>(state.range(0)), 3, 2);
  for (auto _ : state) benchmark::DoNotOptimize(betweenness(g));
}
BENCHMARK(BM_Betweenness)->Arg(500)->Arg(2000)->Arg(8000)->Unit(benchmark::kMillisecond);

void BM_Closeness(benchmark::State& state) {
  const auto g = random_graph(static_cast<std::size_t>(state.range(0)), 3, 3);
  for (auto _ : state) benchmark::DoNotOptimize(closeness(g));
}
BENCHMARK(BM_Closeness)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_Aggregate(benchmark::State& state) {
  const auto log = random_log(10000, 20, 4);
  const auto tsn = build_tsn(log, 10);
  const auto matrix = measure_matrix(tsn, MeasureKind::out_degree);
  const auto kind = kAllAggregations[state.range(0)];
  for (auto _ : state) benchmark::DoNotOptimize(aggregate(matrix, kind));
  state.SetLabel(std::string(to_string(kind)));
}
BENCHMARK(BM_Aggregate)->DenseRange(0, 11)->Unit(benchmark::kMicrosecond);

void BM_PropagateLt(benchmark::State& state) {
  const auto log = random_log(static_cast<std::size_t>(state.range(0)), 20, 5);
  const auto tsn = build_tsn(log, 10);
  std::vector<NodeIndex> seeds;
  for (NodeIndex v = 0; v < log.nodes().size(); v += 20) seeds.push_back(v);
  const ThresholdConfig cfg{Threshold::parse("0.33"), false};
  for (auto _ : state) benchmark::DoNotOptimize(propagate_lt(tsn, seeds, cfg));
}
BENCHMARK(BM_PropagateLt)->Arg(1000)->Arg(10000)->Arg(50000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
