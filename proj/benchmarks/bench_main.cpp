#include <benchmark/benchmark.h>

#include "hiddenspace/baselines.hpp"
#include "hiddenspace/embedding.hpp"
#include "hiddenspace/newtonian.hpp"
#include "hiddenspace/theory.hpp"

namespace {

hs::Graph model_graph(std::size_t nodes, double mean_degree) {
  hs::ModelParams p;
  p.nodes = nodes;
  p.mean_degree = mean_degree;
  p.seed = 3;
  return hs::giant_component(hs::generate(p).graph).graph;
}

void BM_EmbedDense(benchmark::State& state) {
  const auto g = model_graph(static_cast<std::size_t>(state.range(0)), 40.0);
  hs::EmbeddingConfig c;
  c.route = hs::EigenRoute::dense;
  for (auto _ : state) benchmark::DoNotOptimize(hs::embed(g, c));
  state.counters["nodes"] = static_cast<double>(g.node_count());
}
BENCHMARK(BM_EmbedDense)->Arg(200)->Arg(500)->Unit(benchmark::kMillisecond);

void BM_EmbedIterative(benchmark::State& state) {
  const auto g = model_graph(static_cast<std::size_t>(state.range(0)), 40.0);
  hs::EmbeddingConfig c;
  c.route = hs::EigenRoute::iterative;
  for (auto _ : state) benchmark::DoNotOptimize(hs::embed(g, c));
  state.counters["nodes"] = static_cast<double>(g.node_count());
}
BENCHMARK(BM_EmbedIterative)->Arg(200)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_CommonNeighbours(benchmark::State& state) {
  const auto g = model_graph(static_cast<std::size_t>(state.range(0)), 40.0);
  const auto pairs = hs::make_pair_set(hs::all_non_edges(g));
  for (auto _ : state) benchmark::DoNotOptimize(hs::cn_scores(g, pairs));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * pairs->size()));
}
BENCHMARK(BM_CommonNeighbours)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_Katz(benchmark::State& state) {
  const auto g = model_graph(static_cast<std::size_t>(state.range(0)), 40.0);
  const auto pairs = hs::make_pair_set(hs::all_non_edges(g));
  for (auto _ : state) benchmark::DoNotOptimize(hs::katz_scores(g, {}, pairs));
}
BENCHMARK(BM_Katz)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_Generate(benchmark::State& state) {
  hs::ModelParams p;
  p.nodes = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(hs::generate(p));
}
BENCHMARK(BM_Generate)->Arg(700)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_TheoreticalAuc(benchmark::State& state) {
  hs::TheoryParams t;
  t.panels = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(hs::theoretical_auc(t));
}
BENCHMARK(BM_TheoreticalAuc)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
