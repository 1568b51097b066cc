#include <benchmark/benchmark.h>

#include <random>

#include "landsketch/evaluate/benchmark.hpp"
#include "landsketch/evaluate/scene_sampler.hpp"
#include "landsketch/evaluate/ssim.hpp"
#include "landsketch/illustrate/mock_backend.hpp"
#include "landsketch/illustrate/plan.hpp"
#include "landsketch/illustrate/render.hpp"
#include "landsketch/model/text_format.hpp"
#include "landsketch/solve/layout_solver.hpp"

using namespace landsketch;

namespace {

void BM_Solve(benchmark::State& state) {
  const auto& kb = PlantKnowledgeBase::builtin();
  const auto graph = evaluate::random_scene(3, kb, {static_cast<int>(state.range(0)),
                                                    static_cast<int>(state.range(0))}).graph;
  for (auto _ : state) benchmark::DoNotOptimize(solve::solve(graph, kb));
}
BENCHMARK(BM_Solve)->Arg(2)->Arg(4)->Arg(6);

void BM_OracleBenchmark100(benchmark::State& state) {
  const auto& kb = PlantKnowledgeBase::builtin();
  evaluate::LayoutGenerator oracle = [&](const SceneGraph& g) { return solve::solve(g, kb); };
  for (auto _ : state) benchmark::DoNotOptimize(evaluate::run_benchmark(oracle, {}, kb, 7));
}
BENCHMARK(BM_OracleBenchmark100)->Unit(benchmark::kMillisecond);

void BM_ParseLayout(benchmark::State& state) {
  const auto& kb = PlantKnowledgeBase::builtin();
  const auto graph = evaluate::random_scene(5, kb, {6, 6}).graph;
  const std::string text = serialize_layout(solve::solve(graph, kb));
  const std::string triples = linearize_graph(graph);
  for (auto _ : state) {
    benchmark::DoNotOptimize(parse_layout(text, Canvas{}));
    benchmark::DoNotOptimize(parse_triples(triples));
  }
}
BENCHMARK(BM_ParseLayout);

void BM_Ssim(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(1);
  Image a(n, n, 3), b(n, n, 3);
  for (auto& v : a.pixels) v = static_cast<std::uint8_t>(rng());
  for (auto& v : b.pixels) v = static_cast<std::uint8_t>(rng());
  for (auto _ : state) benchmark::DoNotOptimize(evaluate::ssim(a, b));
}
BENCHMARK(BM_Ssim)->Arg(64)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_RenderScene(benchmark::State& state) {
  const auto& kb = PlantKnowledgeBase::builtin();
  const auto graph = evaluate::random_scene(8, kb, {5, 5}).graph;
  const auto plan = illustrate::plan_composition(graph, solve::solve(graph, kb), {}, 1);
  illustrate::MockBackend backend(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(illustrate::render_scene(plan, backend, {state.range(0) != 0}));
  }
}
BENCHMARK(BM_RenderScene)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
