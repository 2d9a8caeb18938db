#include <benchmark/benchmark.h>

#include <random>

#include "recruit/baseline.hpp"
#include "recruit/community.hpp"
#include "recruit/dataset.hpp"
#include "recruit/optimizer.hpp"
#include "recruit/pipeline.hpp"

using namespace recruit;

namespace {

const Scenario& scenario() {
  static const Scenario s = generate_scenario(ScenarioConfig{});
  return s;
}

Task with_radius(const Task& t, double fraction) {
  auto out = t;
  out.radius = fraction * kMapDiagonal;
  return out;
}

// Dense random matrices: T tasks x 2 skills over a shared worker set.
std::vector<EfficiencyMatrix> random_matrices(std::size_t tasks, std::size_t workers) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<EfficiencyMatrix> ms;
  for (std::uint32_t t = 0; t < tasks; ++t) {
    EfficiencyMatrix m;
    m.task = TaskId(t);
    m.skills = {SkillId(0), SkillId(1)};
    for (std::uint32_t w = 0; w < workers; ++w) {
      m.workers.emplace_back(w);
      for (int s = 0; s < 2; ++s) {
        const double v = u(rng);
        m.entries.push_back({v, v, 0.0, 0.0});
      }
    }
    ms.push_back(std::move(m));
  }
  return ms;
}

}  // namespace

static void BM_Solve(benchmark::State& state) {
  const auto ms = random_matrices(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(solve(ms));
}
BENCHMARK(BM_Solve)->Args({5, 50})->Args({20, 100})->Args({20, 400})->Unit(benchmark::kMillisecond);

static void BM_Louvain(benchmark::State& state) {
  const auto& s = scenario();
  const auto task = with_radius(s.tasks()[0], static_cast<double>(state.range(0)) / 100.0);
  const auto pool = filter_by_radius(s, task);
  const auto g = build_sfor(s, pool, task.requester);
  for (auto _ : state) benchmark::DoNotOptimize(louvain(g, 1));
  state.counters["nodes"] = static_cast<double>(g.node_count());
  state.counters["edges"] = static_cast<double>(g.edges().size());
}
BENCHMARK(BM_Louvain)->Arg(10)->Arg(30)->Arg(100)->Unit(benchmark::kMillisecond);

static void BM_CdIlp(benchmark::State& state) {
  const auto& s = scenario();
  std::vector<Task> tasks;
  for (const auto& t : s.tasks()) tasks.push_back(with_radius(t, static_cast<double>(state.range(0)) / 100.0));
  PipelineOptions opt;
  opt.normalizers = NormalizerScope::Reference;
  for (auto _ : state) benchmark::DoNotOptimize(run_cd_ilp(s, tasks, opt));
}
BENCHMARK(BM_CdIlp)->Arg(10)->Arg(20)->Arg(50)->Unit(benchmark::kMillisecond);

static void BM_Stochastic(benchmark::State& state) {
  const auto& s = scenario();
  std::vector<Task> tasks;
  std::vector<CandidatePool> pools;
  for (const auto& t : s.tasks()) {
    tasks.push_back(with_radius(t, static_cast<double>(state.range(0)) / 100.0));
    pools.push_back(filter_by_radius(s, tasks.back()));
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(stochastic_select(tasks, pools, s, StopRule{}, 2, NormalizerScope::Reference));
  }
}
BENCHMARK(BM_Stochastic)->Arg(10)->Arg(20)->Arg(50)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
