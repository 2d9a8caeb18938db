#include "recruit/pipeline.hpp"

#include <algorithm>

namespace recruit {

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t louvain_seed(std::uint64_t run_seed, TaskId task, RelationKind kind) {
  return mix_seed(mix_seed(run_seed, task.value), kind == RelationKind::Sfor ? 1 : 2);
}

TaskTrace filter_task(const Scenario& scenario, const Task& task, const PipelineOptions& options) {
  auto pool = filter_by_radius(scenario, task);
  auto sfor = build_sfor(scenario, pool, task.requester, options.max_hops);
  auto sor = build_sor(scenario, pool, task.requester, options.sor);
  auto sfor_part = louvain(sfor, louvain_seed(options.seed, task.id, RelationKind::Sfor));
  auto sor_part = louvain(sor, louvain_seed(options.seed, task.id, RelationKind::Sor));
  auto trusted = trusted_workers(sfor_part, sor_part, task.requester, pool);
  return TaskTrace{task,
                   std::move(pool),
                   std::move(sfor),
                   std::move(sor),
                   std::move(sfor_part),
                   std::move(sor_part),
                   std::move(trusted)};
}

PipelineResult run_cd_ilp(const Scenario& scenario, std::span<const Task> tasks,
                          const PipelineOptions& options) {
  std::vector<Task> current(tasks.begin(), tasks.end());
  PipelineResult result;
  result.traces.reserve(current.size());
  for (const auto& t : current) result.traces.push_back(filter_task(scenario, t, options));

  while (true) {
    result.matrices.clear();
    for (const auto& trace : result.traces) {
      if (options.normalizers == NormalizerScope::Reference) {
        const auto norm = mean_normalizers(scenario, trace.task, trace.pool.members, kUnboundedHops);
        result.matrices.push_back(build_efficiency_matrix(scenario, trace.task, trace.trusted.workers,
                                                          options.max_hops, norm));
      } else {
        result.matrices.push_back(
            build_efficiency_matrix(scenario, trace.task, trace.trusted.workers, options.max_hops));
      }
    }
    result.plan = solve(result.matrices);

    const bool grow = options.radius_growth > 1.0 && result.growth_rounds < options.max_growth_rounds;
    if (!grow || result.plan.solved_count() == result.plan.outcomes.size()) break;

    bool widened = false;
    for (std::size_t i = 0; i < current.size(); ++i) {
      if (result.plan.outcome(current[i].id).status != TaskStatus::Infeasible) continue;
      if (current[i].radius > kMapDiagonal) continue;  // already covers the whole map
      current[i].radius *= options.radius_growth;
      result.traces[i] = filter_task(scenario, current[i], options);
      widened = true;
    }
    if (!widened) break;
    ++result.growth_rounds;
  }
  return result;
}

}  // namespace recruit
