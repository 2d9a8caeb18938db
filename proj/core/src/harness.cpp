#include "recruit/harness.hpp"

#include <chrono>
#include <cmath>
#include <map>

#include "recruit/io.hpp"

namespace recruit {

HopLimit max_hops(Connectivity c) {
  switch (c) {
    case Connectivity::Small:
      return 1;
    case Connectivity::Medium:
      return 2;
    case Connectivity::Full:
      return kUnboundedHops;
  }
  return 2;
}

std::string to_string(Connectivity c) {
  switch (c) {
    case Connectivity::Small:
      return "small";
    case Connectivity::Medium:
      return "medium";
    case Connectivity::Full:
      return "full";
  }
  return "medium";
}

Connectivity parse_connectivity(const std::string& s) {
  if (s == "small") return Connectivity::Small;
  if (s == "medium") return Connectivity::Medium;
  if (s == "full") return Connectivity::Full;
  throw ConfigError("unknown connectivity scale '" + s + "' (small|medium|full)");
}

std::string to_string(Algorithm a) { return a == Algorithm::CdIlp ? "cd-ilp" : "stochastic"; }

Algorithm parse_algorithm(const std::string& s) {
  if (s == "cd-ilp") return Algorithm::CdIlp;
  if (s == "stochastic") return Algorithm::Stochastic;
  throw ConfigError("unknown algorithm '" + s + "' (cd-ilp|stochastic)");
}

void ExperimentConfig::validate() const {
  if (iterations < 1) throw ConfigError("iterations must be >= 1");
  if (connectivity.empty()) throw ConfigError("at least one connectivity scale is required");
  if (algorithms.empty()) throw ConfigError("at least one algorithm is required");
  for (auto f : radius_sweep) {
    if (!(f > 0.0 && f <= 1.0)) throw ConfigError("radius fractions must lie in (0,1]");
  }
  stop_rule.validate();
  generator.validate();
}

Scenario base_scenario(const ExperimentConfig& cfg) {
  if (cfg.scenario_dir) return load_scenario(*cfg.scenario_dir);
  return generate_scenario(cfg.generator);
}

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

IterationRecord record_from(const RecruitmentPlan& plan) {
  IterationRecord r;
  std::map<TaskId, EfficiencyEntry> per_task;
  for (const auto& a : plan.assignments) {
    auto& e = per_task[a.task];
    e.value += a.efficiency.value;
    e.skill_term += a.efficiency.skill_term;
    e.cost_term += a.efficiency.cost_term;
    e.trust_term += a.efficiency.trust_term;
  }
  for (const auto& o : plan.outcomes) {
    if (o.status == TaskStatus::Solved) {
      ++r.solved_tasks;
    } else {
      ++r.infeasible_tasks;
    }
  }
  if (r.solved_tasks > 0) {
    const double n = static_cast<double>(r.solved_tasks);
    for (const auto& [task, e] : per_task) {
      r.objective += e.value / n;
      r.skill_term += e.skill_term / n;
      r.cost_term += e.cost_term / n;
      r.trust_term += e.trust_term / n;
    }
  }
  return r;
}

// Scenario re-drawn for one iteration. The generator's skill count follows
// the base scenario so loaded files keep their own S.
Scenario iteration_scenario(const Scenario& base, const ExperimentConfig& cfg, std::size_t it) {
  auto gen = cfg.generator;
  gen.skill_count = base.skill_count();
  return resample_entities(base, gen, mix_seed(cfg.seed, it));
}

PipelineOptions pipeline_options(const ExperimentConfig& cfg, std::size_t it, Connectivity c) {
  PipelineOptions opt;
  opt.max_hops = max_hops(c);
  opt.sor = cfg.sor;
  opt.normalizers = cfg.normalizers;
  opt.seed = mix_seed(mix_seed(cfg.seed, it), 0xC0DE);
  return opt;
}

IterationRecord run_stochastic(const Scenario& scenario, std::span<const Task> tasks,
                               const ExperimentConfig& cfg, std::size_t it, Connectivity c) {
  auto rule = cfg.stop_rule;
  rule.seed = mix_seed(mix_seed(cfg.seed, it), mix_seed(cfg.stop_rule.seed, 0x5701));
  const auto start = Clock::now();
  std::vector<CandidatePool> pools;
  pools.reserve(tasks.size());
  for (const auto& t : tasks) pools.push_back(filter_by_radius(scenario, t));
  IterationRecord r;
  try {
    r = record_from(stochastic_select(tasks, pools, scenario, rule, max_hops(c), cfg.normalizers));
  } catch (const InfeasibleTask&) {
    r.infeasible_tasks = tasks.size();
  }
  r.runtime_ms = elapsed_ms(start);
  return r;
}

}  // namespace

MetricsRow summarize(const std::vector<IterationRecord>& records) {
  MetricsRow row;
  if (records.empty()) return row;
  row.algorithm = records.front().algorithm;
  row.connectivity = records.front().connectivity;
  row.radius_fraction = records.front().radius_fraction;
  row.iterations = records.size();

  double runtime = 0.0;
  std::vector<double> objectives;
  for (const auto& r : records) {
    runtime += r.runtime_ms;
    row.infeasible_tasks += r.infeasible_tasks;
    if (r.solved_tasks == 0) continue;
    ++row.solved_iterations;
    row.mean_skill_term += r.skill_term;
    row.mean_cost_term += r.cost_term;
    row.mean_trust_term += r.trust_term;
    row.mean_objective += r.objective;
    objectives.push_back(r.objective);
  }
  row.mean_runtime_ms = runtime / static_cast<double>(records.size());
  if (row.solved_iterations > 0) {
    const double n = static_cast<double>(row.solved_iterations);
    row.mean_skill_term /= n;
    row.mean_cost_term /= n;
    row.mean_trust_term /= n;
    row.mean_objective /= n;
    if (objectives.size() > 1) {
      double ss = 0.0;
      for (auto v : objectives) ss += (v - row.mean_objective) * (v - row.mean_objective);
      row.objective_stderr = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
    }
  }
  return row;
}

ExperimentResult run_comparison(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto base = base_scenario(cfg);
  const double radius_fraction = cfg.generator.task_radius / kMapDiagonal;

  // groups[c][a]: records for connectivity c, algorithm a
  std::vector<std::vector<std::vector<IterationRecord>>> groups(
      cfg.connectivity.size(), std::vector<std::vector<IterationRecord>>(cfg.algorithms.size()));
  ExperimentResult result;

  for (std::size_t it = 0; it < cfg.iterations; ++it) {
    const auto scenario = iteration_scenario(base, cfg, it);
    const auto tasks = scenario.tasks();
    for (std::size_t c = 0; c < cfg.connectivity.size(); ++c) {
      const auto conn = cfg.connectivity[c];
      for (std::size_t a = 0; a < cfg.algorithms.size(); ++a) {
        IterationRecord r;
        if (cfg.algorithms[a] == Algorithm::CdIlp) {
          const auto start = Clock::now();
          auto run = run_cd_ilp(scenario, tasks, pipeline_options(cfg, it, conn));
          const auto ms = elapsed_ms(start);
          r = record_from(run.plan);
          r.runtime_ms = ms;
          if (!result.first_run) result.first_run = std::move(run);
        } else {
          r = run_stochastic(scenario, tasks, cfg, it, conn);
        }
        r.algorithm = cfg.algorithms[a];
        r.connectivity = conn;
        r.radius_fraction = radius_fraction;
        r.iteration = it;
        groups[c][a].push_back(r);
        result.records.push_back(r);
      }
    }
  }

  for (const auto& by_algo : groups) {
    for (const auto& records : by_algo) result.rows.push_back(summarize(records));
  }
  return result;
}

ExperimentResult run_radius_sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.radius_sweep.empty()) throw ConfigError("radius sweep needs at least one radius");
  const auto base = base_scenario(cfg);
  const auto conn = cfg.connectivity.front();

  std::vector<std::vector<IterationRecord>> groups(cfg.radius_sweep.size());
  ExperimentResult result;
  for (std::size_t it = 0; it < cfg.iterations; ++it) {
    const auto scenario = iteration_scenario(base, cfg, it);
    for (std::size_t k = 0; k < cfg.radius_sweep.size(); ++k) {
      const double fraction = cfg.radius_sweep[k];
      std::vector<Task> tasks(scenario.tasks().begin(), scenario.tasks().end());
      for (auto& t : tasks) t.radius = fraction * kMapDiagonal;

      const auto start = Clock::now();
      auto run = run_cd_ilp(scenario, tasks, pipeline_options(cfg, it, conn));
      const auto ms = elapsed_ms(start);
      auto r = record_from(run.plan);
      r.runtime_ms = ms;
      r.algorithm = Algorithm::CdIlp;
      r.connectivity = conn;
      r.radius_fraction = fraction;
      r.iteration = it;
      if (!result.first_run) result.first_run = std::move(run);
      groups[k].push_back(r);
      result.records.push_back(r);
    }
  }
  for (const auto& records : groups) result.rows.push_back(summarize(records));
  return result;
}

std::string metrics_csv(const std::vector<MetricsRow>& rows, bool include_runtime) {
  std::vector<std::string> header{"algorithm",       "connectivity",   "radius_fraction",
                                  "iterations",      "solved_iterations", "infeasible_tasks",
                                  "mean_skill_term", "mean_cost_term", "mean_trust_term",
                                  "mean_objective",  "objective_stderr"};
  if (include_runtime) header.push_back("mean_runtime_ms");
  io::CsvWriter out(header);
  for (const auto& r : rows) {
    out.cell(to_string(r.algorithm)).cell(to_string(r.connectivity)).cell(r.radius_fraction);
    out.cell(static_cast<std::uint64_t>(r.iterations));
    out.cell(static_cast<std::uint64_t>(r.solved_iterations));
    out.cell(static_cast<std::uint64_t>(r.infeasible_tasks));
    out.cell(r.mean_skill_term).cell(r.mean_cost_term).cell(r.mean_trust_term);
    out.cell(r.mean_objective).cell(r.objective_stderr);
    if (include_runtime) out.cell(r.mean_runtime_ms);
    out.end_row();
  }
  return out.str();
}

}  // namespace recruit
