// recruit: scenario generation and Monte Carlo experiments from the command line.
//
//   recruit gen   --config gen.toml --seed 7 --out scenario/
//   recruit run   --scenario scenario/ --iterations 200 --connectivity small,medium,full --out out/
//   recruit sweep --radius-sweep 0.1,0.3,0.5,0.7,1.0 --iterations 200 --out out/

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "recruit/harness.hpp"
#include "recruit/io.hpp"

namespace fs = std::filesystem;
using namespace recruit;

namespace {

struct Flags {
  std::optional<fs::path> scenario;
  std::optional<fs::path> config;
  std::optional<std::size_t> iterations;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> radius_sweep;
  std::optional<std::string> connectivity;
  std::optional<std::string> algos;
  fs::path out = ".";
  bool timing = false;
};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) parts.push_back(item);
  }
  if (parts.empty()) throw ConfigError("empty list '" + s + "'");
  return parts;
}

std::vector<double> parse_fractions(const std::string& s) {
  std::vector<double> out;
  for (const auto& p : split_list(s)) out.push_back(io::parse_double(p, "--radius-sweep", 0));
  return out;
}

std::vector<Connectivity> parse_scales(const std::string& s) {
  std::vector<Connectivity> out;
  for (const auto& p : split_list(s)) out.push_back(parse_connectivity(p));
  return out;
}

std::vector<Algorithm> parse_algos(const std::string& s) {
  std::vector<Algorithm> out;
  for (const auto& p : split_list(s)) out.push_back(parse_algorithm(p));
  return out;
}

// Experiment keys a --config file may carry next to the generator keys.
const std::set<std::string> kExperimentKeys{"iterations",      "connectivity",   "algos",
                                            "radius_sweep",    "reject_fraction", "max_candidates",
                                            "sor_min_meetings", "sor_min_duration_s",
                                            "sor_min_gap_s", "normalizers"};

ExperimentConfig build_config(const Flags& f) {
  ExperimentConfig cfg;
  if (f.config) {
    auto kv = io::read_key_values(*f.config);
    const std::string src = f.config->string();
    for (auto it = kv.begin(); it != kv.end();) {
      if (!kExperimentKeys.contains(it->first)) {
        ++it;
        continue;
      }
      const auto& [key, value] = *it;
      if (key == "iterations") {
        cfg.iterations = static_cast<std::size_t>(io::parse_int(value, src, 0));
      } else if (key == "connectivity") {
        cfg.connectivity = parse_scales(value);
      } else if (key == "algos") {
        cfg.algorithms = parse_algos(value);
      } else if (key == "radius_sweep") {
        cfg.radius_sweep = parse_fractions(value);
      } else if (key == "reject_fraction") {
        cfg.stop_rule.reject_fraction = io::parse_double(value, src, 0);
      } else if (key == "max_candidates") {
        cfg.stop_rule.max_candidates = static_cast<std::size_t>(io::parse_int(value, src, 0));
      } else if (key == "sor_min_meetings") {
        cfg.sor.min_meetings = static_cast<std::size_t>(io::parse_int(value, src, 0));
      } else if (key == "sor_min_duration_s") {
        cfg.sor.min_duration_s = io::parse_int(value, src, 0);
      } else if (key == "sor_min_gap_s") {
        cfg.sor.min_gap_s = io::parse_int(value, src, 0);
      } else if (key == "normalizers") {
        if (value == "reference") {
          cfg.normalizers = NormalizerScope::Reference;
        } else if (value == "worker-set") {
          cfg.normalizers = NormalizerScope::WorkerSet;
        } else {
          throw ConfigError("normalizers must be reference|worker-set, got '" + value + "'");
        }
      }
      it = kv.erase(it);
    }
    cfg.generator = parse_scenario_config(kv);
  }
  if (f.seed) cfg.generator.seed = *f.seed;
  cfg.seed = cfg.generator.seed;
  if (f.scenario) cfg.scenario_dir = *f.scenario;
  if (f.iterations) cfg.iterations = *f.iterations;
  if (f.radius_sweep) cfg.radius_sweep = parse_fractions(*f.radius_sweep);
  if (f.connectivity) cfg.connectivity = parse_scales(*f.connectivity);
  if (f.algos) cfg.algorithms = parse_algos(*f.algos);
  return cfg;
}

void write_run_files(const ExperimentResult& result, const Flags& f) {
  fs::create_directories(f.out);
  io::write_text(f.out / "metrics.csv", metrics_csv(result.rows, f.timing));
  if (!result.first_run) return;

  const auto& run = *result.first_run;
  for (const auto& outcome : run.plan.outcomes) {
    io::write_text(f.out / ("plan_" + std::to_string(outcome.task.value) + ".csv"), run.plan.to_csv(outcome.task));
  }
  for (auto kind : {RelationKind::Sfor, RelationKind::Sor}) {
    io::CsvWriter csv({"task_id", "node_id", "community_id"});
    for (const auto& trace : run.traces) {
      const auto& part = kind == RelationKind::Sfor ? trace.sfor_communities : trace.sor_communities;
      for (std::size_t i = 0; i < part.nodes.size(); ++i) {
        csv.cell(trace.task.id.value).cell(part.nodes[i].value).cell(part.community[i]).end_row();
      }
    }
    csv.save(f.out / ("communities_" + to_string(kind) + ".csv"));
  }
}

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "key = value generator/experiment settings");
  cmd->add_option("--seed", f.seed, "master seed");
  cmd->add_option("--out", f.out, "output directory")->capture_default_str();
}

void add_experiment(CLI::App* cmd, Flags& f) {
  add_common(cmd, f);
  cmd->add_option("--scenario", f.scenario, "scenario directory (default: generate)");
  cmd->add_option("--iterations", f.iterations, "Monte Carlo iterations");
  cmd->add_option("--connectivity", f.connectivity, "small|medium|full, comma separated");
  cmd->add_option("--algos", f.algos, "cd-ilp,stochastic");
  cmd->add_flag("--timing", f.timing, "add mean_runtime_ms to metrics.csv (not reproducible)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trust-aware worker recruitment for spatial crowdsourcing"};
  app.require_subcommand(1);
  Flags f;

  auto* gen = app.add_subcommand("gen", "generate a synthetic scenario directory");
  add_common(gen, f);

  auto* run = app.add_subcommand("run", "compare cd-ilp against the stochastic baseline");
  add_experiment(run, f);

  auto* sweep = app.add_subcommand("sweep", "cd-ilp objective and runtime over task radii");
  add_experiment(sweep, f);
  sweep->add_option("--radius-sweep", f.radius_sweep, "fractions of the map diagonal, e.g. 0.1,0.5,1")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    auto cfg = build_config(f);
    if (gen->parsed()) {
      save_scenario(generate_scenario(cfg.generator), f.out);
    } else if (run->parsed()) {
      write_run_files(run_comparison(cfg), f);
    } else {
      write_run_files(run_radius_sweep(cfg), f);
    }
  } catch (const Error& e) {
    std::cerr << "recruit: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "recruit: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
