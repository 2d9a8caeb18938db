#pragma once

// Scenario files (Santander-style schema) and the synthetic scenario generator.
//
// A scenario directory holds five files:
//
//   devices.csv   id,owner,x,y,is_public,skill_0..skill_{S-1},cost_0..cost_{S-1}
//   tasks.csv     id,requester,x,y,radius,q_0..q_{S-1}
//   owners.csv    owner_a,owner_b,weight
//   contacts.csv  device_a,device_b,start_s,end_s
//   scenario.toml skills, eta1, eta2, eta3, distance_price, trust_threshold[, owners]
//
// Headers are required and must match exactly. Coordinates already inside the
// unit square are kept; otherwise devices and tasks are min-max scaled per
// axis into [0,1]. Task radii are always in normalized units.

#include <cstdint>
#include <filesystem>
#include <random>

#include "recruit/domain.hpp"
#include "recruit/io.hpp"

namespace recruit {

enum class SmallWorldVariant {
  Rewire,        // Watts-Strogatz: each lattice edge rewired with probability p
  AddShortcuts,  // Newman-Watts: lattice kept, one shortcut added per edge with probability p
};

struct ContactParams {
  double rate_per_day = 1.0;        // Poisson meeting rate per nearby pair
  double mean_duration_s = 2400.0;  // exponential meeting length
  double horizon_days = 7.0;
  double proximity = 0.03;          // pairs closer than this may meet
};

struct ScenarioConfig {
  std::size_t n_devices = 2000;
  double private_fraction = 14600.0 / 16216.0;
  std::size_t n_owners = 400;
  std::size_t skill_count = 5;
  std::size_t task_count = 20;
  std::size_t ws_k = 4;
  double ws_p = 0.5;
  SmallWorldVariant ws_variant = SmallWorldVariant::Rewire;
  std::uint64_t seed = 1;
  ContactParams contacts;
  double task_radius = 0.2;
  double skill_required_probability = 0.5;
  double cost_min = 1.0;
  double cost_max = 10.0;
  Weights weights;
  double distance_price = 10.0;
  double trust_threshold = 0.0;

  /// Throws ConfigError.
  void validate() const;
  /// Owner id shared by every public device.
  OwnerId public_owner() const { return OwnerId(static_cast<std::uint32_t>(n_owners)); }
  ScenarioParams params() const;
};

/// Reads generator keys (see README) over the defaults; unknown keys throw ConfigError.
ScenarioConfig parse_scenario_config(const io::KeyValues& kv, ScenarioConfig base = {});
ScenarioConfig read_scenario_config(const std::filesystem::path& path, ScenarioConfig base = {});

OwnerGraph watts_strogatz(std::size_t n, std::size_t k, double p, std::uint64_t seed,
                          SmallWorldVariant variant = SmallWorldVariant::Rewire);

Scenario generate_scenario(const ScenarioConfig& cfg);

/// Re-draws skill levels, skill costs and tasks for one Monte Carlo iteration,
/// keeping device positions, ownership, owner graph and contacts.
Scenario resample_entities(const Scenario& base, const ScenarioConfig& cfg, std::uint64_t seed);

Scenario load_scenario(const std::filesystem::path& dir);
void save_scenario(const Scenario& scenario, const std::filesystem::path& dir);

}  // namespace recruit
