#pragma once

// Core value types shared by every stage of the recruitment pipeline.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace recruit {

// ---------------------------------------------------------------------------
// Errors

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input record. `line()` is 1-based; 0 when not line-oriented.
class ParseError : public Error {
 public:
  ParseError(const std::string& file, std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A value violates a domain invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Invalid generator / experiment configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Identifiers

template <class Tag>
struct Id {
  std::uint32_t value = 0;

  constexpr Id() = default;
  constexpr explicit Id(std::uint32_t v) : value(v) {}

  friend constexpr auto operator<=>(Id, Id) = default;
};

using DeviceId = Id<struct DeviceTag>;
using OwnerId = Id<struct OwnerTag>;
using TaskId = Id<struct TaskTag>;
using SkillId = Id<struct SkillTag>;

// ---------------------------------------------------------------------------
// Geometry

/// Planar point in normalized map units.
struct Location {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Location&, const Location&) = default;
};

double euclidean_distance(const Location& p, const Location& q) noexcept;

/// Diagonal of the normalized unit square.
inline constexpr double kMapDiagonal = 1.4142135623730951;

// ---------------------------------------------------------------------------
// Entities

struct Device {
  DeviceId id;
  OwnerId owner;
  Location location;
  bool is_public = false;
  std::vector<double> skill_level;  // S_{w,s} in [0,1]
  std::vector<double> skill_cost;   // R_{w,s} >= 0

  friend bool operator==(const Device&, const Device&) = default;
};

struct Task {
  TaskId id;
  DeviceId requester;
  Location location;
  std::vector<std::uint8_t> required;  // Q_t(s) in {0,1}
  double radius = 0.0;

  /// Skills with Q_t(s) = 1, ascending.
  std::vector<SkillId> required_skills() const;

  friend bool operator==(const Task&, const Task&) = default;
};

struct ContactEvent {
  DeviceId a;
  DeviceId b;
  std::int64_t start = 0;  // seconds since scenario epoch
  std::int64_t end = 0;

  friend bool operator==(const ContactEvent&, const ContactEvent&) = default;
};

/// Recruitment strategy weights (eta_1, eta_2, eta_3).
struct Weights {
  double skill = 1.0 / 3.0;
  double cost = 1.0 / 3.0;
  double trust = 1.0 / 3.0;

  friend bool operator==(const Weights&, const Weights&) = default;
};

inline constexpr double kWeightSumTolerance = 1e-9;

// ---------------------------------------------------------------------------
// Owner social network

struct OwnerEdge {
  OwnerId a;
  OwnerId b;
  double weight = 1.0;

  friend bool operator==(const OwnerEdge&, const OwnerEdge&) = default;
};

/// Hop limit used for owner-graph reach. `kUnboundedHops` means no limit.
using HopLimit = std::uint32_t;
inline constexpr HopLimit kUnboundedHops = std::numeric_limits<HopLimit>::max();

/// Undirected weighted graph over owners 0..owner_count-1. Edges are stored
/// once with a < b and sorted; self-loops and parallel edges are rejected.
class OwnerGraph {
 public:
  OwnerGraph() = default;
  OwnerGraph(std::size_t owner_count, std::vector<OwnerEdge> edges);

  std::size_t owner_count() const noexcept { return adjacency_.size(); }
  std::span<const OwnerEdge> edges() const noexcept { return edges_; }
  std::span<const std::uint32_t> neighbors(OwnerId o) const;
  bool has_edge(OwnerId a, OwnerId b) const;

  /// BFS hop distances from `source`, truncated at `limit` hops. Entry is -1
  /// for owners that are unreachable within the limit. Owners outside the
  /// graph yield a vector with every entry -1.
  std::vector<std::int32_t> hop_distances(OwnerId source, HopLimit limit) const;

  friend bool operator==(const OwnerGraph& l, const OwnerGraph& r) {
    return l.owner_count() == r.owner_count() && l.edges_ == r.edges_;
  }

 private:
  std::vector<std::int32_t> bfs(std::uint32_t source, HopLimit limit) const;

  std::vector<OwnerEdge> edges_;
  std::vector<std::vector<std::uint32_t>> adjacency_;
  // All-pairs hop table (row-major), kept for graphs up to kHopTableOwners.
  std::vector<std::int32_t> hops_;

  static constexpr std::size_t kHopTableOwners = 2048;
};

// ---------------------------------------------------------------------------
// Scenario

struct ScenarioParams {
  std::size_t skill_count = 5;
  Weights weights;
  double distance_price = 10.0;  // P, monetary units per map unit
  double trust_threshold = 0.0;  // workers with O_{t,w} below this are dropped

  friend bool operator==(const ScenarioParams&, const ScenarioParams&) = default;
};

/// Immutable, validated bundle of devices, tasks and relation inputs. Owner
/// graph and contact log are shared between copies, so re-sampling devices or
/// tasks for a Monte Carlo iteration does not duplicate them.
class Scenario {
 public:
  /// Throws ValidationError naming the first offending entity.
  Scenario(std::vector<Device> devices, std::vector<Task> tasks,
           std::shared_ptr<const OwnerGraph> owner_social,
           std::shared_ptr<const std::vector<ContactEvent>> contact_log,
           ScenarioParams params);

  /// Same relation data, new devices and tasks.
  Scenario with_entities(std::vector<Device> devices, std::vector<Task> tasks) const;

  std::span<const Device> devices() const noexcept { return devices_; }
  std::span<const Task> tasks() const noexcept { return tasks_; }
  const OwnerGraph& owner_social() const noexcept { return *owner_social_; }
  std::span<const ContactEvent> contact_log() const noexcept { return *contact_log_; }
  const ScenarioParams& params() const noexcept { return params_; }
  std::size_t skill_count() const noexcept { return params_.skill_count; }
  const Weights& weights() const noexcept { return params_.weights; }

  const Device& device(DeviceId id) const;
  const Task& task(TaskId id) const;
  /// Position of the device in `devices()`.
  std::size_t device_index(DeviceId id) const;
  bool contains(DeviceId id) const noexcept { return device_index_.contains(id.value); }

  friend bool operator==(const Scenario& l, const Scenario& r);

 private:
  void validate() const;

  std::vector<Device> devices_;
  std::vector<Task> tasks_;
  std::shared_ptr<const OwnerGraph> owner_social_;
  std::shared_ptr<const std::vector<ContactEvent>> contact_log_;
  ScenarioParams params_;
  std::unordered_map<std::uint32_t, std::size_t> device_index_;
  std::unordered_map<std::uint32_t, std::size_t> task_index_;
};

std::string to_string(DeviceId id);
std::string to_string(TaskId id);

}  // namespace recruit

template <class Tag>
struct std::hash<recruit::Id<Tag>> {
  std::size_t operator()(recruit::Id<Tag> id) const noexcept {
    return std::hash<std::uint32_t>{}(id.value);
  }
};
