#include "recruit/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <set>
#include <unordered_map>

namespace recruit {

namespace {

constexpr std::int64_t kSecondsPerDay = 86400;

template <class Fn>
void require(bool ok, Fn&& message) {
  if (!ok) throw ConfigError(message());
}

std::size_t private_count(const ScenarioConfig& cfg) {
  return static_cast<std::size_t>(
      std::llround(static_cast<double>(cfg.n_devices) * cfg.private_fraction));
}

Weights weights_from(const io::KeyValues& kv, const std::string& src, Weights w) {
  auto get = [&](const char* key, double& out) {
    if (auto it = kv.find(key); it != kv.end()) out = io::parse_double(it->second, src, 0);
  };
  get("eta1", w.skill);
  get("eta2", w.cost);
  get("eta3", w.trust);
  return w;
}

std::vector<double> draw_uniform(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> out(n);
  for (auto& v : out) v = dist(rng);
  return out;
}

void draw_device_attributes(std::mt19937_64& rng, const ScenarioConfig& cfg, Device& d) {
  d.skill_level = draw_uniform(rng, cfg.skill_count, 0.0, 1.0);
  d.skill_cost = draw_uniform(rng, cfg.skill_count, cfg.cost_min, cfg.cost_max);
}

std::vector<Task> draw_tasks(std::mt19937_64& rng, const ScenarioConfig& cfg,
                             std::span<const Device> devices) {
  std::vector<Task> tasks;
  tasks.reserve(cfg.task_count);
  std::uniform_int_distribution<std::size_t> pick(0, devices.size() - 1);
  std::bernoulli_distribution need(cfg.skill_required_probability);
  for (std::size_t t = 0; t < cfg.task_count; ++t) {
    Task task;
    task.id = TaskId(static_cast<std::uint32_t>(t));
    const auto& requester = devices[pick(rng)];
    task.requester = requester.id;
    task.location = requester.location;
    task.radius = cfg.task_radius;
    task.required.assign(cfg.skill_count, 0);
    while (std::none_of(task.required.begin(), task.required.end(), [](auto q) { return q; })) {
      for (auto& q : task.required) q = need(rng) ? 1 : 0;
    }
    tasks.push_back(std::move(task));
  }
  return tasks;
}

/// Poisson meetings for every device pair closer than `proximity`.
std::vector<ContactEvent> draw_contacts(std::mt19937_64& rng, const ContactParams& cp,
                                        std::span<const Device> devices) {
  std::vector<ContactEvent> log;
  if (cp.rate_per_day <= 0.0 || cp.horizon_days <= 0.0 || cp.proximity <= 0.0) return log;

  // Uniform grid with cell size >= proximity; neighbours are in the 3x3 block.
  const auto cells = std::max<std::size_t>(1, static_cast<std::size_t>(1.0 / cp.proximity));
  auto cell_of = [&](double c) {
    auto i = static_cast<std::int64_t>(std::floor(c * static_cast<double>(cells)));
    return std::clamp<std::int64_t>(i, 0, static_cast<std::int64_t>(cells) - 1);
  };
  std::vector<std::vector<std::size_t>> grid(cells * cells);
  for (std::size_t i = 0; i < devices.size(); ++i) {
    const auto& p = devices[i].location;
    grid[cell_of(p.y) * cells + cell_of(p.x)].push_back(i);
  }

  const double horizon = cp.horizon_days * kSecondsPerDay;
  std::exponential_distribution<double> gap(cp.rate_per_day / kSecondsPerDay);
  std::exponential_distribution<double> length(1.0 / cp.mean_duration_s);

  for (std::size_t i = 0; i < devices.size(); ++i) {
    const auto& p = devices[i].location;
    const auto cx = cell_of(p.x);
    const auto cy = cell_of(p.y);
    std::vector<std::size_t> near;
    for (auto dy = cy - 1; dy <= cy + 1; ++dy) {
      for (auto dx = cx - 1; dx <= cx + 1; ++dx) {
        if (dx < 0 || dy < 0 || dx >= static_cast<std::int64_t>(cells) ||
            dy >= static_cast<std::int64_t>(cells)) {
          continue;
        }
        for (auto j : grid[dy * cells + dx]) {
          if (j > i && euclidean_distance(p, devices[j].location) < cp.proximity) {
            near.push_back(j);
          }
        }
      }
    }
    std::sort(near.begin(), near.end());
    for (auto j : near) {
      double t = gap(rng);
      while (t < horizon) {
        const auto start = static_cast<std::int64_t>(t);
        const auto dur = std::max<std::int64_t>(1, std::llround(length(rng)));
        log.push_back({devices[i].id, devices[j].id, start, start + dur});
        t += gap(rng);
      }
    }
  }
  return log;
}

}  // namespace

// ---------------------------------------------------------------------------

void ScenarioConfig::validate() const {
  require(n_devices >= 1, [] { return "n_devices must be >= 1"; });
  require(private_fraction >= 0.0 && private_fraction <= 1.0,
          [] { return "private_fraction must lie in [0,1]"; });
  require(n_owners >= 1 || private_count(*this) == 0,
          [] { return "n_owners must be >= 1 when there are private devices"; });
  require(skill_count >= 1, [] { return "skill count must be >= 1"; });
  require(ws_k % 2 == 0, [] { return "ws_k must be even"; });
  require(ws_k < n_owners || (ws_k == 0 && n_owners == 0), [] { return "ws_k must be < n_owners"; });
  require(ws_p >= 0.0 && ws_p <= 1.0, [] { return "ws_p must lie in [0,1]"; });
  require(task_radius > 0.0, [] { return "task_radius must be > 0"; });
  require(skill_required_probability > 0.0 && skill_required_probability <= 1.0,
          [] { return "skill_required_probability must lie in (0,1]"; });
  require(cost_min >= 0.0 && cost_min <= cost_max, [] { return "need 0 <= cost_min <= cost_max"; });
  require(contacts.rate_per_day >= 0.0 && contacts.mean_duration_s > 0.0 &&
              contacts.horizon_days >= 0.0 && contacts.proximity >= 0.0,
          [] { return "contact parameters must be non-negative (duration > 0)"; });
  require(weights.skill >= 0.0 && weights.cost >= 0.0 && weights.trust >= 0.0 &&
              std::abs(weights.skill + weights.cost + weights.trust - 1.0) <= kWeightSumTolerance,
          [] { return "eta weights must be non-negative and sum to 1"; });
  require(distance_price >= 0.0, [] { return "distance_price must be >= 0"; });
  require(trust_threshold >= 0.0 && trust_threshold <= 1.0,
          [] { return "trust_threshold must lie in [0,1]"; });
}

ScenarioParams ScenarioConfig::params() const {
  return ScenarioParams{skill_count, weights, distance_price, trust_threshold};
}

ScenarioConfig parse_scenario_config(const io::KeyValues& kv, ScenarioConfig cfg) {
  const std::string src = "scenario config";
  auto count = [&](const std::string& v) {
    const auto n = io::parse_int(v, src, 0);
    if (n < 0) throw ConfigError("negative count in scenario config: " + v);
    return static_cast<std::size_t>(n);
  };
  auto number = [&](const std::string& v) { return io::parse_double(v, src, 0); };

  for (const auto& [key, value] : kv) {
    if (key == "devices") cfg.n_devices = count(value);
    else if (key == "private_fraction") cfg.private_fraction = number(value);
    else if (key == "owners") cfg.n_owners = count(value);
    else if (key == "skills") cfg.skill_count = count(value);
    else if (key == "tasks") cfg.task_count = count(value);
    else if (key == "ws_k") cfg.ws_k = count(value);
    else if (key == "ws_p") cfg.ws_p = number(value);
    else if (key == "ws_variant") {
      if (value == "rewire") cfg.ws_variant = SmallWorldVariant::Rewire;
      else if (value == "add") cfg.ws_variant = SmallWorldVariant::AddShortcuts;
      else throw ConfigError("ws_variant must be 'rewire' or 'add'");
    }
    else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(count(value));
    else if (key == "contact_rate_per_day") cfg.contacts.rate_per_day = number(value);
    else if (key == "contact_mean_duration_s") cfg.contacts.mean_duration_s = number(value);
    else if (key == "contact_horizon_days") cfg.contacts.horizon_days = number(value);
    else if (key == "contact_proximity") cfg.contacts.proximity = number(value);
    else if (key == "task_radius") cfg.task_radius = number(value);
    else if (key == "skill_required_probability") cfg.skill_required_probability = number(value);
    else if (key == "cost_min") cfg.cost_min = number(value);
    else if (key == "cost_max") cfg.cost_max = number(value);
    else if (key == "eta1" || key == "eta2" || key == "eta3") continue;
    else if (key == "distance_price") cfg.distance_price = number(value);
    else if (key == "trust_threshold") cfg.trust_threshold = number(value);
    else throw ConfigError("unknown scenario config key '" + key + "'");
  }
  cfg.weights = weights_from(kv, src, cfg.weights);
  cfg.validate();
  return cfg;
}

ScenarioConfig read_scenario_config(const std::filesystem::path& path, ScenarioConfig base) {
  return parse_scenario_config(io::read_key_values(path), base);
}

// ---------------------------------------------------------------------------

OwnerGraph watts_strogatz(std::size_t n, std::size_t k, double p, std::uint64_t seed,
                          SmallWorldVariant variant) {
  if (k % 2 != 0) throw ConfigError("watts_strogatz: k must be even");
  if (n > 0 && k >= n) throw ConfigError("watts_strogatz: k must be < n");
  if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("watts_strogatz: p must lie in [0,1]");

  std::vector<std::set<std::uint32_t>> adj(n);
  auto link = [&](std::size_t u, std::size_t v) {
    adj[u].insert(static_cast<std::uint32_t>(v));
    adj[v].insert(static_cast<std::uint32_t>(u));
  };
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t j = 1; j <= k / 2; ++j) link(u, (u + j) % n);
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> node(0, n == 0 ? 0 : n - 1);

  // Same visiting order as the reference construction: offset-major, then node.
  for (std::size_t j = 1; j <= k / 2; ++j) {
    for (std::size_t u = 0; u < n; ++u) {
      if (coin(rng) >= p) continue;
      if (adj[u].size() >= n - 1) continue;  // u already touches every node
      std::size_t w = node(rng);
      while (w == u || adj[u].contains(static_cast<std::uint32_t>(w))) w = node(rng);
      if (variant == SmallWorldVariant::Rewire) {
        const auto v = (u + j) % n;
        adj[u].erase(static_cast<std::uint32_t>(v));
        adj[v].erase(static_cast<std::uint32_t>(u));
      }
      link(u, w);
    }
  }

  std::vector<OwnerEdge> edges;
  for (std::size_t u = 0; u < n; ++u) {
    for (auto v : adj[u]) {
      if (u < v) edges.push_back({OwnerId(static_cast<std::uint32_t>(u)), OwnerId(v), 1.0});
    }
  }
  return OwnerGraph(n, std::move(edges));
}

Scenario generate_scenario(const ScenarioConfig& cfg) {
  cfg.validate();
  std::mt19937_64 rng(cfg.seed);

  const auto n_private = private_count(cfg);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::uint32_t> owner(
      0, static_cast<std::uint32_t>(cfg.n_owners == 0 ? 0 : cfg.n_owners - 1));

  std::vector<Device> devices(cfg.n_devices);
  for (std::size_t i = 0; i < cfg.n_devices; ++i) {
    auto& d = devices[i];
    d.id = DeviceId(static_cast<std::uint32_t>(i));
    d.location = {unit(rng), unit(rng)};
    d.is_public = i >= n_private;
    d.owner = d.is_public ? cfg.public_owner() : OwnerId(owner(rng));
    draw_device_attributes(rng, cfg, d);
  }

  auto graph = std::make_shared<const OwnerGraph>(
      watts_strogatz(cfg.n_owners, cfg.ws_k, cfg.ws_p, rng(), cfg.ws_variant));
  auto contacts = std::make_shared<const std::vector<ContactEvent>>(
      draw_contacts(rng, cfg.contacts, devices));
  auto tasks = draw_tasks(rng, cfg, devices);

  return Scenario(std::move(devices), std::move(tasks), std::move(graph), std::move(contacts),
                  cfg.params());
}

Scenario resample_entities(const Scenario& base, const ScenarioConfig& cfg, std::uint64_t seed) {
  if (cfg.skill_count != base.skill_count()) {
    throw ConfigError("resample_entities: skill count differs from scenario");
  }
  std::mt19937_64 rng(seed);
  std::vector<Device> devices(base.devices().begin(), base.devices().end());
  for (auto& d : devices) draw_device_attributes(rng, cfg, d);
  auto tasks = draw_tasks(rng, cfg, devices);
  return base.with_entities(std::move(devices), std::move(tasks));
}

// ---------------------------------------------------------------------------

namespace {

std::vector<std::string> indexed(const std::string& prefix, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

std::vector<std::string> device_header(std::size_t S) {
  std::vector<std::string> h{"id", "owner", "x", "y", "is_public"};
  for (auto& c : indexed("skill_", S)) h.push_back(c);
  for (auto& c : indexed("cost_", S)) h.push_back(c);
  return h;
}

std::vector<std::string> task_header(std::size_t S) {
  std::vector<std::string> h{"id", "requester", "x", "y", "radius"};
  for (auto& c : indexed("q_", S)) h.push_back(c);
  return h;
}

const std::vector<std::string> kOwnerHeader{"owner_a", "owner_b", "weight"};
const std::vector<std::string> kContactHeader{"device_a", "device_b", "start_s", "end_s"};

// Per-axis min-max scaling into [0,1], skipped when everything is already inside.
void normalize_locations(std::vector<Device>& devices, std::vector<Task>& tasks) {
  double lo_x = std::numeric_limits<double>::infinity(), hi_x = -lo_x;
  double lo_y = lo_x, hi_y = -lo_x;
  auto visit = [&](const Location& p) {
    lo_x = std::min(lo_x, p.x);
    hi_x = std::max(hi_x, p.x);
    lo_y = std::min(lo_y, p.y);
    hi_y = std::max(hi_y, p.y);
  };
  for (const auto& d : devices) visit(d.location);
  for (const auto& t : tasks) visit(t.location);
  if (!std::isfinite(lo_x) || !std::isfinite(hi_x) || !std::isfinite(lo_y) || !std::isfinite(hi_y)) {
    return;  // empty, or non-finite values that validation will report
  }
  if (lo_x >= 0.0 && hi_x <= 1.0 && lo_y >= 0.0 && hi_y <= 1.0) return;
  auto scale = [](double v, double lo, double hi) { return hi > lo ? (v - lo) / (hi - lo) : 0.0; };
  auto apply = [&](Location& p) {
    p.x = scale(p.x, lo_x, hi_x);
    p.y = scale(p.y, lo_y, hi_y);
  };
  for (auto& d : devices) apply(d.location);
  for (auto& t : tasks) apply(t.location);
}

}  // namespace

Scenario load_scenario(const std::filesystem::path& dir) {
  const auto kv = io::read_key_values(dir / "scenario.toml");
  ScenarioParams params;
  std::optional<std::size_t> owner_count;
  for (const auto& [key, value] : kv) {
    if (key == "skills") {
      const auto s = io::parse_int(value, "scenario.toml", 0);
      if (s < 1) throw ValidationError("scenario.toml: skills must be >= 1");
      params.skill_count = static_cast<std::size_t>(s);
    } else if (key == "eta1" || key == "eta2" || key == "eta3") {
      continue;
    } else if (key == "distance_price") {
      params.distance_price = io::parse_double(value, "scenario.toml", 0);
    } else if (key == "trust_threshold") {
      params.trust_threshold = io::parse_double(value, "scenario.toml", 0);
    } else if (key == "owners") {
      const auto n = io::parse_int(value, "scenario.toml", 0);
      if (n < 0) throw ValidationError("scenario.toml: owners must be >= 0");
      owner_count = static_cast<std::size_t>(n);
    } else {
      throw ParseError("scenario.toml", 0, "unknown key '" + key + "'");
    }
  }
  params.weights = weights_from(kv, "scenario.toml", params.weights);
  const auto S = params.skill_count;

  const auto dev = io::CsvTable::read(dir / "devices.csv");
  dev.expect_header(device_header(S));
  std::vector<Device> devices(dev.row_count());
  std::uint32_t max_owner = 0;
  bool any_private = false;
  for (std::size_t r = 0; r < dev.row_count(); ++r) {
    auto& d = devices[r];
    d.id = DeviceId(dev.id(r, 0));
    d.owner = OwnerId(dev.id(r, 1));
    d.location = {dev.number(r, 2), dev.number(r, 3)};
    d.is_public = dev.flag(r, 4);
    d.skill_level.resize(S);
    d.skill_cost.resize(S);
    for (std::size_t s = 0; s < S; ++s) {
      d.skill_level[s] = dev.number(r, 5 + s);
      d.skill_cost[s] = dev.number(r, 5 + S + s);
    }
    if (!d.is_public) {
      any_private = true;
      max_owner = std::max(max_owner, d.owner.value);
    }
  }

  const auto tsk = io::CsvTable::read(dir / "tasks.csv");
  tsk.expect_header(task_header(S));
  std::vector<Task> tasks(tsk.row_count());
  for (std::size_t r = 0; r < tsk.row_count(); ++r) {
    auto& t = tasks[r];
    t.id = TaskId(tsk.id(r, 0));
    t.requester = DeviceId(tsk.id(r, 1));
    t.location = {tsk.number(r, 2), tsk.number(r, 3)};
    t.radius = tsk.number(r, 4);
    t.required.resize(S);
    for (std::size_t s = 0; s < S; ++s) {
      const auto q = tsk.integer(r, 5 + s);
      if (q != 0 && q != 1) throw ParseError("tasks.csv", tsk.line_of(r), "q_ must be 0 or 1");
      t.required[s] = static_cast<std::uint8_t>(q);
    }
  }

  const auto own = io::CsvTable::read(dir / "owners.csv");
  own.expect_header(kOwnerHeader);
  std::vector<OwnerEdge> edges(own.row_count());
  for (std::size_t r = 0; r < own.row_count(); ++r) {
    edges[r] = {OwnerId(own.id(r, 0)), OwnerId(own.id(r, 1)), own.number(r, 2)};
    max_owner = std::max({max_owner, edges[r].a.value, edges[r].b.value});
    any_private = true;
  }
  const auto n_owners = owner_count.value_or(any_private ? max_owner + 1u : 0u);

  const auto con = io::CsvTable::read(dir / "contacts.csv");
  con.expect_header(kContactHeader);
  std::vector<ContactEvent> contacts(con.row_count());
  for (std::size_t r = 0; r < con.row_count(); ++r) {
    contacts[r] = {DeviceId(con.id(r, 0)), DeviceId(con.id(r, 1)), con.integer(r, 2),
                   con.integer(r, 3)};
  }

  normalize_locations(devices, tasks);
  return Scenario(std::move(devices), std::move(tasks),
                  std::make_shared<const OwnerGraph>(n_owners, std::move(edges)),
                  std::make_shared<const std::vector<ContactEvent>>(std::move(contacts)), params);
}

void save_scenario(const Scenario& scenario, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const auto S = scenario.skill_count();
  const auto& p = scenario.params();

  std::string toml;
  toml += "skills = " + std::to_string(S) + "\n";
  toml += "eta1 = " + io::format_double(p.weights.skill) + "\n";
  toml += "eta2 = " + io::format_double(p.weights.cost) + "\n";
  toml += "eta3 = " + io::format_double(p.weights.trust) + "\n";
  toml += "distance_price = " + io::format_double(p.distance_price) + "\n";
  toml += "trust_threshold = " + io::format_double(p.trust_threshold) + "\n";
  toml += "owners = " + std::to_string(scenario.owner_social().owner_count()) + "\n";
  io::write_text(dir / "scenario.toml", toml);

  io::CsvWriter dev(device_header(S));
  for (const auto& d : scenario.devices()) {
    dev.cell(d.id.value).cell(d.owner.value).cell(d.location.x).cell(d.location.y);
    dev.cell(d.is_public ? 1 : 0);
    for (auto v : d.skill_level) dev.cell(v);
    for (auto v : d.skill_cost) dev.cell(v);
    dev.end_row();
  }
  dev.save(dir / "devices.csv");

  io::CsvWriter tsk(task_header(S));
  for (const auto& t : scenario.tasks()) {
    tsk.cell(t.id.value).cell(t.requester.value).cell(t.location.x).cell(t.location.y);
    tsk.cell(t.radius);
    for (auto q : t.required) tsk.cell(static_cast<int>(q));
    tsk.end_row();
  }
  tsk.save(dir / "tasks.csv");

  io::CsvWriter own(kOwnerHeader);
  for (const auto& e : scenario.owner_social().edges()) {
    own.cell(e.a.value).cell(e.b.value).cell(e.weight).end_row();
  }
  own.save(dir / "owners.csv");

  io::CsvWriter con(kContactHeader);
  for (const auto& c : scenario.contact_log()) {
    con.cell(c.a.value).cell(c.b.value).cell(c.start).cell(c.end).end_row();
  }
  con.save(dir / "contacts.csv");
}

}  // namespace recruit
