#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "recruit/spatial.hpp"

using namespace recruit;
using oracle::ScenarioBuilder;

namespace {

// Requester at the origin and five devices on the x axis at 0.1 .. 0.5.
Scenario line_of_devices() {
  ScenarioBuilder b(1);
  auto r = b.device(0, 0.0, 0.0);
  for (int i = 1; i <= 5; ++i) b.device(0, 0.1 * i, 0.0);
  b.task(r, {1}, 0.35);
  return b.build();
}

Task probe(const Scenario& s, double radius) {
  auto t = s.tasks()[0];
  t.radius = radius;
  return t;
}

}  // namespace

TEST(RadiusFilter, KeepsDevicesStrictlyInside) {
  const auto s = line_of_devices();
  const auto pool = filter_by_radius(s, s.tasks()[0]);
  EXPECT_EQ(pool.members, (std::vector<DeviceId>{DeviceId(1), DeviceId(2), DeviceId(3)}));
  EXPECT_EQ(pool.task, TaskId(0));
}

TEST(RadiusFilter, BoundaryIsExcluded) {
  ScenarioBuilder b(1);
  auto r = b.device(0, 0.0, 0.0);
  b.device(0, 0.5, 0.0);
  b.task(r, {1}, 0.5);
  const auto s = b.build();
  EXPECT_TRUE(filter_by_radius(s, s.tasks()[0]).members.empty());
}

TEST(RadiusFilter, DiagonalRadiusTakesEveryoneButTheRequester) {
  const auto s = oracle::ScenarioBuilder(1).build();  // trivially empty
  (void)s;
  const auto line = line_of_devices();
  const auto pool = filter_by_radius(line, probe(line, 1.5));
  EXPECT_EQ(pool.members.size(), line.devices().size() - 1);
  EXPECT_FALSE(pool.contains(DeviceId(0)));
}

TEST(RadiusFilter, ZeroRadiusProbeIsEmpty) {
  const auto s = line_of_devices();
  EXPECT_TRUE(filter_by_radius(s, probe(s, 0.0)).members.empty());
}

TEST(RadiusFilter, MonotoneInRadiusAndMatchesScan) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ScenarioBuilder b(1);
  for (int i = 0; i < 200; ++i) b.device(0, u(rng), u(rng));
  b.task(DeviceId(17), {1}, 0.1);
  const auto s = b.build();
  std::vector<DeviceId> prev;
  for (double r = 0.0; r <= 1.5; r += 0.05) {
    const auto pool = filter_by_radius(s, probe(s, r));
    EXPECT_TRUE(std::includes(pool.members.begin(), pool.members.end(), prev.begin(), prev.end()));
    std::size_t expect = 0;
    for (const auto& d : s.devices()) {
      if (d.id != DeviceId(17) && euclidean_distance(d.location, s.device(DeviceId(17)).location) < r) ++expect;
    }
    EXPECT_EQ(pool.members.size(), expect);
    EXPECT_TRUE(std::is_sorted(pool.members.begin(), pool.members.end()));
    prev = pool.members;
  }
}
