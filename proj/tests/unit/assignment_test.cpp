#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <limits>
#include <random>

#include "recruit/assignment.hpp"

using namespace recruit;

namespace {

// Every injective slot -> worker mapping, best total then smallest sequence.
std::optional<std::vector<std::uint32_t>> enumerate(const AssignmentProblem& p) {
  std::vector<std::vector<std::uint32_t>> all;
  std::vector<std::uint32_t> cur;
  std::vector<bool> used(p.worker_count, false);
  std::function<void(std::size_t)> rec = [&](std::size_t slot) {
    if (slot == p.slot_count()) {
      all.push_back(cur);
      return;
    }
    for (const auto& o : p.options[slot]) {
      if (used[o.worker]) continue;
      used[o.worker] = true;
      cur.push_back(o.worker);
      rec(slot + 1);
      cur.pop_back();
      used[o.worker] = false;
    }
  };
  rec(0);
  if (all.empty()) return std::nullopt;
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& a : all) best = std::max(best, assignment_value(p, a));
  std::optional<std::vector<std::uint32_t>> pick;
  for (const auto& a : all) {
    if (assignment_value(p, a) >= best - kTieTolerance && (!pick || a < *pick)) pick = a;
  }
  return pick;
}

AssignmentProblem random_problem(std::mt19937_64& rng, bool coarse) {
  AssignmentProblem p;
  p.worker_count = 1 + rng() % 7;
  const std::size_t slots = 1 + rng() % 4;
  std::uniform_real_distribution<double> u(-1.0, 2.0);
  for (std::size_t s = 0; s < slots; ++s) {
    std::vector<SlotOption> opts;
    for (std::uint32_t w = 0; w < p.worker_count; ++w) {
      if (rng() % 10 < 3) continue;
      const double v = coarse ? static_cast<double>(rng() % 4) * 0.25 : u(rng);
      opts.push_back({w, v});
    }
    p.options.push_back(std::move(opts));
  }
  return p;
}

}  // namespace

TEST(Assignment, SquareExample) {
  AssignmentProblem p{3, {{{0, 1.0}, {1, 5.0}, {2, 2.0}}, {{0, 4.0}, {1, 6.0}, {2, 1.0}}, {{0, 3.0}, {1, 2.0}, {2, 3.0}}}};
  const auto a = solve_assignment(p);
  ASSERT_TRUE(a);
  EXPECT_EQ(*a, (std::vector<std::uint32_t>{1, 0, 2}));
  EXPECT_EQ(assignment_value(p, *a), 12.0);
}

TEST(Assignment, TiesGoToSmallestSequence) {
  AssignmentProblem p{3, {{{2, 1.0}, {0, 1.0}, {1, 1.0}}, {{1, 1.0}, {2, 1.0}}}};
  EXPECT_EQ(*solve_assignment(p), (std::vector<std::uint32_t>{0, 1}));
}

TEST(Assignment, UnfillableSlotsGiveNullopt) {
  AssignmentProblem p{2, {{{0, 1.0}}, {{0, 2.0}}}};
  EXPECT_FALSE(solve_assignment(p));
  AssignmentProblem none{2, {{}}};
  EXPECT_FALSE(solve_assignment(none));
}

TEST(Assignment, NoSlotsIsTriviallySolved) {
  AssignmentProblem p{3, {}};
  const auto a = solve_assignment(p);
  ASSERT_TRUE(a);
  EXPECT_TRUE(a->empty());
}

TEST(Assignment, NegativeValuesStillFillEverySlot) {
  AssignmentProblem p{2, {{{0, -3.0}, {1, -1.0}}}};
  EXPECT_EQ(*solve_assignment(p), (std::vector<std::uint32_t>{1}));
}

TEST(Assignment, MatchesEnumerationIncludingTies) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 3000; ++trial) {
    const auto p = random_problem(rng, trial % 2 == 0);
    ASSERT_EQ(solve_assignment(p), enumerate(p)) << "trial " << trial;
  }
}

TEST(Admission, RejectsGroupsThatNoLongerFit) {
  // Group 0 takes worker 0; group 1 needs worker 0 too; group 2 fits on worker 1.
  AssignmentProblem p{2, {{{0, 1.0}}, {{0, 1.0}}, {{1, 1.0}}}};
  const std::vector<std::size_t> group{0, 1, 2};
  const auto a = admit_groups(p, group, 3);
  EXPECT_EQ(a.admitted, (std::vector<bool>{true, false, true}));
  EXPECT_EQ(a.shortfall, (std::vector<std::size_t>{0, 1, 0}));
}

TEST(Admission, ShortfallCountsUnfillableSlots) {
  AssignmentProblem p{1, {{{0, 1.0}}, {{0, 1.0}}, {{0, 1.0}}}};
  const std::vector<std::size_t> group{0, 0, 0};
  const auto a = admit_groups(p, group, 1);
  EXPECT_FALSE(a.admitted[0]);
  EXPECT_EQ(a.shortfall[0], 2u);
}

TEST(Admission, AdmittedGroupsAreJointlySolvable) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto p = random_problem(rng, true);
    std::vector<std::size_t> group(p.slot_count());
    std::size_t groups = 0;
    for (std::size_t s = 0; s < group.size(); ++s) {
      if (s > 0 && rng() % 2) groups++;
      group[s] = groups;
    }
    ++groups;
    const auto a = admit_groups(p, group, groups);
    AssignmentProblem kept{p.worker_count, {}};
    for (std::size_t s = 0; s < group.size(); ++s)
      if (a.admitted[group[s]]) kept.options.push_back(p.options[s]);
    ASSERT_TRUE(solve_assignment(kept).has_value());
    // Adding any rejected group back makes it unsolvable.
    for (std::size_t g = 0; g < groups; ++g) {
      if (a.admitted[g]) {
        EXPECT_EQ(a.shortfall[g], 0u);
        continue;
      }
      EXPECT_GT(a.shortfall[g], 0u);
      AssignmentProblem with{p.worker_count, {}};
      for (std::size_t s = 0; s < group.size(); ++s)
        if (a.admitted[group[s]] || group[s] == g) with.options.push_back(p.options[s]);
      EXPECT_FALSE(solve_assignment(with).has_value());
    }
  }
}
