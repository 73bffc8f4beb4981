#include <gtest/gtest.h>

#include <cmath>

#include "mrb/families.hpp"
#include "mrb/solvers.hpp"
#include "test_support.hpp"

using namespace mrb;
using namespace std::chrono_literals;

namespace {

std::uint32_t mask_of(const std::vector<int>& objs) {
  std::uint32_t m = 0;
  for (int o : objs) m |= 1U << o;
  return m;
}

// Objects of P that still wait on something outside P.
int blocked_count(const LabeledDepGraph& g, std::uint32_t p) {
  int c = 0;
  for (int o = 0; o < g.size(); ++o)
    if (p >> o & 1)
      for (int d : g.out(o))
        if (!(p >> d & 1)) {
          ++c;
          break;
        }
  return c;
}

// Best transient peak over orders of S that finish with `last`.
int best_prefix_ending_with(const LabeledDepGraph& g, const std::vector<int>& s, int last) {
  std::vector<int> rest;
  for (int o : s)
    if (o != last) rest.push_back(o);
  std::sort(rest.begin(), rest.end());
  int best = INT_MAX;
  do {
    std::vector<int> order = rest;
    order.push_back(last);
    std::uint32_t p = 0;
    int peak = 0;
    for (int o : order) {
      const int before = blocked_count(g, p);
      p |= 1U << o;
      const int after = blocked_count(g, p);
      const bool parked = [&] {
        for (int d : g.out(o))
          if (!(p >> d & 1)) return true;
        return false;
      }();
      peak = std::max({peak, after, before + (parked ? 1 : 0)});
    }
    best = std::min(best, peak);
  } while (std::next_permutation(rest.begin(), rest.end()));
  return best;
}

}  // namespace

TEST(Brute, Examples) {
  EXPECT_EQ(solve_brute(LabeledDepGraph(2, {{0, 1}, {1, 0}})).mrb, 1);
  EXPECT_EQ(solve_brute(gen_sticks(5).labeled).mrb, 4);
  EXPECT_EQ(solve_brute(LabeledDepGraph(4, {})).mrb, 0);
}

TEST(Brute, WitnessIsLexicographicallySmallestOptimum) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto g = mrb::testing::random_digraph(6, 0.3, seed);
    const auto r = solve_brute(g);
    std::vector<int> first;
    mrb::testing::for_each_permutation(6, [&](const std::vector<int>& p) {
      if (first.empty() && simulate_labeled(g, p).trace.max_rb == r.mrb) first = p;
    });
    EXPECT_EQ(r.ordering, first);
  }
}

TEST(Brute, RejectsLargeInputs) {
  EXPECT_THROW(solve_brute(LabeledDepGraph(11, {})), TooLarge);
  EXPECT_THROW(solve_brute(UnlabeledDepGraph(11, {})), TooLarge);
}

TEST(Dp, MatchesBrute) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const int n = 2 + static_cast<int>(seed % 7);
    const auto g = mrb::testing::random_digraph(n, 0.15 + 0.05 * (seed % 5), seed);
    const auto r = solve_dp(g);
    ASSERT_EQ(r.mrb, solve_brute(g).mrb) << "seed " << seed;
    ASSERT_EQ(simulate_labeled(g, r.ordering).trace.max_rb, r.mrb);
  }
}

TEST(Dp, AcyclicIsZero) {
  EXPECT_EQ(solve_dp(LabeledDepGraph(5, {{0, 1}, {1, 2}, {0, 3}, {3, 4}, {2, 4}})).mrb, 0);
}

TEST(Dp, LastObjectRowsOnSevenObjectExample) {
  const auto g = mrb::testing::seven_object_example();
  const DpTable t(g);
  const std::vector<int> s = mrb::testing::zero_based({2, 5, 6});
  const auto rows = t.candidates(mask_of(s));
  ASSERT_EQ(rows.size(), 3u);
  int lo = INT_MAX, hi = 0;
  for (const auto& row : rows) {
    EXPECT_EQ(row.value, best_prefix_ending_with(g, s, row.last)) << "last " << row.last;
    lo = std::min(lo, row.value);
    hi = std::max(hi, row.value);
  }
  // a still-blocked last object costs one more than an unblocked one
  EXPECT_EQ(hi, 3);
  EXPECT_EQ(lo, 2);
  EXPECT_EQ(t.mrb(mask_of(s)), 2);
  EXPECT_EQ(solve_dp(g).mrb, 2);
}

TEST(Dp, TimesOutOnBudget) {
  const auto g = mrb::testing::random_digraph(22, 0.2, 3);
  EXPECT_THROW(solve_dp(g, Deadline(1ms)), Timeout);
  EXPECT_THROW(solve_dp(LabeledDepGraph(25, {})), TooLarge);
}

TEST(Dfdp, MatchesBruteLabeled) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const int n = 2 + static_cast<int>(seed % 7);
    const auto g = mrb::testing::random_digraph(n, 0.1 + 0.05 * (seed % 6), seed);
    ASSERT_EQ(solve_dfdp(g).mrb, solve_brute(g).mrb) << "seed " << seed;
  }
}

TEST(Dfdp, MatchesDpUpToTwenty) {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const int n = 12 + static_cast<int>(seed % 9);
    const auto g = mrb::testing::random_digraph(n, 2.5 / n, seed);
    ASSERT_EQ(solve_dfdp(g).mrb, solve_dp(g).mrb) << "seed " << seed;
  }
}

TEST(Dfdp, CompletionModeMatchesOracle) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto g = mrb::testing::random_digraph(6, 0.3, seed);
    DfdpOptions opt;
    opt.mode = Occupancy::Completion;
    const auto r = solve_dfdp(g, opt);
    EXPECT_EQ(r.mrb, mrb::testing::exhaustive_mrb(g, Occupancy::Completion));
    EXPECT_EQ(solve_brute(g, Occupancy::Completion).mrb, r.mrb);
  }
}

TEST(Dfdp, DecompositionDoesNotChangeValue) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto g = mrb::testing::random_digraph(9, 0.2, seed);
    DfdpOptions flat;
    flat.decompose = false;
    EXPECT_EQ(solve_dfdp(g).mrb, solve_dfdp(g, flat).mrb);
  }
}

TEST(Dfdp, DecisionIsMonotoneInK) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto g = mrb::testing::random_digraph(8, 0.3, seed);
    const int mrb = solve_dp(g).mrb;
    for (int k = 0; k <= 8; ++k) {
      const auto w = dfdp_feasible(g, k);
      ASSERT_EQ(w.has_value(), k >= mrb) << "k " << k;
      if (w) {
        ASSERT_LE(simulate_labeled(g, *w).trace.max_rb, k);
      }
    }
  }
}

TEST(Dfdp, UnlabeledMatchesBrute) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const int n = 2 + static_cast<int>(seed % 7);
    const auto g = mrb::testing::random_bipartite(n, 0.2 + 0.05 * (seed % 5), seed);
    ASSERT_EQ(solve_dfdp(g).mrb, solve_brute(g).mrb) << "seed " << seed;
  }
}

TEST(Dfdp, KStartAboveOptimumStillValid) {
  const auto g = mrb::testing::seven_object_example();
  DfdpOptions opt;
  opt.k_start = 4;
  const auto r = solve_dfdp(g, opt);
  EXPECT_LE(r.mrb, 4);
  EXPECT_TRUE(validate(r.plan, g));
}

TEST(Pqs, MatchesBrute) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const int n = 2 + static_cast<int>(seed % 7);
    const auto g = mrb::testing::random_bipartite(n, 0.2 + 0.05 * (seed % 5), seed);
    const auto r = solve_pqs(g);
    ASSERT_EQ(r.mrb, solve_brute(g).mrb) << "seed " << seed;
    ASSERT_TRUE(validate(r.plan, g));
  }
}

TEST(Pqs, MatchesBruteOnDiscInstances) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto g = build_unlabeled(gen_random(8, 0.5, Kind::Unlabeled, seed));
    EXPECT_EQ(solve_pqs(g).mrb, mrb::testing::exhaustive_mrb(g)) << "seed " << seed;
  }
}

TEST(Families, SticksNeedNMinusOne) {
  for (int n = 2; n <= 7; ++n) {
    const auto s = gen_sticks(n);
    EXPECT_EQ(solve_brute(s.labeled).mrb, n - 1);
    EXPECT_EQ(solve_pqs(s.unlabeled).mrb, n - 1);
  }
  EXPECT_EQ(solve_pqs(gen_sticks(10).unlabeled).mrb, 9);
}

TEST(Families, EmptyGraphsNeedNoBuffer) {
  const auto r = solve_dfdp(LabeledDepGraph(6, {}));
  EXPECT_EQ(r.mrb, 0);
  for (const auto& a : r.plan.actions) EXPECT_EQ(a.to.spot, Spot::Goal);
  EXPECT_EQ(solve_pqs(UnlabeledDepGraph(5, {})).mrb, 0);
}

TEST(Families, GridGoldens) {
  EXPECT_EQ(solve_brute(gen_grid(2)).mrb, 1);
  EXPECT_EQ(solve_brute(gen_grid(3)).mrb, 1);
  EXPECT_EQ(solve_dfdp(gen_grid(3)).mrb, 1);
  EXPECT_EQ(solve_dfdp(gen_grid(4)).mrb, 2);
  EXPECT_EQ(solve_pqs(gen_grid(4)).mrb, 2);
}

TEST(Families, CycleNine) {
  const auto g = gen_cycle(9);
  EXPECT_EQ(solve_dfdp(g).mrb, solve_brute(g).mrb);
}

TEST(SepPlan, ValidAndNeverBelowOptimum) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto g = build_unlabeled(gen_random(8 + static_cast<int>(seed % 5), 0.5, Kind::Unlabeled, seed));
    const auto r = solve_sepplan(g);
    ASSERT_TRUE(validate(r.plan, g)) << validate(r.plan, g).message;
    EXPECT_GE(r.mrb, solve_dfdp(g).mrb);
  }
}

TEST(SepPlan, WorksWithoutGeometry) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g = mrb::testing::random_bipartite(20, 0.1, seed);
    const auto r = solve_sepplan(g, false);
    EXPECT_TRUE(validate(r.plan, g)) << validate(r.plan, g).message;
  }
}

TEST(SepPlan, StaysUnderSquareRootBound) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = build_unlabeled(gen_random(100, 0.5, Kind::Unlabeled, seed));
    const auto r = solve_sepplan(g);
    ASSERT_TRUE(validate(r.plan, g));
    EXPECT_LE(r.mrb, 10.0 * std::sqrt(2.0 * 2 * 100));
  }
}

TEST(SepPlan, GridPlansAreValid) {
  for (int m = 1; m <= 8; ++m) {
    const auto g = gen_grid(m);
    EXPECT_TRUE(validate(solve_sepplan(g).plan, g)) << "m " << m;
  }
}

TEST(Dispatch, NamesAndTypeChecks) {
  const auto lg = mrb::testing::seven_object_example();
  const auto ug = gen_grid(2);
  for (const auto& name : {"brute", "dp", "dfdp"}) EXPECT_EQ(solve_by_name(name, lg).mrb, 2);
  for (const auto& name : {"brute", "dfdp", "pqs"}) EXPECT_EQ(solve_by_name(name, ug).mrb, 1);
  EXPECT_THROW(solve_by_name("pqs", lg), InputError);
  EXPECT_THROW(solve_by_name("dp", ug), InputError);
  EXPECT_THROW(solve_by_name("magic", lg), InputError);
  EXPECT_EQ(solver_names().size(), 5u);
}
