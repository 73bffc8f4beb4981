#include <gtest/gtest.h>

#include "mrb/dp.hpp"
#include "mrb/families.hpp"
#include "mrb/optmodels.hpp"
#include "test_support.hpp"

using namespace mrb;

TEST(TbDp, DisjointTwoCyclesBufferOncePerCycle) {
  for (int n = 1; n <= 8; ++n) {
    const auto g = mrb::testing::disjoint_two_cycles(n);
    const auto r = solve_tb_dp(g, 1);
    EXPECT_EQ(r.total_buffers, n);
    EXPECT_EQ(r.k, 1);
    const auto t = simulate_labeled(g, r.ordering).trace;
    EXPECT_LE(t.max_rb, 1);
    EXPECT_EQ(t.total_buffers, n);
  }
}

TEST(TbDp, MatchesExhaustiveForEveryCap) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const int n = 3 + static_cast<int>(seed % 4);
    const auto g = mrb::testing::random_digraph(n, 0.35, seed);
    for (auto mode : {Occupancy::Transient, Occupancy::Completion}) {
      const int mrb = mrb::testing::exhaustive_mrb(g, mode);
      for (int k = mrb; k <= n; ++k) {
        const auto r = solve_tb_dp(g, k, mode);
        ASSERT_EQ(r.total_buffers, mrb::testing::exhaustive_tb(g, k, mode)) << "seed " << seed << " k " << k;
        const auto t = simulate_labeled(g, r.ordering, mode).trace;
        ASSERT_LE(t.max_rb, k);
        ASSERT_EQ(t.total_buffers, r.total_buffers);
      }
    }
  }
}

TEST(TbDp, BelowOptimumIsInfeasible) {
  EXPECT_THROW(solve_tb_dp(gen_sticks(4).labeled, 2), Infeasible);
  EXPECT_THROW(solve_tb_dp(LabeledDepGraph(2, {{0, 1}, {1, 0}}), 0), Infeasible);
  EXPECT_THROW(solve_tb_dp(LabeledDepGraph(3, {}), -1), Infeasible);
  EXPECT_THROW(solve_tb_dp(LabeledDepGraph(25, {}), 3), TooLarge);
}

TEST(Mfvs, SmallCases) {
  EXPECT_EQ(solve_mfvs(LabeledDepGraph(4, {})).size, 0);
  EXPECT_EQ(solve_mfvs(LabeledDepGraph(2, {{0, 1}, {1, 0}})).size, 1);
  EXPECT_EQ(solve_mfvs(gen_sticks(5).labeled).size, 4);
  for (int n = 1; n <= 8; ++n) EXPECT_EQ(solve_mfvs(mrb::testing::disjoint_two_cycles(n)).size, n);
}

TEST(Mfvs, MatchesExhaustive) {
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    const int n = 3 + static_cast<int>(seed % 8);
    const auto g = mrb::testing::random_digraph(n, 0.25, seed);
    const auto r = solve_mfvs(g);
    EXPECT_TRUE(r.exact);
    EXPECT_EQ(r.size, mrb::testing::exhaustive_fvs_size(g)) << "seed " << seed;
    EXPECT_EQ(static_cast<int>(r.fvs.size()), r.size);
    EXPECT_TRUE(mrb::testing::is_acyclic_without(g, r.fvs));
  }
}

TEST(Mfvs, UncappedTotalBuffersEqualsFvs) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto g = mrb::testing::random_digraph(7, 0.3, seed);
    EXPECT_EQ(solve_tb_dp(g, 7).total_buffers, solve_mfvs(g).size) << "seed " << seed;
  }
}

TEST(Mfvs, CapCanCostExtraBuffers) {
  // search for a graph where holding the running buffer at MRB forces more
  // buffering than the unconstrained optimum
  bool found = false;
  for (std::uint64_t seed = 0; seed < 400 && !found; ++seed) {
    const auto g = mrb::testing::random_digraph(7, 0.35, seed);
    const int mrb = solve_dp(g).mrb;
    found = solve_tb_dp(g, mrb).total_buffers > solve_mfvs(g).size;
  }
  EXPECT_TRUE(found);
}

TEST(Mfvs, GreedyAboveExactLimitIsValid) {
  const auto g = mrb::testing::random_digraph(40, 0.06, 11);
  const auto r = solve_mfvs(g);
  EXPECT_FALSE(r.exact);
  EXPECT_TRUE(mrb::testing::is_acyclic_without(g, r.fvs));
  const auto big = gen_cycle(36);
  const auto rb = solve_mfvs(big);
  EXPECT_TRUE(mrb::testing::is_acyclic_without(big, rb.fvs));
  EXPECT_FALSE(rb.exact);
}
