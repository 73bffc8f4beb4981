#include <gtest/gtest.h>

#include "mrb/brute.hpp"
#include "mrb/families.hpp"
#include "mrb/io.hpp"
#include "mrb/milp.hpp"
#include "test_support.hpp"

using namespace mrb;

namespace {

std::string golden(const std::string& name) { return read_file(std::string(MRB_GOLDEN_DIR) + "/" + name); }

LabeledDepGraph two_cycle() { return LabeledDepGraph(2, {{0, 1}, {1, 0}}); }

}  // namespace

TEST(MilpGolden, TwoCycleCapOne) { EXPECT_EQ(write_lp(build_tb_milp(two_cycle(), 1)), golden("two_cycle_k1.lp")); }

TEST(MilpGolden, CompleteThreeCapTwo) {
  EXPECT_EQ(write_lp(build_tb_milp(gen_sticks(3).labeled, 2)), golden("k3_k2.lp"));
}

TEST(MilpGolden, EmissionIsRepeatable) {
  const auto g = mrb::testing::random_digraph(6, 0.3, 4);
  for (auto mode : {MilpMode::Paper, MilpMode::Semantic})
    EXPECT_EQ(write_lp(build_tb_milp(g, 2, mode)), write_lp(build_tb_milp(g, 2, mode)));
}

TEST(MilpFormat, HeaderAndSections) {
  const auto text = write_lp(build_tb_milp(two_cycle(), 1, MilpMode::Semantic));
  EXPECT_EQ(text.rfind("\\ total buffers, n = 2, k = 1, mode = semantic\nOBJECTIVE\n min: ever_1 + ever_2\n", 0), 0u);
  EXPECT_NE(text.find("\nCONSTRAINTS\n ord_1_2: y_1_2 + y_2_1 = 1\n"), std::string::npos);
  EXPECT_NE(text.find("\nBINARY\n y_1_2\n"), std::string::npos);
  EXPECT_EQ(text.substr(text.size() - 4), "END\n");
}

TEST(MilpFormat, ModesDifferInRows) {
  const auto g = mrb::testing::seven_object_example();
  const auto paper = build_tb_milp(g, 2, MilpMode::Paper);
  const auto sem = build_tb_milp(g, 2, MilpMode::Semantic);
  EXPECT_NE(paper.rows.size(), sem.rows.size());
  EXPECT_EQ(paper.binaries, sem.binaries);
  EXPECT_EQ(paper.binaries.size(), 7u * 6 + 2 * 49 + 7);
  EXPECT_EQ(milp_mode_from_string("paper"), MilpMode::Paper);
  EXPECT_EQ(milp_mode_from_string("semantic"), MilpMode::Semantic);
  EXPECT_THROW(milp_mode_from_string("other"), InputError);
}

TEST(MilpEncoding, OptimalOrderingSatisfiesSemanticModel) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const int n = 2 + static_cast<int>(seed % 6);
    const auto g = mrb::testing::random_digraph(n, 0.3, seed);
    const auto best = solve_brute(g, Occupancy::Completion);
    const auto m = build_tb_milp(g, best.mrb, MilpMode::Semantic);
    EXPECT_EQ(check_encoding(g, best.ordering, best.mrb, m), std::nullopt) << "seed " << seed;
  }
}

TEST(MilpEncoding, ObjectiveCountsBufferedObjects) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto g = mrb::testing::random_digraph(6, 0.3, seed);
    std::vector<int> phi(6);
    std::iota(phi.begin(), phi.end(), 0);
    Rng(seed).shuffle(phi);
    const auto t = simulate_labeled(g, phi, Occupancy::Completion).trace;
    const auto m = build_tb_milp(g, t.max_rb, MilpMode::Semantic);
    const auto a = assignment_from_ordering(g, phi);
    EXPECT_EQ(check_assignment(m, a), std::nullopt);
    EXPECT_EQ(evaluate(m.objective, a), t.total_buffers);
  }
}

TEST(MilpEncoding, CapBelowPeakIsViolated) {
  const auto g = gen_sticks(4).labeled;
  const std::vector<int> phi{0, 1, 2, 3};
  const int peak = simulate_labeled(g, phi, Occupancy::Completion).trace.max_rb;
  ASSERT_GT(peak, 0);
  const auto why = check_encoding(g, phi, peak - 1, build_tb_milp(g, peak - 1, MilpMode::Semantic));
  ASSERT_TRUE(why.has_value());
  EXPECT_EQ(why->rfind("cap_", 0), 0u);
}

TEST(MilpEncoding, CyclicPrecedenceIsViolated) {
  const auto g = LabeledDepGraph(3, {});
  const auto m = build_tb_milp(g, 0, MilpMode::Semantic);
  auto a = assignment_from_ordering(g, {0, 1, 2});
  EXPECT_EQ(check_assignment(m, a), std::nullopt);
  a["y_1_3"] = 0;
  a["y_3_1"] = 1;  // 1 before 2 before 3 before 1
  const auto why = check_assignment(m, a);
  ASSERT_TRUE(why.has_value());
  EXPECT_EQ(why->rfind("trans_", 0), 0u);
}

TEST(MilpEncoding, EarlyGoalIsViolated) {
  const auto g = two_cycle();
  const auto m = build_tb_milp(g, 1, MilpMode::Semantic);
  auto a = assignment_from_ordering(g, {0, 1});
  a["g_1_1"] = 1;  // object 1 cannot be home while object 2 still blocks it
  a["b_1_1"] = 0;
  EXPECT_TRUE(check_assignment(m, a).has_value());
}

TEST(MilpEncoding, MismatchedModelRejected) {
  const auto g = two_cycle();
  EXPECT_THROW(check_encoding(g, {0, 1}, 2, build_tb_milp(g, 1)), InputError);
  EXPECT_THROW(check_encoding(g, {0, 1}, 1, build_tb_milp(LabeledDepGraph(3, {}), 1)), InputError);
  EXPECT_THROW(evaluate({{1, "nope"}}, Assignment{}), InputError);
}
