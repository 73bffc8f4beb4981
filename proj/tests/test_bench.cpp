#include <gtest/gtest.h>

#include "mrb/bench.hpp"

using namespace mrb;

namespace {

BenchConfig small_config() {
  BenchConfig c;
  c.solvers = {"dfdp"};
  c.ns = {10};
  c.rhos = {0.3};
  c.trials = 10;
  c.seed_base = 42;
  c.record_time = false;
  return c;
}

std::string to_csv(const std::vector<BenchRow>& rows) {
  std::string s = bench_csv_header();
  for (const auto& r : rows) s += bench_csv_row(r);
  return s;
}

}  // namespace

TEST(Bench, TenTrialsAllSolve) {
  std::vector<BenchRow> seen;
  const auto rows = run_bench(small_config(), [&](const BenchRow& r) { seen.push_back(r); });
  ASSERT_EQ(rows.size(), 10u);
  ASSERT_EQ(seen.size(), 10u);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_TRUE(rows[i].mrb.has_value());
    EXPECT_FALSE(rows[i].timed_out);
    EXPECT_EQ(rows[i].seed, 42 + i);
    EXPECT_EQ(rows[i].ms, 0.0);
  }
}

TEST(Bench, ConfigValidation) {
  auto c = small_config();
  c.solvers.clear();
  EXPECT_THROW(run_bench(c, [](const BenchRow&) {}), InputError);
  c = small_config();
  c.solvers = {"nope"};
  EXPECT_THROW(check_config(c), InputError);
  c = small_config();
  c.trials = 0;
  EXPECT_THROW(check_config(c), InputError);
  c = small_config();
  c.rhos.clear();
  EXPECT_THROW(check_config(c), InputError);
}

TEST(Bench, CellOrder) {
  BenchConfig c;
  c.solvers = {"dp", "dfdp"};
  c.ns = {5, 6};
  c.rhos = {0.2, 0.3};
  c.trials = 2;
  const auto cells = bench_cells(c);
  ASSERT_EQ(cells.size(), 16u);
  EXPECT_EQ(cells[0].solver, "dp");
  EXPECT_EQ(cells[1].seed, 1u);
  EXPECT_EQ(cells[2].rho, 0.3);
  EXPECT_EQ(cells[4].n, 6);
  EXPECT_EQ(cells[8].solver, "dfdp");
}

TEST(Bench, OutputIndependentOfJobs) {
  auto c = small_config();
  c.solvers = {"dp", "dfdp"};
  c.ns = {6, 9};
  c.trials = 3;
  const auto one = to_csv(run_bench(c, [](const BenchRow&) {}));
  c.jobs = 3;
  EXPECT_EQ(to_csv(run_bench(c, [](const BenchRow&) {})), one);
}

TEST(Bench, WrongGraphTypeCountsAsUnsolved) {
  auto c = small_config();
  c.solvers = {"pqs"};
  c.trials = 2;
  const auto rows = run_bench(c, [](const BenchRow&) {});
  for (const auto& r : rows) {
    EXPECT_FALSE(r.mrb.has_value());
    EXPECT_TRUE(r.timed_out);
  }
  EXPECT_EQ(bench_csv_row(rows[0]), "pqs,labeled,10,0.3,42,,,0,0.000,true\n");
}

TEST(Bench, StopFlagSkipsUnstartedCells) {
  std::atomic<bool> stop{true};
  int delivered = 0;
  EXPECT_TRUE(run_bench(small_config(), [&](const BenchRow&) { ++delivered; }, &stop).empty());
  EXPECT_EQ(delivered, 0);
}

TEST(Bench, StopMidRunKeepsFinishedRowsInOrder) {
  std::atomic<bool> stop{false};
  std::vector<std::uint64_t> seeds;
  const auto rows = run_bench(
      small_config(),
      [&](const BenchRow& r) {
        seeds.push_back(r.seed);
        if (seeds.size() == 3) stop = true;
      },
      &stop);
  ASSERT_GE(rows.size(), 3u);
  for (std::size_t i = 0; i < seeds.size(); ++i) EXPECT_EQ(seeds[i], 42 + i);
}

TEST(Bench, CsvRowFormat) {
  BenchRow r;
  r.solver = "dp";
  r.n = 8;
  r.rho = 0.25;
  r.seed = 7;
  r.mrb = 2;
  r.total_buffers = 3;
  r.nodes = 100;
  r.ms = 1.23456;
  EXPECT_EQ(bench_csv_row(r), "dp,labeled,8,0.25,7,2,3,100,1.235,false\n");
}

TEST(Bench, PlotsAreSvg) {
  auto c = small_config();
  c.ns = {6, 8};
  c.trials = 2;
  const auto p = bench_plots(run_bench(c, [](const BenchRow&) {}));
  for (const auto* svg : {&p.time, &p.success, &p.mrb}) {
    EXPECT_EQ(svg->rfind("<svg", 0), 0u);
    EXPECT_NE(svg->find("</svg>"), std::string::npos);
    EXPECT_NE(svg->find("dfdp rho=0.3"), std::string::npos);
  }
  EXPECT_NE(p.success.find("Success rate"), std::string::npos);
}
