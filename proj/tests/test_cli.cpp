#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "mrb/io.hpp"

namespace fs = std::filesystem;

namespace {

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("mrb_cli_") + info->name() + "_" + std::to_string(::getpid()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  // Runs the binary inside the temp dir; stdout goes to out.txt, stderr to err.txt.
  int run(const std::string& args) {
    const std::string cmd = "cd '" + dir_.string() + "' && '" + MRB_CLI_PATH + "' " + args + " >out.txt 2>err.txt";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }
  std::string file(const std::string& name) const { return mrb::read_file((dir_ / name).string()); }
  std::string out() const { return file("out.txt"); }
  std::string err() const { return file("err.txt"); }
  void put(const std::string& name, const std::string& text) const { mrb::write_file((dir_ / name).string(), text); }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, GenRandomInstance) {
  ASSERT_EQ(run("gen --n 20 --rho 0.4 --kind unlabeled --seed 3 -o i.json"), 0);
  const auto inst = mrb::instance_from_json(file("i.json"));
  EXPECT_EQ(inst.start.poses.size(), 20u);
  EXPECT_EQ(inst.goal.poses.size(), 20u);
  EXPECT_NE(err().find("n = 20"), std::string::npos);
}

TEST_F(Cli, GenGridAndCycle) {
  ASSERT_EQ(run("gen --family grid --m 3 -o g.json"), 0);
  const auto g = std::get<mrb::UnlabeledDepGraph>(mrb::graph_from_json(file("g.json")));
  EXPECT_EQ(g.size(), 9);
  ASSERT_EQ(run("gen --family cycle --n 9"), 0);
  EXPECT_EQ(std::get<mrb::LabeledDepGraph>(mrb::graph_from_json(out())).size(), 9);
}

TEST_F(Cli, SolveTwoCycle) {
  put("c.json", R"({"type": "labeled", "n": 2, "arcs": [[0, 1], [1, 0]]})");
  ASSERT_EQ(run("solve c.json --solver dfdp --plan p.json --trace t.csv"), 0);
  EXPECT_NE(out().find("MRB = 1"), std::string::npos);
  const auto plan = mrb::plan_from_json(file("p.json"));
  EXPECT_EQ(plan.actions.size(), 3u);
  EXPECT_EQ(file("t.csv").rfind("step,object,action,occupancy,transient_peak\n", 0), 0u);
}

TEST_F(Cli, SolveUnlabeledSticks) {
  ASSERT_EQ(run("gen --family sticks --n 6 --kind unlabeled -o s.json"), 0);
  ASSERT_EQ(run("solve s.json --solver pqs"), 0);
  EXPECT_NE(out().find("MRB = 5"), std::string::npos);
}

TEST_F(Cli, SepPlanNeverBeatsDfdp) {
  ASSERT_EQ(run("gen --n 16 --rho 0.5 --kind unlabeled --seed 8 -o i.json"), 0);
  ASSERT_EQ(run("solve i.json --solver dfdp -o d.json"), 0);
  ASSERT_EQ(run("solve i.json --solver sepplan --plan p.json -o s.json"), 0);
  const auto inst = mrb::instance_from_json(file("i.json"));
  const auto g = mrb::build_unlabeled(inst);
  EXPECT_TRUE(mrb::validate(mrb::plan_from_json(file("p.json")), g));
  auto mrb_of = [&](const std::string& name) {
    const auto j = nlohmann::json::parse(file(name));
    return j.at("mrb").get<int>();
  };
  EXPECT_GE(mrb_of("s.json"), mrb_of("d.json"));
}

TEST_F(Cli, BenchSmallGrid) {
  ASSERT_EQ(run("bench --solvers dfdp --n 10,20 --rho 0.3 --kind labeled --trials 5 -o b.csv --no-timing"), 0);
  const auto csv = file("b.csv");
  EXPECT_EQ(csv.rfind("solver,kind,n,rho,seed,mrb,total_buffers,nodes,ms,timed_out\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 11);
  EXPECT_EQ(csv.find(",true\n"), std::string::npos);
  for (const char* p : {"b_time.svg", "b_success.svg", "b_mrb.svg"}) EXPECT_TRUE(fs::exists(dir_ / p)) << p;
}

TEST_F(Cli, BenchWithoutSolversIsUsageError) {
  EXPECT_EQ(run("bench --solvers '' --n 10 --rho 0.3"), 2);
}

TEST_F(Cli, IlpModes) {
  put("c.json", R"({"type": "labeled", "n": 2, "arcs": [[0, 1], [1, 0]]})");
  ASSERT_EQ(run("ilp c.json --k 1 --mode paper -o m.lp"), 0);
  EXPECT_EQ(file("m.lp"), mrb::read_file(std::string(MRB_GOLDEN_DIR) + "/two_cycle_k1.lp"));
  EXPECT_NE(err().find("k = 1, mode = paper"), std::string::npos);
  ASSERT_EQ(run("ilp c.json --k 1 --mode semantic -o s.lp"), 0);
  EXPECT_NE(file("s.lp"), file("m.lp"));
}

TEST_F(Cli, IlpMrbOnAcyclicGraph) {
  put("a.json", R"({"type": "labeled", "n": 3, "arcs": [[0, 1], [1, 2]]})");
  ASSERT_EQ(run("ilp a.json --k mrb"), 0);
  EXPECT_EQ(out().rfind("\\ total buffers, n = 3, k = 0, mode = paper\n", 0), 0u);
}

TEST_F(Cli, IlpRejectsUnlabeled) {
  ASSERT_EQ(run("gen --family grid --m 2 -o g.json"), 0);
  EXPECT_EQ(run("ilp g.json --k 1"), 2);
}

TEST_F(Cli, Stats) {
  ASSERT_EQ(run("gen --family cycle --n 9 -o c.json"), 0);
  ASSERT_EQ(run("stats c.json"), 0);
  EXPECT_FALSE(out().empty());
}

TEST_F(Cli, BadInputExitsTwo) {
  EXPECT_EQ(run("solve missing.json"), 2);
  put("bad.json", "{not json");
  EXPECT_EQ(run("solve bad.json"), 2);
  EXPECT_EQ(run("gen --family moebius"), 2);
  EXPECT_EQ(run("gen --n 5 --rho 0.9"), 2);
  EXPECT_EQ(run("frobnicate"), 2);
  put("c.json", R"({"type": "labeled", "n": 2, "arcs": [[0, 1], [1, 0]]})");
  EXPECT_EQ(run("solve c.json --solver pqs"), 2);
}

TEST_F(Cli, TimeoutExitsThree) {
  ASSERT_EQ(run("gen --family sticks --n 40 -o k.json"), 0);
  EXPECT_EQ(run("solve k.json --solver dfdp --timeout 0.05"), 3);
}

TEST_F(Cli, OutputsAreByteIdentical) {
  const char* cmds[] = {
      "gen --n 30 --rho 0.4 --kind labeled --seed 11 -o a.json",
      "solve a.json --solver dfdp -o r.json --plan p.json --trace t.csv",
      "bench --solvers dp,dfdp --n 8 --rho 0.3 --trials 3 --no-timing -o b.csv",
      "ilp a.json --k mrb --mode semantic -o m.lp",
  };
  const char* files[] = {"a.json", "r.json", "p.json", "t.csv", "b.csv", "b_time.svg", "b_mrb.svg", "m.lp"};
  std::vector<std::string> first;
  for (int round = 0; round < 2; ++round) {
    for (const char* c : cmds) ASSERT_EQ(run(std::string(c) + " --jobs 1"), 0) << c;
    for (int i = 0; i < 8; ++i) {
      const auto text = file(files[i]);
      if (round == 0)
        first.push_back(text);
      else
        EXPECT_EQ(text, first[i]) << files[i];
    }
  }
}
