// Command-line front end: gen | solve | bench | ilp | stats.
// Exit codes: 0 ok, 2 input error, 3 timeout.

#include <atomic>
#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "mrb/mrb.hpp"

namespace {

constexpr int kExitInput = 2;
constexpr int kExitTimeout = 3;

struct Globals {
  std::uint64_t seed = 0;
  double timeout = 30.0;
  int jobs = 1;
  std::string out;
};

std::atomic<bool> g_interrupted{false};

void on_sigint(int) { g_interrupted.store(true); }

void emit(const Globals& g, const std::string& text) {
  if (g.out.empty())
    std::cout << text;
  else
    mrb::write_file(g.out, text);
}

std::string join(const std::vector<int>& v, const char* sep = " ") {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? sep : "") << v[i];
  return os.str();
}

// ---------------------------------------------------------------------------
// Inputs

struct Loaded {
  std::optional<mrb::GeomInstance> instance;
  mrb::AnyGraph graph;
};

Loaded load(const std::string& path, const std::string& as) {
  const std::string text = mrb::read_file(path);
  Loaded in;
  if (mrb::looks_like_instance(text)) {
    in.instance = mrb::instance_from_json(text);
    const mrb::Kind kind = as.empty() ? in.instance->kind : mrb::kind_from_string(as);
    if (kind == mrb::Kind::Labeled)
      in.graph = mrb::build_labeled(*in.instance);
    else
      in.graph = mrb::build_unlabeled(*in.instance);
  } else {
    in.graph = mrb::graph_from_json(text);
    if (!as.empty() && mrb::kind_from_string(as) != (std::holds_alternative<mrb::LabeledDepGraph>(in.graph)
                                                         ? mrb::Kind::Labeled
                                                         : mrb::Kind::Unlabeled))
      throw mrb::InputError("--as cannot change the type of a graph file");
  }
  return in;
}

// ---------------------------------------------------------------------------
// gen

struct GenArgs {
  std::string family = "random";
  int n = 10;
  int m = 3;
  double rho = 0.3;
  std::string kind = "labeled";
};

int cmd_gen(const Globals& g, const GenArgs& a) {
  const mrb::Kind kind = mrb::kind_from_string(a.kind);
  if (a.family == "random") {
    const auto inst = mrb::gen_random(a.n, a.rho, kind, g.seed);
    emit(g, mrb::instance_to_json(inst));
    std::fprintf(stderr, "n = %d, density = %s\n", inst.size(), mrb::format_double(mrb::density(inst)).c_str());
  } else if (a.family == "lgrid") {
    const auto inst = mrb::grid_instance(a.m, kind, g.seed);
    emit(g, mrb::instance_to_json(inst));
    std::fprintf(stderr, "n = %d, density = %s\n", inst.size(), mrb::format_double(mrb::density(inst)).c_str());
  } else if (a.family == "grid") {
    const auto graph = mrb::gen_grid(a.m);
    emit(g, mrb::graph_to_json(graph));
    std::fprintf(stderr, "D(%d,%d): n = %d\n", a.m, 2 * a.m, graph.size());
  } else if (a.family == "cycle") {
    const auto graph = mrb::gen_cycle(a.n);
    emit(g, mrb::graph_to_json(graph));
    std::fprintf(stderr, "n = %d\n", graph.size());
  } else if (a.family == "sticks") {
    const auto s = mrb::gen_sticks(a.n);
    emit(g, kind == mrb::Kind::Labeled ? mrb::graph_to_json(s.labeled) : mrb::graph_to_json(s.unlabeled));
    std::fprintf(stderr, "n = %d\n", a.n);
  } else {
    throw mrb::InputError("unknown family '" + a.family + "' (random, grid, lgrid, cycle, sticks)");
  }
  return 0;
}

// ---------------------------------------------------------------------------
// solve

struct SolveArgs {
  std::string input;
  std::string solver = "dfdp";
  std::string as;
  std::string plan_path;
  std::string trace_path;
};

std::string result_json(const std::string& solver, const char* kind, int n, const mrb::SolveResult& r) {
  std::vector<int> profile;
  for (const auto& s : r.trace.profile) profile.push_back(s.occupancy);
  std::ostringstream os;
  os << "{\n  \"solver\": \"" << solver << "\",\n  \"kind\": \"" << kind << "\",\n  \"n\": " << n
     << ",\n  \"mrb\": " << r.mrb << ",\n  \"total_buffers\": " << r.trace.total_buffers << ",\n  \"ordering\": ["
     << join(r.ordering, ", ") << "],\n  \"profile\": [" << join(profile, ", ") << "],\n  \"nodes\": "
     << r.stats.nodes_expanded << ",\n  \"states\": " << r.stats.states_stored << "\n}\n";
  return os.str();
}

int cmd_solve(const Globals& g, const SolveArgs& a) {
  const Loaded in = load(a.input, a.as);
  mrb::Deadline deadline{std::chrono::duration<double>(g.timeout)};
  mrb::SolveResult r;
  mrb::Validation ok;
  const char* kind;
  int n;
  if (const auto* lg = std::get_if<mrb::LabeledDepGraph>(&in.graph)) {
    r = mrb::solve_by_name(a.solver, *lg, deadline);
    ok = mrb::validate(r.plan, *lg);
    kind = "labeled";
    n = lg->size();
  } else {
    const auto& ug = std::get<mrb::UnlabeledDepGraph>(in.graph);
    r = mrb::solve_by_name(a.solver, ug, deadline);
    ok = mrb::validate(r.plan, ug);
    kind = "unlabeled";
    n = ug.size();
  }
  if (!ok) throw std::logic_error("solver produced an invalid plan: " + ok.message);

  std::vector<int> profile;
  for (const auto& s : r.trace.profile) profile.push_back(s.occupancy);
  std::cout << "MRB = " << r.mrb << "\n";
  std::cout << (kind[0] == 'l' ? "ordering: " : "fill order: ") << join(r.ordering) << "\n";
  std::cout << "buffer profile: " << join(profile) << "\n";
  std::cout << "total buffers: " << r.trace.total_buffers << "\n";
  std::fprintf(stderr, "solver %s: %.3f ms, %llu nodes\n", a.solver.c_str(), r.stats.wall_ms,
               static_cast<unsigned long long>(r.stats.nodes_expanded));
  if (!a.plan_path.empty()) mrb::write_file(a.plan_path, mrb::plan_to_json(r.plan));
  if (!a.trace_path.empty()) mrb::write_file(a.trace_path, mrb::trace_to_csv(r.plan, r.trace));
  if (!g.out.empty()) mrb::write_file(g.out, result_json(a.solver, kind, n, r));
  return 0;
}

// ---------------------------------------------------------------------------
// bench

struct BenchArgs {
  std::vector<std::string> solvers;
  std::vector<int> ns;
  std::vector<double> rhos;
  std::string kind = "labeled";
  int trials = 5;
  std::string plots;
  bool no_timing = false;
};

int cmd_bench(const Globals& g, const BenchArgs& a) {
  mrb::BenchConfig c;
  c.solvers = a.solvers;
  c.ns = a.ns;
  c.rhos = a.rhos;
  c.kind = mrb::kind_from_string(a.kind);
  c.trials = a.trials;
  c.timeout_s = g.timeout;
  c.seed_base = g.seed;
  c.jobs = g.jobs;
  c.record_time = !a.no_timing;
  mrb::check_config(c);

  const std::string csv_path = g.out.empty() ? "bench.csv" : g.out;
  std::ofstream csv(csv_path, std::ios::binary);
  if (!csv) throw mrb::InputError("cannot write " + csv_path);
  csv << mrb::bench_csv_header() << std::flush;

  std::signal(SIGINT, on_sigint);
  const auto rows = mrb::run_bench(
      c, [&](const mrb::BenchRow& r) { csv << mrb::bench_csv_row(r) << std::flush; }, &g_interrupted);
  std::signal(SIGINT, SIG_DFL);

  std::string prefix = a.plots;
  if (prefix.empty()) {
    prefix = csv_path;
    if (prefix.size() > 4 && prefix.compare(prefix.size() - 4, 4, ".csv") == 0) prefix.resize(prefix.size() - 4);
  }
  const auto plots = mrb::bench_plots(rows);
  mrb::write_file(prefix + "_time.svg", plots.time);
  mrb::write_file(prefix + "_success.svg", plots.success);
  mrb::write_file(prefix + "_mrb.svg", plots.mrb);

  int solved = 0;
  for (const auto& r : rows) solved += r.mrb.has_value();
  std::cout << rows.size() << " runs, " << solved << " solved; wrote " << csv_path << " and " << prefix
            << "_{time,success,mrb}.svg\n";
  if (g_interrupted.load()) {
    std::cerr << "interrupted: partial results written\n";
    return 130;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// ilp

struct IlpArgs {
  std::string input;
  std::string k = "mrb";
  std::string mode = "paper";
};

int cmd_ilp(const Globals& g, const IlpArgs& a) {
  const Loaded in = load(a.input, "");
  const auto* lg = std::get_if<mrb::LabeledDepGraph>(&in.graph);
  if (!lg) throw mrb::InputError("ilp needs a labeled graph or instance");
  int k;
  if (a.k == "mrb") {
    k = mrb::solve_dfdp(*lg, {}, mrb::Deadline{std::chrono::duration<double>(g.timeout)}).mrb;
  } else {
    try {
      std::size_t used = 0;
      k = std::stoi(a.k, &used);
      if (used != a.k.size() || k < 0) throw std::invalid_argument("k");
    } catch (const std::exception&) {
      throw mrb::InputError("--k must be a non-negative integer or 'mrb'");
    }
  }
  const auto model = mrb::build_tb_milp(*lg, k, mrb::milp_mode_from_string(a.mode));
  emit(g, mrb::write_lp(model));
  std::fprintf(stderr, "k = %d, mode = %s, variables = %zu, constraints = %zu\n", k, mrb::to_string(model.mode),
               model.binaries.size(), model.rows.size());
  return 0;
}

// ---------------------------------------------------------------------------
// stats

int cmd_stats(const Globals& g, const std::string& input, const std::string& as) {
  const Loaded in = load(input, as);
  std::ostringstream os;
  mrb::GraphStats st;
  if (const auto* lg = std::get_if<mrb::LabeledDepGraph>(&in.graph)) {
    st = mrb::stats(*lg);
    os << "type: labeled\nn: " << lg->size() << "\narcs: " << lg->arcs().size() << "\n";
  } else {
    const auto& ug = std::get<mrb::UnlabeledDepGraph>(in.graph);
    st = mrb::stats(ug);
    os << "type: unlabeled\nn: " << ug.size() << "\nedges: " << ug.edges().size() << "\n";
  }
  os << "max_degree: " << st.max_degree << "\ncomponents: " << st.num_sccs
     << "\nlargest_component: " << st.largest_component << "\nacyclic: " << (st.is_acyclic ? "true" : "false")
     << "\n";
  if (in.instance) os << "density: " << mrb::format_double(mrb::density(*in.instance)) << "\n";
  emit(g, os.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimum running buffer planning for tabletop rearrangement"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Random seed (bench: seed base)");
  app.add_option("--timeout", g.timeout, "Per-solve time limit in seconds")->check(CLI::PositiveNumber);
  app.add_option("--jobs", g.jobs, "Bench worker threads")->check(CLI::PositiveNumber);
  app.add_option("-o,--output", g.out, "Output file");

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate an instance or graph");
  gen_cmd->add_option("--family", gen.family, "random | grid | lgrid | cycle | sticks");
  gen_cmd->add_option("--n", gen.n, "Number of objects");
  gen_cmd->add_option("--m", gen.m, "Grid size for D(m,2m)");
  gen_cmd->add_option("--rho", gen.rho, "Density");
  gen_cmd->add_option("--kind", gen.kind, "labeled | unlabeled");

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Compute the MRB of an instance or graph");
  solve_cmd->add_option("input", solve.input, "Instance or graph JSON")->required();
  solve_cmd->add_option("--solver", solve.solver, "brute | dp | dfdp | pqs | sepplan");
  solve_cmd->add_option("--as", solve.as, "Read an instance as labeled or unlabeled");
  solve_cmd->add_option("--plan", solve.plan_path, "Write the plan JSON here");
  solve_cmd->add_option("--trace", solve.trace_path, "Write the trace CSV here");

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Run a benchmark grid");
  bench_cmd->add_option("--solvers", bench.solvers, "Solvers")->delimiter(',');
  bench_cmd->add_option("--n", bench.ns, "Instance sizes")->delimiter(',')->required();
  bench_cmd->add_option("--rho", bench.rhos, "Densities")->delimiter(',')->required();
  bench_cmd->add_option("--kind", bench.kind, "labeled | unlabeled");
  bench_cmd->add_option("--trials", bench.trials, "Trials per cell");
  bench_cmd->add_option("--plots", bench.plots, "SVG file prefix (default: CSV path without .csv)");
  bench_cmd->add_flag("--no-timing", bench.no_timing, "Write ms = 0 for byte-stable output");

  IlpArgs ilp;
  auto* ilp_cmd = app.add_subcommand("ilp", "Write the total-buffer MILP as LP text");
  ilp_cmd->add_option("input", ilp.input, "Labeled graph or instance JSON")->required();
  ilp_cmd->add_option("--k", ilp.k, "Running-buffer cap, or 'mrb'");
  ilp_cmd->add_option("--mode", ilp.mode, "paper | semantic");

  std::string stats_input, stats_as;
  auto* stats_cmd = app.add_subcommand("stats", "Print dependency graph statistics");
  stats_cmd->add_option("input", stats_input, "Instance or graph JSON")->required();
  stats_cmd->add_option("--as", stats_as, "Read an instance as labeled or unlabeled");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*gen_cmd) return cmd_gen(g, gen);
    if (*solve_cmd) return cmd_solve(g, solve);
    if (*bench_cmd) return cmd_bench(g, bench);
    if (*ilp_cmd) return cmd_ilp(g, ilp);
    if (*stats_cmd) return cmd_stats(g, stats_input, stats_as);
  } catch (const mrb::Timeout&) {
    std::cerr << "error: time limit of " << g.timeout << " s exceeded\n";
    return kExitTimeout;
  } catch (const mrb::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return 0;
}
