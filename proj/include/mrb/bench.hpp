#pragma once

// Benchmark grid over (solver, n, rho, trial) on random disc instances, with
// CSV rows and small SVG line plots.

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <cstdio>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "mrb/depgraph.hpp"
#include "mrb/error.hpp"
#include "mrb/geom.hpp"
#include "mrb/solvers.hpp"

namespace mrb {

struct BenchConfig {
  std::vector<std::string> solvers;
  std::vector<int> ns;
  std::vector<double> rhos;
  Kind kind = Kind::Labeled;
  int trials = 1;
  double timeout_s = 30.0;
  std::uint64_t seed_base = 0;
  int jobs = 1;
  bool record_time = true;  // false writes ms = 0 for byte-stable output
};

struct BenchRow {
  std::string solver;
  Kind kind = Kind::Labeled;
  int n = 0;
  double rho = 0.0;
  std::uint64_t seed = 0;
  std::optional<int> mrb;  // absent when the run did not finish
  int total_buffers = 0;
  std::uint64_t nodes = 0;
  double ms = 0.0;
  bool timed_out = false;
};

inline void check_config(const BenchConfig& c) {
  if (c.solvers.empty()) throw InputError("bench: no solvers given");
  if (c.ns.empty()) throw InputError("bench: no n values given");
  if (c.rhos.empty()) throw InputError("bench: no rho values given");
  if (c.trials < 1) throw InputError("bench: trials must be >= 1");
  if (!(c.timeout_s > 0)) throw InputError("bench: timeout must be positive");
  for (const auto& s : c.solvers)
    if (std::find(solver_names().begin(), solver_names().end(), s) == solver_names().end())
      throw InputError("bench: unknown solver '" + s + "'");
}

/// Cells in output order: solver, then n, then rho, then trial.
inline std::vector<BenchRow> bench_cells(const BenchConfig& c) {
  std::vector<BenchRow> cells;
  for (const auto& s : c.solvers)
    for (int n : c.ns)
      for (double rho : c.rhos)
        for (int t = 0; t < c.trials; ++t) {
          BenchRow r;
          r.solver = s;
          r.kind = c.kind;
          r.n = n;
          r.rho = rho;
          r.seed = c.seed_base + static_cast<std::uint64_t>(t);
          cells.push_back(r);
        }
  return cells;
}

/// Runs one cell. Any solver failure (timeout, size guard, generation
/// failure) leaves the row unsolved; solved rows are re-validated.
inline BenchRow run_cell(BenchRow row, const BenchConfig& c) {
  detail::Stopwatch sw;
  try {
    const GeomInstance inst = gen_random(row.n, row.rho, row.kind, row.seed);
    Deadline deadline{std::chrono::duration<double>(c.timeout_s)};
    SolveResult res;
    Validation ok;
    if (row.kind == Kind::Labeled) {
      const auto g = build_labeled(inst);
      res = solve_by_name(row.solver, g, deadline);
      ok = validate(res.plan, g);
      if (ok && simulate_labeled(g, res.ordering).trace.max_rb != res.mrb) ok = Validation::fail(-1, "mrb mismatch");
    } else {
      const auto g = build_unlabeled(inst);
      res = solve_by_name(row.solver, g, deadline);
      ok = validate(res.plan, g);
      if (ok && fill_order_rb(g, res.ordering) != res.mrb) ok = Validation::fail(-1, "mrb mismatch");
    }
    if (!ok) throw std::logic_error("bench: solver " + row.solver + " returned an invalid plan: " + ok.message);
    row.mrb = res.mrb;
    row.total_buffers = res.trace.total_buffers;
    row.nodes = res.stats.nodes_expanded;
  } catch (const Error&) {
    row.timed_out = true;
  }
  row.ms = c.record_time ? sw.ms() : 0.0;
  return row;
}

inline std::string bench_csv_header() { return "solver,kind,n,rho,seed,mrb,total_buffers,nodes,ms,timed_out\n"; }

inline std::string bench_csv_row(const BenchRow& r) {
  char rho[32], ms[32];
  std::snprintf(rho, sizeof rho, "%.6g", r.rho);
  std::snprintf(ms, sizeof ms, "%.3f", r.ms);
  std::ostringstream os;
  os << r.solver << "," << to_string(r.kind) << "," << r.n << "," << rho << "," << r.seed << ",";
  if (r.mrb) os << *r.mrb;
  os << "," << (r.mrb ? std::to_string(r.total_buffers) : "") << "," << r.nodes << "," << ms << ","
     << (r.timed_out ? "true" : "false") << "\n";
  return os.str();
}

/// Runs every cell on `c.jobs` workers and hands rows to `sink` in cell
/// order. Setting `stop` makes workers skip unstarted cells; rows already
/// finished are still delivered in order. Returns the delivered rows.
inline std::vector<BenchRow> run_bench(const BenchConfig& c, const std::function<void(const BenchRow&)>& sink,
                                       const std::atomic<bool>* stop = nullptr) {
  check_config(c);
  const auto cells = bench_cells(c);
  const std::size_t total = cells.size();
  std::vector<std::optional<BenchRow>> done(total);
  std::vector<char> skipped(total, 0);
  std::mutex mu;
  std::condition_variable cv;
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= total) return;
      const bool halt = stop && stop->load();
      std::optional<BenchRow> row;
      if (!halt) row = run_cell(cells[i], c);
      {
        std::lock_guard<std::mutex> lk(mu);
        if (row)
          done[i] = std::move(row);
        else
          skipped[i] = 1;
      }
      cv.notify_all();
    }
  };
  const int jobs = std::max(1, c.jobs);
  std::vector<std::thread> pool;
  for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);

  std::vector<BenchRow> delivered;
  for (std::size_t i = 0; i < total; ++i) {
    std::unique_lock<std::mutex> lk(mu);
    cv.wait(lk, [&] { return done[i].has_value() || skipped[i]; });
    if (skipped[i]) continue;
    BenchRow row = *done[i];
    lk.unlock();
    sink(row);
    delivered.push_back(std::move(row));
  }
  for (auto& t : pool) t.join();
  return delivered;
}

// ---------------------------------------------------------------------------
// Plots

struct SeriesPoint {
  double x, y, lo, hi;
};

struct Series {
  std::string label;
  std::vector<SeriesPoint> points;
};

namespace detail {

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

}  // namespace detail

/// Line plot with axes, ticks, legend, and optional min/max whiskers.
inline std::string svg_line_plot(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                                 const std::vector<Series>& series, bool whiskers = false) {
  constexpr double W = 640, H = 420, L = 70, R = 170, T = 40, B = 50;
  double xmin = 1e300, xmax = -1e300, ymin = 0, ymax = -1e300;
  for (const auto& s : series)
    for (const auto& p : s.points) {
      xmin = std::min(xmin, p.x);
      xmax = std::max(xmax, p.x);
      ymax = std::max(ymax, whiskers ? p.hi : p.y);
    }
  if (xmin > xmax) xmin = 0, xmax = 1;
  if (xmax == xmin) xmax = xmin + 1;
  if (ymax <= ymin) ymax = ymin + 1;
  auto sx = [&](double x) { return L + (x - xmin) / (xmax - xmin) * (W - L - R); };
  auto sy = [&](double y) { return H - B - (y - ymin) / (ymax - ymin) * (H - T - B); };
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#17becf"};

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
     << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << title << "</text>\n";
  os << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
     << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double xv = xmin + (xmax - xmin) * t / 4, yv = ymin + (ymax - ymin) * t / 4;
    os << "<text x=\"" << sx(xv) << "\" y=\"" << H - B + 16 << "\" text-anchor=\"middle\">" << detail::fmt(xv)
       << "</text>\n";
    os << "<text x=\"" << L - 6 << "\" y=\"" << sy(yv) + 4 << "\" text-anchor=\"end\">" << detail::fmt(yv)
       << "</text>\n";
  }
  os << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\">" << xlabel
     << "</text>\n";
  os << "<text x=\"16\" y=\"" << (T + H - B) / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
     << (T + H - B) / 2 << ")\">" << ylabel << "</text>\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    const char* col = colors[k % 7];
    os << "<polyline fill=\"none\" stroke=\"" << col << "\" stroke-width=\"2\" points=\"";
    for (const auto& p : series[k].points) os << sx(p.x) << "," << sy(p.y) << " ";
    os << "\"/>\n";
    for (const auto& p : series[k].points) {
      os << "<circle cx=\"" << sx(p.x) << "\" cy=\"" << sy(p.y) << "\" r=\"3\" fill=\"" << col << "\"/>\n";
      if (whiskers)
        os << "<line x1=\"" << sx(p.x) << "\" y1=\"" << sy(p.lo) << "\" x2=\"" << sx(p.x) << "\" y2=\"" << sy(p.hi)
           << "\" stroke=\"" << col << "\"/>\n";
    }
    os << "<text x=\"" << W - R + 12 << "\" y=\"" << T + 16 * (k + 1) << "\" fill=\"" << col << "\">"
       << series[k].label << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

struct BenchPlots {
  std::string time, success, mrb;
};

/// One series per (solver, rho): mean time of finished runs, success rate,
/// and mean MRB with min/max whiskers, all against n.
inline BenchPlots bench_plots(const std::vector<BenchRow>& rows) {
  struct Acc {
    int runs = 0, solved = 0;
    double ms = 0, mrb = 0, lo = 1e300, hi = -1e300;
  };
  std::map<std::pair<std::string, double>, std::map<int, Acc>> cells;
  std::vector<std::pair<std::string, double>> keys;
  for (const auto& r : rows) {
    const auto key = std::make_pair(r.solver, r.rho);
    if (!cells.count(key)) keys.push_back(key);
    Acc& a = cells[key][r.n];
    ++a.runs;
    if (r.mrb) {
      ++a.solved;
      a.ms += r.ms;
      a.mrb += *r.mrb;
      a.lo = std::min<double>(a.lo, *r.mrb);
      a.hi = std::max<double>(a.hi, *r.mrb);
    }
  }
  std::vector<Series> time, success, mrb;
  for (const auto& key : keys) {
    const std::string label = key.first + " rho=" + detail::fmt(key.second);
    Series st{label, {}}, ss{label, {}}, sm{label, {}};
    for (const auto& [n, a] : cells[key]) {
      ss.points.push_back({double(n), double(a.solved) / a.runs, 0, 0});
      if (a.solved == 0) continue;
      st.points.push_back({double(n), a.ms / a.solved, 0, 0});
      sm.points.push_back({double(n), a.mrb / a.solved, a.lo, a.hi});
    }
    time.push_back(std::move(st));
    success.push_back(std::move(ss));
    mrb.push_back(std::move(sm));
  }
  return {svg_line_plot("Mean computation time", "n", "ms", time),
          svg_line_plot("Success rate", "n", "fraction solved", success),
          svg_line_plot("MRB size (mean, min-max)", "n", "MRB", mrb, true)};
}

}  // namespace mrb
