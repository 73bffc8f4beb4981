#pragma once

#include <chrono>
#include <cstdint>
#include <vector>

#include "mrb/plan.hpp"

namespace mrb {

struct SolveStats {
  std::uint64_t nodes_expanded = 0;
  std::uint64_t states_stored = 0;
  double wall_ms = 0.0;
};

/// Minimum running buffer with a witness. For labeled graphs `ordering` is
/// the object pick order; for unlabeled graphs it is the goal fill order.
struct SolveResult {
  int mrb = 0;
  std::vector<int> ordering;
  Plan plan;
  ExecutionTrace trace;
  SolveStats stats;
};

namespace detail {

class Stopwatch {
 public:
  Stopwatch() : t0_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0_).count();
  }

 private:
  std::chrono::steady_clock::time_point t0_;
};

inline SolveResult finish(const LabeledDepGraph& g, std::vector<int> ordering, SolveStats stats,
                          Occupancy mode = Occupancy::Transient) {
  SolveResult r;
  auto sim = simulate_labeled(g, ordering, mode);
  r.mrb = sim.trace.max_rb;
  r.ordering = std::move(ordering);
  r.plan = std::move(sim.plan);
  r.trace = std::move(sim.trace);
  r.stats = stats;
  return r;
}

inline SolveResult finish(const UnlabeledDepGraph& g, std::vector<int> ordering, SolveStats stats) {
  SolveResult r;
  auto sim = simulate_unlabeled(g, ordering);
  r.mrb = sim.trace.max_rb;
  r.ordering = std::move(ordering);
  r.plan = std::move(sim.plan);
  r.trace = std::move(sim.trace);
  r.stats = stats;
  return r;
}

}  // namespace detail
}  // namespace mrb
