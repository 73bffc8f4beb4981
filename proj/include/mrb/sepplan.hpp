#pragma once

// Recursive separator-based planner for unlabeled instances. Each level
// clears the separator's starts and every start touching a separator goal,
// fills the separator goals, then recurses into the side with the larger
// goal surplus first. The result is a goal fill order realized by the
// unlabeled simulator, so the plan is always valid though not optimal.

#include <algorithm>
#include <climits>
#include <vector>

#include "mrb/depgraph.hpp"
#include "mrb/error.hpp"
#include "mrb/limits.hpp"
#include "mrb/separator.hpp"
#include "mrb/solve_result.hpp"

namespace mrb {

inline constexpr std::size_t kSepPlanBaseCase = 4;

namespace detail {

class SepPlanner {
 public:
  SepPlanner(const UnlabeledDepGraph& g, bool use_geometry, Deadline& deadline, SolveStats& stats)
      : ctx_(g), use_geometry_(use_geometry), deadline_(deadline), stats_(stats),
        cleared_(g.num_starts(), 0) {}

  std::vector<int> run() {
    std::vector<int> all(ctx_.num_starts() + ctx_.graph().num_goals());
    for (int v = 0; v < static_cast<int>(all.size()); ++v) all[v] = v;
    recurse(all, 0);
    return order_;
  }

 private:
  int goal_of(int v) const { return v - ctx_.num_starts(); }

  void fill(int goal) {
    order_.push_back(goal);
    for (int s : ctx_.graph().goal_adj(goal)) cleared_[s] = 1;
  }

  // Exhaustive fill order of the goals in w; starts outside w are already
  // cleared so only the local surplus matters.
  void base_case(const std::vector<int>& w) {
    std::vector<int> goals;
    for (int v : w)
      if (ctx_.is_goal(v)) goals.push_back(goal_of(v));
    std::vector<int> best = goals;
    int best_cost = INT_MAX;
    do {
      std::vector<char> seen(ctx_.num_starts(), 0);
      int newly = 0, cost = INT_MIN, t = 0;
      for (int q : goals) {
        for (int s : ctx_.graph().goal_adj(q))
          if (!cleared_[s] && !seen[s]) {
            seen[s] = 1;
            ++newly;
          }
        cost = std::max(cost, newly - ++t);
      }
      ++stats_.nodes_expanded;
      if (cost < best_cost) {
        best_cost = cost;
        best = goals;
      }
    } while (std::next_permutation(goals.begin(), goals.end()));
    for (int q : best) fill(q);
  }

  void recurse(const std::vector<int>& w, int depth) {
    deadline_.poll();
    if (std::none_of(w.begin(), w.end(), [&](int v) { return ctx_.is_goal(v); })) return;
    if (w.size() <= kSepPlanBaseCase) {
      base_case(w);
      return;
    }
    const SeparatorSplit split = separate(ctx_, w, use_geometry_, depth);
    ++stats_.nodes_expanded;

    std::vector<int> sep_goals;
    for (int v : split.c) {
      if (ctx_.is_goal(v))
        sep_goals.push_back(goal_of(v));
      else
        cleared_[v] = 1;
    }
    for (int q : sep_goals) fill(q);

    auto residual = [&](const std::vector<int>& side) {
      std::vector<int> out;
      for (int v : side)
        if (ctx_.is_goal(v) || !cleared_[v]) out.push_back(v);
      return out;
    };
    std::vector<int> a = residual(split.a), b = residual(split.b);
    if (a.size() == w.size() || b.size() == w.size()) {
      // no progress possible; fill what is left in index order
      for (int v : w)
        if (ctx_.is_goal(v)) fill(goal_of(v));
      return;
    }
    if (ctx_.delta(b) > ctx_.delta(a)) std::swap(a, b);
    recurse(a, depth + 1);
    recurse(b, depth + 1);
  }

  SeparatorContext ctx_;
  bool use_geometry_;
  Deadline& deadline_;
  SolveStats& stats_;
  std::vector<char> cleared_;
  std::vector<int> order_;
};

}  // namespace detail

/// Valid, not necessarily optimal, unlabeled plan from recursive separation.
/// Uses the disc-center strip separator when the graph carries an embedding
/// and use_geometry is set.
inline SolveResult solve_sepplan(const UnlabeledDepGraph& g, bool use_geometry = true, Deadline deadline = {}) {
  if (!g.balanced()) throw InputError("solve_sepplan: start and goal counts differ");
  detail::Stopwatch sw;
  SolveStats st;
  auto order = detail::SepPlanner(g, use_geometry, deadline, st).run();
  auto r = detail::finish(g, std::move(order), st);
  r.stats.wall_ms = sw.ms();
  return r;
}

}  // namespace mrb
