#pragma once

// Plans as sequences of pick-n-place actions, and the simulators that turn
// a linear ordering (labeled) or a goal fill order (unlabeled) into a plan
// with its running-buffer profile.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mrb/depgraph.hpp"
#include "mrb/error.hpp"

namespace mrb {

enum class Spot : std::uint8_t { Start, Goal, Buffer };

/// Where an object is. `index` is the buffer slot for Buffer and the goal
/// index for Goal; unused for Start.
struct Location {
  Spot spot = Spot::Start;
  int index = -1;

  static Location start() { return {Spot::Start, -1}; }
  static Location goal(int g) { return {Spot::Goal, g}; }
  static Location buffer(int slot) { return {Spot::Buffer, slot}; }
  friend bool operator==(const Location&, const Location&) = default;
};

struct Action {
  int object = 0;
  Location from;
  Location to;
  friend bool operator==(const Action&, const Action&) = default;
};

struct Plan {
  int n = 0;
  bool labeled = true;
  std::vector<Action> actions;
  friend bool operator==(const Plan&, const Plan&) = default;
};

struct StepRecord {
  int occupancy = 0;       // buffer occupancy right after the action
  int transient_peak = 0;  // peak occupancy of the pick this action belongs to
};

struct ExecutionTrace {
  std::vector<StepRecord> profile;  // one record per action
  int max_rb = 0;
  int total_buffers = 0;
  std::vector<int> ordering;
};

struct Simulation {
  Plan plan;
  ExecutionTrace trace;
};

/// Transient counts an object parked in the buffer before the flush it
/// enables; Completion only looks at occupancy once a pick has settled.
enum class Occupancy { Transient, Completion };

inline void check_permutation(const std::vector<int>& phi, int n) {
  if (static_cast<int>(phi.size()) != n)
    throw InvalidPermutation("ordering has " + std::to_string(phi.size()) + " entries, expected " +
                             std::to_string(n));
  std::vector<char> seen(n, 0);
  for (int v : phi) {
    if (v < 0 || v >= n || seen[v]) throw InvalidPermutation("ordering is not a permutation of 0.." + std::to_string(n - 1));
    seen[v] = 1;
  }
}

namespace detail {
class SlotPool {
 public:
  int acquire() {
    if (!free_.empty()) {
      const int s = *free_.begin();
      free_.erase(free_.begin());
      return s;
    }
    return next_++;
  }
  void release(int s) { free_.insert(s); }

 private:
  std::set<int> free_;
  int next_ = 0;
};
}  // namespace detail

/// Picks objects in phi order; an object goes straight to its goal when all
/// of its dependencies have left their starts, otherwise to the buffer.
/// After every pick, buffered objects that became free are unloaded in
/// ascending index order.
inline Simulation simulate_labeled(const LabeledDepGraph& g, const std::vector<int>& phi,
                                   Occupancy mode = Occupancy::Transient) {
  const int n = g.size();
  check_permutation(phi, n);
  Simulation sim;
  sim.plan.n = n;
  sim.plan.labeled = true;
  sim.trace.ordering = phi;

  std::vector<int> pending(n);
  for (int o = 0; o < n; ++o) pending[o] = static_cast<int>(g.out(o).size());
  std::vector<int> slot(n, -1);
  detail::SlotPool pool;
  int occ = 0;

  for (int o : phi) {
    const std::size_t group_begin = sim.plan.actions.size();
    for (int x : g.in(o)) --pending[x];
    if (pending[o] == 0) {
      sim.plan.actions.push_back({o, Location::start(), Location::goal(o)});
    } else {
      slot[o] = pool.acquire();
      sim.plan.actions.push_back({o, Location::start(), Location::buffer(slot[o])});
      ++occ;
      ++sim.trace.total_buffers;
    }
    const int peak = occ;
    sim.trace.profile.push_back({occ, 0});

    std::vector<int> ready;
    for (int x : g.in(o))
      if (slot[x] >= 0 && pending[x] == 0) ready.push_back(x);
    std::sort(ready.begin(), ready.end());
    for (int x : ready) {
      sim.plan.actions.push_back({x, Location::buffer(slot[x]), Location::goal(x)});
      pool.release(slot[x]);
      slot[x] = -1;
      --occ;
      sim.trace.profile.push_back({occ, 0});
    }
    for (std::size_t k = group_begin; k < sim.trace.profile.size(); ++k) sim.trace.profile[k].transient_peak = peak;
    sim.trace.max_rb = std::max(sim.trace.max_rb, mode == Occupancy::Transient ? peak : occ);
  }
  return sim;
}

/// Running buffer of a goal fill order: max over prefixes V of
/// max(0, |N(V)| - |V|). Objects needed beyond N(V) are taken from starts
/// that must be cleared later anyway, so they never wait in the buffer.
inline int fill_order_rb(const UnlabeledDepGraph& g, const std::vector<int>& fill_order) {
  check_permutation(fill_order, g.num_goals());
  std::vector<char> in_n(g.num_starts(), 0);
  int n_count = 0, best = 0, t = 0;
  for (int goal : fill_order) {
    for (int s : g.goal_adj(goal))
      if (!in_n[s]) {
        in_n[s] = 1;
        ++n_count;
      }
    ++t;
    best = std::max(best, n_count - t);
  }
  return best;
}

/// Realizes a goal fill order as a plan whose occupancy after filling the
/// prefix V is max(0, |N(V)| - |V|). Blocking starts are cleared lazily; when
/// an extra object is needed it is drawn from a start that a later goal will
/// need cleared. The last start picked for a goal is handed over directly.
inline Simulation simulate_unlabeled(const UnlabeledDepGraph& g, const std::vector<int>& fill_order) {
  if (!g.balanced()) throw InputError("simulate_unlabeled: start and goal counts differ");
  const int n = g.num_goals();
  check_permutation(fill_order, n);

  // enter[s]: smallest prefix length t whose neighbourhood contains s
  constexpr int kNever = 1 << 30;
  std::vector<int> enter(n, kNever), n_size(n + 1, 0);
  for (int t = 1; t <= n; ++t) {
    n_size[t] = n_size[t - 1];
    for (int s : g.goal_adj(fill_order[t - 1]))
      if (enter[s] == kNever) {
        enter[s] = t;
        ++n_size[t];
      }
  }
  // Cleared sets C_t ⊇ N(V_t) with |C_t| = max(|N(V_t)|, t), nested, built
  // backwards from C_n = all starts. clear_step[s] is the step clearing s.
  std::vector<char> in_c(n, 1);
  std::vector<int> clear_step(n, n);
  for (int t = n - 1; t >= 0; --t) {
    int extras = std::max(n_size[t], t) - n_size[t];
    std::vector<char> next(n, 0);
    for (int s = 0; s < n; ++s) {
      if (!in_c[s]) continue;
      if (enter[s] <= t) {
        next[s] = 1;
      } else if (extras > 0) {
        next[s] = 1;
        --extras;
      }
    }
    for (int s = 0; s < n; ++s)
      if (in_c[s] && !next[s]) clear_step[s] = t + 1;
    in_c.swap(next);
  }

  Simulation sim;
  sim.plan.n = n;
  sim.plan.labeled = false;
  sim.trace.ordering = fill_order;
  detail::SlotPool pool;
  std::set<std::pair<int, int>> buffered;  // (object, slot)
  int occ = 0;
  for (int t = 1; t <= n; ++t) {
    const int goal = fill_order[t - 1];
    const std::size_t group_begin = sim.plan.actions.size();
    std::vector<int> fresh, blocking;
    for (int s = 0; s < n; ++s)
      if (clear_step[s] == t) (enter[s] <= t ? blocking : fresh).push_back(s);
    fresh.insert(fresh.end(), blocking.begin(), blocking.end());
    if (fresh.empty()) {
      auto it = buffered.begin();
      sim.plan.actions.push_back({it->first, Location::buffer(it->second), Location::goal(goal)});
      pool.release(it->second);
      buffered.erase(it);
      --occ;
      sim.trace.profile.push_back({occ, 0});
    } else {
      for (std::size_t k = 0; k + 1 < fresh.size(); ++k) {
        const int slot = pool.acquire();
        buffered.insert({fresh[k], slot});
        sim.plan.actions.push_back({fresh[k], Location::start(), Location::buffer(slot)});
        ++occ;
        ++sim.trace.total_buffers;
        sim.trace.profile.push_back({occ, 0});
      }
      sim.plan.actions.push_back({fresh.back(), Location::start(), Location::goal(goal)});
      sim.trace.profile.push_back({occ, 0});
    }
    int peak = 0;
    for (std::size_t k = group_begin; k < sim.trace.profile.size(); ++k)
      peak = std::max(peak, sim.trace.profile[k].occupancy);
    for (std::size_t k = group_begin; k < sim.trace.profile.size(); ++k) sim.trace.profile[k].transient_peak = peak;
    sim.trace.max_rb = std::max(sim.trace.max_rb, peak);
  }
  return sim;
}

/// max_i |{u : exists edge (u, v), pos(u) <= i < pos(v)}| for the ordering phi
/// (phi[k] is the vertex at rank k).
inline int vertex_separation(const UndirectedGraph& g, const std::vector<int>& phi) {
  check_permutation(phi, g.n);
  std::vector<int> pos(g.n), last(g.n);
  for (int k = 0; k < g.n; ++k) pos[phi[k]] = k;
  for (int v = 0; v < g.n; ++v) last[v] = pos[v];
  for (auto [a, b] : g.edges) {
    last[a] = std::max(last[a], pos[b]);
    last[b] = std::max(last[b], pos[a]);
  }
  // u is counted for every i in [pos(u), last(u))
  std::vector<int> diff(g.n + 1, 0);
  for (int u = 0; u < g.n; ++u)
    if (last[u] > pos[u]) {
      ++diff[pos[u]];
      --diff[last[u]];
    }
  int cur = 0, best = 0;
  for (int i = 0; i < g.n; ++i) {
    cur += diff[i];
    best = std::max(best, cur);
  }
  return best;
}

// ---------------------------------------------------------------------------
// Validation

struct Validation {
  bool ok = true;
  int action_index = -1;  // first offending action, -1 for end-of-plan problems
  std::string message;

  explicit operator bool() const { return ok; }
  static Validation pass() { return {}; }
  static Validation fail(int at, std::string why) { return {false, at, std::move(why)}; }
};

namespace detail {

// Shared bookkeeping for both plan kinds. `goal_ready(action, i)` decides
// whether the target goal may be filled.
template <typename GoalReady>
Validation replay(const Plan& plan, int n, int num_goals, GoalReady&& goal_ready) {
  if (plan.n != n) return Validation::fail(-1, "plan is for " + std::to_string(plan.n) + " objects, graph has " + std::to_string(n));
  std::vector<Location> where(n, Location::start());
  std::vector<char> left_start(n, 0), goal_filled(num_goals, 0);
  std::vector<int> slot_owner;
  for (int i = 0; i < static_cast<int>(plan.actions.size()); ++i) {
    const Action& a = plan.actions[i];
    if (a.object < 0 || a.object >= n) return Validation::fail(i, "object index out of range");
    if (!(a.from == where[a.object])) return Validation::fail(i, "object " + std::to_string(a.object) + " is not where the action picks it");
    if (a.from.spot == Spot::Goal) return Validation::fail(i, "objects never leave their goal");
    if (a.to.spot == Spot::Start) return Validation::fail(i, "objects never return to a start pose");
    if (a.from.spot == Spot::Buffer && a.to.spot == Spot::Buffer) return Validation::fail(i, "buffer-to-buffer move");
    if (a.from.spot == Spot::Start) left_start[a.object] = 1;
    if (a.to.spot == Spot::Buffer) {
      const int s = a.to.index;
      if (s < 0) return Validation::fail(i, "negative buffer slot");
      if (static_cast<int>(slot_owner.size()) <= s) slot_owner.resize(s + 1, -1);
      if (slot_owner[s] != -1) return Validation::fail(i, "buffer slot " + std::to_string(s) + " already occupied");
      slot_owner[s] = a.object;
    } else {
      const int gi = a.to.index;
      if (gi < 0 || gi >= num_goals) return Validation::fail(i, "goal index out of range");
      if (goal_filled[gi]) return Validation::fail(i, "goal " + std::to_string(gi) + " is already filled");
      if (auto why = goal_ready(a, left_start)) return Validation::fail(i, *why);
      goal_filled[gi] = 1;
    }
    if (a.from.spot == Spot::Buffer) slot_owner[a.from.index] = -1;
    where[a.object] = a.to;
  }
  for (int o = 0; o < n; ++o)
    if (where[o].spot != Spot::Goal) return Validation::fail(-1, "object " + std::to_string(o) + " never reaches Goal");
  for (int q = 0; q < num_goals; ++q)
    if (!goal_filled[q]) return Validation::fail(-1, "goal " + std::to_string(q) + " is never filled");
  return Validation::pass();
}

}  // namespace detail

/// Checks plan invariants and that no object is placed at its goal while an
/// object it depends on still sits at its start.
inline Validation validate(const Plan& plan, const LabeledDepGraph& g) {
  if (!plan.labeled) return Validation::fail(-1, "unlabeled plan checked against a labeled graph");
  return detail::replay(plan, g.size(), g.size(),
                        [&](const Action& a, const std::vector<char>& left) -> std::optional<std::string> {
                          if (a.to.index != a.object) return "object " + std::to_string(a.object) + " placed at a foreign goal";
                          for (int d : g.out(a.object))
                            if (!left[d])
                              return "object " + std::to_string(a.object) + " placed while " + std::to_string(d) + " is still at its start";
                          return std::nullopt;
                        });
}

/// Same for unlabeled plans: a goal may be filled only once every start
/// overlapping it has been cleared.
inline Validation validate(const Plan& plan, const UnlabeledDepGraph& g) {
  if (plan.labeled) return Validation::fail(-1, "labeled plan checked against an unlabeled graph");
  if (!g.balanced()) return Validation::fail(-1, "graph has unequal start and goal counts");
  return detail::replay(plan, g.num_starts(), g.num_goals(),
                        [&](const Action& a, const std::vector<char>& left) -> std::optional<std::string> {
                          for (int s : g.goal_adj(a.to.index))
                            if (!left[s])
                              return "goal " + std::to_string(a.to.index) + " filled while start " + std::to_string(s) + " is occupied";
                          return std::nullopt;
                        });
}

}  // namespace mrb
