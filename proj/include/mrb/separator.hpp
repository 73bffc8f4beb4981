#pragma once

// Vertex separators of the bipartite dependency graph. Vertices use combined
// ids: start s is s, goal q is num_starts + q.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "mrb/depgraph.hpp"

namespace mrb {

struct SeparatorSplit {
  std::vector<int> a, b, c;  // sorted combined ids
  int delta_a = 0, delta_b = 0;  // goals minus starts on each side
};

namespace detail {

class SeparatorContext {
 public:
  explicit SeparatorContext(const UnlabeledDepGraph& g) : g_(g), ns_(g.num_starts()), adj_(ns_ + g.num_goals()) {
    for (auto [s, q] : g.edges()) {
      adj_[s].push_back(ns_ + q);
      adj_[ns_ + q].push_back(s);
    }
  }

  int num_starts() const { return ns_; }
  bool is_goal(int v) const { return v >= ns_; }
  const std::vector<int>& adj(int v) const { return adj_[v]; }
  const UnlabeledDepGraph& graph() const { return g_; }

  int delta(const std::vector<int>& vs) const {
    int d = 0;
    for (int v : vs) d += is_goal(v) ? 1 : -1;
    return d;
  }

  std::optional<Point> center(int v) const {
    const auto& emb = g_.embedding();
    if (!emb) return std::nullopt;
    return is_goal(v) ? emb->goals[v - ns_] : emb->starts[v];
  }

  // Connected components of the subgraph induced by `w` (sorted), each sorted,
  // ordered by smallest member.
  std::vector<std::vector<int>> components(const std::vector<int>& w, const std::vector<char>& in_w) const {
    std::vector<char> seen(adj_.size(), 0);
    std::vector<std::vector<int>> out;
    for (int root : w) {
      if (seen[root]) continue;
      std::vector<int> comp{root};
      seen[root] = 1;
      for (std::size_t k = 0; k < comp.size(); ++k)
        for (int u : adj_[comp[k]])
          if (in_w[u] && !seen[u]) {
            seen[u] = 1;
            comp.push_back(u);
          }
      std::sort(comp.begin(), comp.end());
      out.push_back(std::move(comp));
    }
    return out;
  }

  std::vector<char> membership(const std::vector<int>& w) const {
    std::vector<char> in(adj_.size(), 0);
    for (int v : w) in[v] = 1;
    return in;
  }

 private:
  const UnlabeledDepGraph& g_;
  int ns_;
  std::vector<std::vector<int>> adj_;
};

inline int balance_limit(std::size_t w) { return static_cast<int>(2 * w / 3); }

inline SeparatorSplit make_split(const SeparatorContext& ctx, std::vector<int> a, std::vector<int> b,
                                 std::vector<int> c) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::sort(c.begin(), c.end());
  SeparatorSplit s{std::move(a), std::move(b), std::move(c), 0, 0};
  s.delta_a = ctx.delta(s.a);
  s.delta_b = ctx.delta(s.b);
  return s;
}

// Median strip along one axis: C holds vertices whose center lies within 2r
// of the median coordinate. Centers on different sides are more than 4r apart,
// so no edge crosses.
inline SeparatorSplit strip_split(const SeparatorContext& ctx, const std::vector<int>& w, int axis) {
  const double r = ctx.graph().embedding()->radius;
  auto coord = [&](int v) {
    const Point p = *ctx.center(v);
    return axis == 0 ? p.x : p.y;
  };
  std::vector<double> cs;
  for (int v : w) cs.push_back(coord(v));
  std::sort(cs.begin(), cs.end());
  const double med = cs[(cs.size() - 1) / 2];
  std::vector<int> a, b, c;
  for (int v : w) {
    const double x = coord(v);
    if (std::abs(x - med) <= 2 * r)
      c.push_back(v);
    else
      (x < med ? a : b).push_back(v);
  }
  return make_split(ctx, std::move(a), std::move(b), std::move(c));
}

inline bool balanced_split(const SeparatorSplit& s, std::size_t w) {
  const int lim = balance_limit(w);
  return static_cast<int>(s.a.size()) <= lim && static_cast<int>(s.b.size()) <= lim;
}

inline SeparatorSplit geometric_separator(const SeparatorContext& ctx, const std::vector<int>& w, int depth) {
  const int preferred = depth % 2;
  SeparatorSplit first = strip_split(ctx, w, preferred);
  SeparatorSplit second = strip_split(ctx, w, 1 - preferred);
  const bool b1 = balanced_split(first, w.size()), b2 = balanced_split(second, w.size());
  if (b1 != b2) return b1 ? first : second;
  return second.c.size() < first.c.size() ? second : first;
}

// Packs components into two sides, each at most `lim`, minimizing the larger
// side. Returns the side of each component (0 = A) or nullopt.
inline std::optional<std::vector<int>> pack_components(const std::vector<std::vector<int>>& comps, int lim) {
  const int k = static_cast<int>(comps.size());
  int total = 0;
  for (const auto& c : comps) total += static_cast<int>(c.size());
  std::optional<std::vector<int>> best;
  int best_max = lim + 1;
  for (std::uint32_t assign = 0; assign < (std::uint32_t{1} << k); ++assign) {
    int sa = 0;
    for (int i = 0; i < k; ++i)
      if (!((assign >> i) & 1U)) sa += static_cast<int>(comps[i].size());
    const int worst = std::max(sa, total - sa);
    if (worst < best_max) {
      best_max = worst;
      best.emplace(k);
      for (int i = 0; i < k; ++i) (*best)[i] = (assign >> i) & 1U;
    }
  }
  return best;
}

// Smallest C (then smallest larger side, then smallest mask) whose removal
// leaves components that pack into two sides of at most 2|W|/3.
inline SeparatorSplit exhaustive_separator(const SeparatorContext& ctx, const std::vector<int>& w) {
  const int m = static_cast<int>(w.size());
  const int lim = balance_limit(w.size());
  for (int size = 0; size <= m; ++size) {
    std::optional<SeparatorSplit> best;
    std::size_t best_max = 0;
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << m); ++mask) {
      if (std::popcount(mask) != size) continue;
      std::vector<int> rest, c;
      for (int i = 0; i < m; ++i) ((mask >> i) & 1U ? c : rest).push_back(w[i]);
      const auto comps = ctx.components(rest, ctx.membership(rest));
      const auto packing = pack_components(comps, lim);
      if (!packing) continue;
      std::vector<int> a, b;
      for (std::size_t i = 0; i < comps.size(); ++i)
        ((*packing)[i] ? b : a).insert(((*packing)[i] ? b : a).end(), comps[i].begin(), comps[i].end());
      const std::size_t worst = std::max(a.size(), b.size());
      if (!best || worst < best_max) {
        best_max = worst;
        best = make_split(ctx, std::move(a), std::move(b), std::move(c));
      }
    }
    if (best) return *best;
  }
  return make_split(ctx, {}, {}, w);
}

// BFS layering of the largest component from a pseudo-peripheral vertex; the
// separator is one layer. Other components go to the lighter side.
inline SeparatorSplit bfs_separator(const SeparatorContext& ctx, const std::vector<int>& w) {
  const auto in_w = ctx.membership(w);
  auto comps = ctx.components(w, in_w);
  std::stable_sort(comps.begin(), comps.end(), [](const auto& x, const auto& y) { return x.size() > y.size(); });
  const int lim = balance_limit(w.size());

  auto assign_rest = [&](std::vector<int>& a, std::vector<int>& b, std::size_t from) {
    for (std::size_t i = from; i < comps.size(); ++i) {
      auto& side = a.size() <= b.size() ? a : b;
      side.insert(side.end(), comps[i].begin(), comps[i].end());
    }
  };

  if (static_cast<int>(comps[0].size()) <= lim) {
    std::vector<int> a, b;
    assign_rest(a, b, 0);
    if (static_cast<int>(std::max(a.size(), b.size())) <= lim) return make_split(ctx, a, b, {});
  }

  const auto& big = comps[0];
  auto layers_from = [&](int root) {
    std::vector<std::vector<int>> layers{{root}};
    std::vector<char> seen(in_w.size(), 0);
    seen[root] = 1;
    while (true) {
      std::vector<int> next;
      for (int v : layers.back())
        for (int u : ctx.adj(v))
          if (in_w[u] && !seen[u]) {
            seen[u] = 1;
            next.push_back(u);
          }
      if (next.empty()) break;
      std::sort(next.begin(), next.end());
      layers.push_back(std::move(next));
    }
    return layers;
  };
  auto layers = layers_from(big.front());
  layers = layers_from(layers.back().front());

  std::vector<std::size_t> prefix{0};
  for (const auto& l : layers) prefix.push_back(prefix.back() + l.size());
  std::size_t pick = 0;
  bool pick_ok = false;
  std::size_t pick_size = 0, pick_worst = 0;
  for (std::size_t i = 0; i < layers.size(); ++i) {
    const std::size_t below = prefix[i], above = prefix.back() - prefix[i + 1];
    const std::size_t worst = std::max(below, above);
    const bool ok = static_cast<int>(worst) <= lim;
    const bool better = i == 0 || (ok && !pick_ok) ||
                        (ok == pick_ok && (ok ? layers[i].size() < pick_size : worst < pick_worst));
    if (better) {
      pick = i;
      pick_ok = ok;
      pick_size = layers[i].size();
      pick_worst = worst;
    }
  }
  std::vector<int> a, b, c = layers[pick];
  for (std::size_t i = 0; i < layers.size(); ++i) {
    if (i == pick) continue;
    auto& side = i < pick ? a : b;
    side.insert(side.end(), layers[i].begin(), layers[i].end());
  }
  assign_rest(a, b, 1);
  return make_split(ctx, std::move(a), std::move(b), std::move(c));
}

inline constexpr std::size_t kExhaustiveSeparatorLimit = 12;

inline SeparatorSplit separate(const SeparatorContext& ctx, const std::vector<int>& w, bool use_geometry,
                               int depth) {
  if (w.empty()) return {};
  if (use_geometry && ctx.graph().embedding()) {
    auto s = geometric_separator(ctx, w, depth);
    if (!s.a.empty() || !s.b.empty()) return s;
  }
  if (w.size() <= kExhaustiveSeparatorLimit) return exhaustive_separator(ctx, w);
  return bfs_separator(ctx, w);
}

}  // namespace detail

/// Splits the whole vertex set. With geometry, a median strip over disc
/// centers; otherwise exhaustive for at most 12 vertices, else BFS layers.
inline SeparatorSplit find_separator(const UnlabeledDepGraph& g, bool use_geometry = true) {
  detail::SeparatorContext ctx(g);
  std::vector<int> all(g.num_starts() + g.num_goals());
  for (int v = 0; v < static_cast<int>(all.size()); ++v) all[v] = v;
  return detail::separate(ctx, all, use_geometry, 0);
}

}  // namespace mrb
