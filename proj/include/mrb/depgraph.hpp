#pragma once

// Labeled (directed) and unlabeled (bipartite) dependency graphs, their
// construction from disc instances, and structural diagnostics.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mrb/error.hpp"
#include "mrb/geom.hpp"

namespace mrb {

using IndexPair = std::pair<int, int>;

namespace detail {
inline void sort_unique(std::vector<IndexPair>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}
}  // namespace detail

/// Simple undirected graph; edges are stored as (min, max) pairs.
struct UndirectedGraph {
  int n = 0;
  std::vector<IndexPair> edges;

  UndirectedGraph() = default;
  UndirectedGraph(int n_, std::vector<IndexPair> e) : n(n_), edges(std::move(e)) {
    for (auto& [a, b] : edges) {
      if (a == b || a < 0 || b < 0 || a >= n || b >= n)
        throw InputError("undirected graph: bad edge");
      if (a > b) std::swap(a, b);
    }
    detail::sort_unique(edges);
  }

  std::vector<std::vector<int>> adjacency() const {
    std::vector<std::vector<int>> adj(n);
    for (auto [a, b] : edges) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    return adj;
  }
};

/// Directed dependency graph: arc (i, j) means object i depends on object j,
/// i.e. the goal of i overlaps the start of j.
class LabeledDepGraph {
 public:
  static constexpr int kMaskLimit = 64;

  LabeledDepGraph() = default;
  LabeledDepGraph(int n, std::vector<IndexPair> arcs) : n_(n), arcs_(std::move(arcs)) {
    if (n < 0) throw InputError("labeled graph: negative size");
    for (auto [i, j] : arcs_) {
      if (i < 0 || j < 0 || i >= n || j >= n) throw InputError("labeled graph: arc index out of range");
      if (i == j) throw InputError("labeled graph: self-arc " + std::to_string(i));
    }
    detail::sort_unique(arcs_);
    out_.assign(n, {});
    in_.assign(n, {});
    for (auto [i, j] : arcs_) {
      out_[i].push_back(j);
      in_[j].push_back(i);
    }
    if (n <= kMaskLimit) {
      out_mask_.assign(n, 0);
      for (auto [i, j] : arcs_) out_mask_[i] |= std::uint64_t{1} << j;
    }
  }

  int size() const { return n_; }
  const std::vector<IndexPair>& arcs() const { return arcs_; }
  const std::vector<int>& out(int i) const { return out_[i]; }
  const std::vector<int>& in(int i) const { return in_[i]; }
  bool has_arc(int i, int j) const { return std::binary_search(out_[i].begin(), out_[i].end(), j); }

  // Bitset adjacency is only materialized for n <= 64.
  bool has_masks() const { return n_ <= kMaskLimit; }
  std::uint64_t out_mask(int i) const { return out_mask_[i]; }

  friend bool operator==(const LabeledDepGraph& a, const LabeledDepGraph& b) {
    return a.n_ == b.n_ && a.arcs_ == b.arcs_;
  }

 private:
  int n_ = 0;
  std::vector<IndexPair> arcs_;
  std::vector<std::vector<int>> out_, in_;
  std::vector<std::uint64_t> out_mask_;
};

/// Disc centers behind an unlabeled graph (used by the geometric separator).
struct Embedding {
  double radius = 1.0;
  std::vector<Point> starts;
  std::vector<Point> goals;
};

/// Bipartite dependency graph between start vertices and goal vertices.
/// Edge (s, g) means the disc at start s overlaps the disc at goal g.
class UnlabeledDepGraph {
 public:
  UnlabeledDepGraph() = default;
  UnlabeledDepGraph(int num_starts, int num_goals, std::vector<IndexPair> edges,
                    std::optional<Embedding> embedding = std::nullopt)
      : ns_(num_starts), ng_(num_goals), edges_(std::move(edges)), embedding_(std::move(embedding)) {
    for (auto [s, g] : edges_)
      if (s < 0 || g < 0 || s >= ns_ || g >= ng_) throw InputError("unlabeled graph: edge index out of range");
    detail::sort_unique(edges_);
    start_adj_.assign(ns_, {});
    goal_adj_.assign(ng_, {});
    for (auto [s, g] : edges_) {
      start_adj_[s].push_back(g);
      goal_adj_[g].push_back(s);
    }
    for (auto& a : goal_adj_) std::sort(a.begin(), a.end());
    if (embedding_ && (static_cast<int>(embedding_->starts.size()) != ns_ ||
                       static_cast<int>(embedding_->goals.size()) != ng_))
      throw InputError("unlabeled graph: embedding size mismatch");
  }

  UnlabeledDepGraph(int n, std::vector<IndexPair> edges, std::optional<Embedding> embedding = std::nullopt)
      : UnlabeledDepGraph(n, n, std::move(edges), std::move(embedding)) {}

  int num_starts() const { return ns_; }
  int num_goals() const { return ng_; }
  bool balanced() const { return ns_ == ng_; }
  // Number of objects; only meaningful for balanced graphs.
  int size() const { return ns_; }

  const std::vector<IndexPair>& edges() const { return edges_; }
  const std::vector<int>& start_adj(int s) const { return start_adj_[s]; }
  const std::vector<int>& goal_adj(int g) const { return goal_adj_[g]; }
  const std::optional<Embedding>& embedding() const { return embedding_; }

  friend bool operator==(const UnlabeledDepGraph& a, const UnlabeledDepGraph& b) {
    return a.ns_ == b.ns_ && a.ng_ == b.ng_ && a.edges_ == b.edges_;
  }

 private:
  int ns_ = 0, ng_ = 0;
  std::vector<IndexPair> edges_;
  std::vector<std::vector<int>> start_adj_, goal_adj_;
  std::optional<Embedding> embedding_;
};

// ---------------------------------------------------------------------------
// Construction from geometry

namespace detail {
// All (a, b) with overlaps(as[a], bs[b]); grid-accelerated.
inline std::vector<IndexPair> overlapping_pairs(const std::vector<Point>& as,
                                                const std::vector<Point>& bs, double r) {
  std::vector<IndexPair> out;
  DiscGrid grid(2 * r);
  for (int j = 0; j < static_cast<int>(bs.size()); ++j) grid.insert(j, bs[j]);
  const double tol = default_tolerance(r);
  for (int i = 0; i < static_cast<int>(as.size()); ++i)
    grid.for_neighbors(as[i], [&](int j) {
      if (overlaps(as[i], bs[j], r, tol)) out.emplace_back(i, j);
    });
  sort_unique(out);
  return out;
}
}  // namespace detail

/// Arc (i, j) iff the goal pose of object i overlaps the start pose of j, i != j.
inline LabeledDepGraph build_labeled(const GeomInstance& inst) {
  if (inst.kind != Kind::Labeled || !inst.labels) throw InputError("build_labeled needs a labeled instance");
  const int n = inst.size();
  const auto& labels = *inst.labels;
  std::vector<Point> goal_of_object(n);
  for (int i = 0; i < n; ++i) goal_of_object[i] = inst.goal.poses[labels[i]];
  std::vector<IndexPair> arcs;
  for (auto [i, j] : detail::overlapping_pairs(goal_of_object, inst.start.poses, inst.radius()))
    if (i != j) arcs.emplace_back(i, j);
  return LabeledDepGraph(n, std::move(arcs));
}

/// Edge (s, g) iff start pose s overlaps goal pose g. Carries the disc
/// centers as an embedding.
inline UnlabeledDepGraph build_unlabeled(const GeomInstance& inst) {
  auto edges = detail::overlapping_pairs(inst.start.poses, inst.goal.poses, inst.radius());
  Embedding emb{inst.radius(), inst.start.poses, inst.goal.poses};
  return UnlabeledDepGraph(inst.size(), inst.size(), std::move(edges), std::move(emb));
}

/// Replaces every undirected edge by two opposite arcs.
inline LabeledDepGraph bidirectionalize(const UndirectedGraph& g) {
  std::vector<IndexPair> arcs;
  arcs.reserve(2 * g.edges.size());
  for (auto [a, b] : g.edges) {
    arcs.emplace_back(a, b);
    arcs.emplace_back(b, a);
  }
  return LabeledDepGraph(g.n, std::move(arcs));
}

// ---------------------------------------------------------------------------
// Structure

/// Strongly connected components in Tarjan emission order: every component
/// appears after all components it has arcs into (dependencies first).
inline std::vector<std::vector<int>> strongly_connected_components(const LabeledDepGraph& g) {
  const int n = g.size();
  std::vector<int> index(n, -1), low(n, 0), stack;
  std::vector<char> on_stack(n, 0);
  std::vector<std::vector<int>> comps;
  int counter = 0;
  // explicit DFS stack of (vertex, next out-edge position)
  std::vector<std::pair<int, std::size_t>> dfs;
  for (int root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    dfs.emplace_back(root, 0);
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!dfs.empty()) {
      auto& [v, pos] = dfs.back();
      const auto& out = g.out(v);
      if (pos < out.size()) {
        const int w = out[pos++];
        if (index[w] == -1) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          dfs.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      const int done = v;
      dfs.pop_back();
      if (!dfs.empty()) low[dfs.back().first] = std::min(low[dfs.back().first], low[done]);
      if (low[done] == index[done]) {
        std::vector<int> comp;
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp.push_back(w);
        } while (w != done);
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
      }
    }
  }
  return comps;
}

/// Induced subgraph on `vertices` (sorted); vertex k of the result is vertices[k].
inline LabeledDepGraph induced_subgraph(const LabeledDepGraph& g, const std::vector<int>& vertices) {
  std::vector<int> pos(g.size(), -1);
  for (int k = 0; k < static_cast<int>(vertices.size()); ++k) pos[vertices[k]] = k;
  std::vector<IndexPair> arcs;
  for (int v : vertices)
    for (int w : g.out(v))
      if (pos[w] >= 0) arcs.emplace_back(pos[v], pos[w]);
  return LabeledDepGraph(static_cast<int>(vertices.size()), std::move(arcs));
}

struct GraphStats {
  int max_degree = 0;
  int num_sccs = 0;
  int largest_component = 0;
  bool is_acyclic = true;
};

namespace detail {
struct UnionFind {
  std::vector<int> parent, sz;
  explicit UnionFind(int n) : parent(n), sz(n, 1) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (sz[a] < sz[b]) std::swap(a, b);
    parent[b] = a;
    sz[a] += sz[b];
    return true;
  }
};
}  // namespace detail

/// Degree counts distinct neighbors regardless of direction; components are
/// weakly connected; acyclic means no arc lies on a directed cycle.
inline GraphStats stats(const LabeledDepGraph& g) {
  GraphStats st;
  const int n = g.size();
  for (int v = 0; v < n; ++v) {
    std::vector<int> nb = g.out(v);
    nb.insert(nb.end(), g.in(v).begin(), g.in(v).end());
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    st.max_degree = std::max<int>(st.max_degree, static_cast<int>(nb.size()));
  }
  const auto sccs = strongly_connected_components(g);
  st.num_sccs = static_cast<int>(sccs.size());
  st.is_acyclic = std::all_of(sccs.begin(), sccs.end(), [](const auto& c) { return c.size() == 1; });
  detail::UnionFind uf(n);
  for (auto [i, j] : g.arcs()) uf.unite(i, j);
  for (int v = 0; v < n; ++v) st.largest_component = std::max(st.largest_component, uf.sz[uf.find(v)]);
  return st;
}

/// For the bipartite graph an SCC is a connected component (edges are
/// symmetric); acyclic means the graph is a forest.
inline GraphStats stats(const UnlabeledDepGraph& g) {
  GraphStats st;
  const int ns = g.num_starts(), total = g.num_starts() + g.num_goals();
  for (int s = 0; s < g.num_starts(); ++s)
    st.max_degree = std::max<int>(st.max_degree, static_cast<int>(g.start_adj(s).size()));
  for (int q = 0; q < g.num_goals(); ++q)
    st.max_degree = std::max<int>(st.max_degree, static_cast<int>(g.goal_adj(q).size()));
  detail::UnionFind uf(total);
  bool cycle = false;
  for (auto [s, q] : g.edges())
    if (!uf.unite(s, ns + q)) cycle = true;
  for (int v = 0; v < total; ++v) {
    if (uf.find(v) == v) ++st.num_sccs;
    st.largest_component = std::max(st.largest_component, uf.sz[uf.find(v)]);
  }
  st.is_acyclic = !cycle;
  return st;
}

}  // namespace mrb
