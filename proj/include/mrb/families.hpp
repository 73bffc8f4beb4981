#pragma once

// Handcrafted instance families emitted directly as dependency graphs:
// stick instances (every start collides with every goal), dependency grids
// D(m, 2m), and the cyclic labeled construction on m^2 objects.

#include <cmath>
#include <cstdint>
#include <vector>

#include "mrb/depgraph.hpp"
#include "mrb/error.hpp"
#include "mrb/geom.hpp"

namespace mrb {

struct SticksInstance {
  LabeledDepGraph labeled;      // bidirectional K_n
  UnlabeledDepGraph unlabeled;  // K_{n,n}
};

inline SticksInstance gen_sticks(int n) {
  if (n < 1) throw InputError("gen_sticks: n must be >= 1");
  std::vector<IndexPair> arcs, edges;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      edges.emplace_back(i, j);
      if (i != j) arcs.emplace_back(i, j);
    }
  return {LabeledDepGraph(n, std::move(arcs)), UnlabeledDepGraph(n, std::move(edges))};
}

/// Vertex v_{x,y} of the dependency grid D(m, 2m), 1-based coordinates.
struct GridVertex {
  int x = 0, y = 0;
  bool is_start = false;
  int index = 0;  // index among starts or among goals
};

/// Lays out D(m, 2m) row by row (y outer, x inner). v_{1,1} is a start and
/// the parity of x + y selects the side.
inline std::vector<GridVertex> grid_vertices(int m) {
  std::vector<GridVertex> vs;
  int starts = 0, goals = 0;
  for (int y = 1; y <= 2 * m; ++y)
    for (int x = 1; x <= m; ++x) {
      const bool start = (x + y) % 2 == 0;
      vs.push_back({x, y, start, start ? starts++ : goals++});
    }
  return vs;
}

/// Radius that realizes the grid as uniform discs on the unit lattice:
/// orthogonal neighbours (distance 1) overlap, diagonal ones (sqrt 2) do not.
inline constexpr double kGridDiscRadius = 0.6;

/// The dependency grid D(m, 2m) with its lattice embedding.
inline UnlabeledDepGraph gen_grid(int m) {
  if (m < 1) throw InputError("gen_grid: m must be >= 1");
  const auto vs = grid_vertices(m);
  auto at = [&](int x, int y) -> const GridVertex& { return vs[(y - 1) * m + (x - 1)]; };
  std::vector<IndexPair> edges;
  Embedding emb;
  emb.radius = kGridDiscRadius;
  for (const auto& v : vs) {
    (v.is_start ? emb.starts : emb.goals).push_back(Point{double(v.x), double(v.y)});
    if (!v.is_start) continue;
    const int dx[] = {1, -1, 0, 0}, dy[] = {0, 0, 1, -1};
    for (int d = 0; d < 4; ++d) {
      const int x = v.x + dx[d], y = v.y + dy[d];
      if (x < 1 || x > m || y < 1 || y > 2 * m) continue;
      edges.emplace_back(v.index, at(x, y).index);
    }
  }
  const int n = m * m;
  return UnlabeledDepGraph(n, n, std::move(edges), std::move(emb));
}

/// D(m, 2m) disc geometry as an instance (labeled with a random bijection
/// when kind is Labeled).
inline GeomInstance grid_instance(int m, Kind kind, std::uint64_t seed = 0) {
  const auto g = gen_grid(m);
  const auto& emb = *g.embedding();
  // shift so every disc sits inside a workspace with a margin of r
  GeomInstance inst;
  const double r = emb.radius;
  const Workspace ws{m + 2 * r, 2 * m + 2 * r};
  auto shift = [&](std::vector<Point> ps) {
    for (auto& p : ps) {
      p.x += r - 1;
      p.y += r - 1;
    }
    return ps;
  };
  inst.start = Arrangement{r, shift(emb.starts), ws};
  inst.goal = Arrangement{r, shift(emb.goals), ws};
  inst.kind = kind;
  if (kind == Kind::Labeled) {
    std::vector<int> labels(m * m);
    for (int i = 0; i < m * m; ++i) labels[i] = i;
    Rng rng(seed);
    rng.shuffle(labels);
    inst.labels = std::move(labels);
  }
  return inst;
}

/// Labeled digraph on n = m^2 objects with arcs i -> (i-1 mod n) and
/// i -> (i+m mod n).
inline LabeledDepGraph gen_cycle(int n) {
  const int m = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
  if (n < 4 || m * m != n) throw NotPerfectSquare(n);
  std::vector<IndexPair> arcs;
  for (int i = 0; i < n; ++i) {
    arcs.emplace_back(i, (i - 1 + n) % n);
    arcs.emplace_back(i, (i + m) % n);
  }
  return LabeledDepGraph(n, std::move(arcs));
}

}  // namespace mrb
