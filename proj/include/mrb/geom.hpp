#pragma once

// Geometric instance model: uniform discs in a rectangular workspace,
// the overlap predicate that induces dependencies, object density, and a
// seeded random instance generator.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "mrb/error.hpp"

namespace mrb {

struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

inline double distance(Point p, Point q) { return std::hypot(p.x - q.x, p.y - q.y); }

struct Workspace {
  double width = 1.0;
  double height = 1.0;
  friend bool operator==(const Workspace&, const Workspace&) = default;
};

/// A set of disc centers of common radius inside a workspace (A1 or A2).
struct Arrangement {
  double radius = 1.0;
  std::vector<Point> poses;
  Workspace workspace;
  friend bool operator==(const Arrangement&, const Arrangement&) = default;
};

enum class Kind { Labeled, Unlabeled };

inline const char* to_string(Kind k) { return k == Kind::Labeled ? "labeled" : "unlabeled"; }

inline Kind kind_from_string(const std::string& s) {
  if (s == "labeled") return Kind::Labeled;
  if (s == "unlabeled") return Kind::Unlabeled;
  throw InputError("unknown instance kind '" + s + "'");
}

/// Start and goal arrangements. For labeled instances labels[i] is the goal
/// index of the object that starts at start.poses[i] (0-based).
struct GeomInstance {
  Arrangement start;
  Arrangement goal;
  Kind kind = Kind::Unlabeled;
  std::optional<std::vector<int>> labels;

  int size() const { return static_cast<int>(start.poses.size()); }
  double radius() const { return start.radius; }
  friend bool operator==(const GeomInstance&, const GeomInstance&) = default;
};

/// Default overlap tolerance for discs of radius r: tangency never counts.
inline double default_tolerance(double r) { return 1e-9 * r; }

/// True iff the two discs of radius r centered at p and q intersect
/// non-trivially: dist(p, q) < 2r - tol.
inline bool overlaps(Point p, Point q, double r, double tol) {
  return distance(p, q) < 2.0 * r - tol;
}

inline bool overlaps(Point p, Point q, double r) { return overlaps(p, q, r, default_tolerance(r)); }

/// Fraction of the workspace covered by object footprints, n*pi*r^2/(w*h).
inline double density(int n, double r, const Workspace& ws) {
  return n * std::numbers::pi * r * r / (ws.width * ws.height);
}

inline double density(const GeomInstance& inst) {
  return density(inst.size(), inst.radius(), inst.start.workspace);
}

/// Returns a description of the first violated arrangement invariant.
inline std::optional<std::string> check_arrangement(const Arrangement& a) {
  const double r = a.radius;
  const double tol = default_tolerance(r);
  if (!(r > 0)) return "radius must be positive";
  if (!(a.workspace.width > 0 && a.workspace.height > 0)) return "workspace must have positive extent";
  for (std::size_t i = 0; i < a.poses.size(); ++i) {
    const Point p = a.poses[i];
    if (p.x < r - tol || p.x > a.workspace.width - r + tol || p.y < r - tol ||
        p.y > a.workspace.height - r + tol)
      return "disc " + std::to_string(i) + " leaves the workspace";
  }
  for (std::size_t i = 0; i < a.poses.size(); ++i)
    for (std::size_t j = i + 1; j < a.poses.size(); ++j)
      if (distance(a.poses[i], a.poses[j]) < 2 * r - tol)
        return "discs " + std::to_string(i) + " and " + std::to_string(j) + " overlap";
  return std::nullopt;
}

inline std::optional<std::string> check_instance(const GeomInstance& inst) {
  if (inst.start.poses.size() != inst.goal.poses.size()) return "start and goal sizes differ";
  if (inst.start.radius != inst.goal.radius) return "start and goal radii differ";
  if (!(inst.start.workspace == inst.goal.workspace)) return "start and goal workspaces differ";
  if (auto e = check_arrangement(inst.start)) return "start: " + *e;
  if (auto e = check_arrangement(inst.goal)) return "goal: " + *e;
  if (inst.kind == Kind::Labeled) {
    if (!inst.labels) return "labeled instance without labels";
    const int n = inst.size();
    if (static_cast<int>(inst.labels->size()) != n) return "labels size differs from n";
    std::vector<char> seen(n, 0);
    for (int l : *inst.labels) {
      if (l < 0 || l >= n || seen[l]) return "labels are not a permutation";
      seen[l] = 1;
    }
  } else if (inst.labels) {
    return "unlabeled instance carries labels";
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Random generation

/// Portable draws on top of mt19937_64 (the std distributions are not
/// specified bit-for-bit across standard libraries).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  // Uniform integer in [0, bound).
  std::uint64_t index(std::uint64_t bound) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(engine_()) * bound) >> 64);
  }
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[index(i)]);
  }
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

struct GenOptions {
  int attempts_per_disc = 2000;
  // Compaction fallback: throw darts at fallback_ratio * rho, then shrink the
  // workspace by `contraction` per round while relaxing overlaps.
  double fallback_ratio = 0.8;
  double contraction = 0.99;
  int max_rounds = 200;
  int relax_sweeps = 60;
};

namespace detail {

// Uniform hash grid over disc centers with cell size 2r.
class DiscGrid {
 public:
  DiscGrid(double cell) : cell_(cell) {}

  void clear() { cells_.clear(); }
  void insert(int id, Point p) { cells_[key(cell_of(p.x), cell_of(p.y))].push_back(id); }

  template <typename F>
  void for_neighbors(Point p, F&& f) const {
    const long cx = cell_of(p.x), cy = cell_of(p.y);
    for (long dx = -1; dx <= 1; ++dx)
      for (long dy = -1; dy <= 1; ++dy) {
        auto it = cells_.find(key(cx + dx, cy + dy));
        if (it == cells_.end()) continue;
        for (int id : it->second) f(id);
      }
  }

 private:
  long cell_of(double v) const { return static_cast<long>(std::floor(v / cell_)); }
  static std::uint64_t key(long x, long y) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(x)) << 32) |
           static_cast<std::uint32_t>(y);
  }
  double cell_;
  std::unordered_map<std::uint64_t, std::vector<int>> cells_;
};

// Random sequential placement; returns nullopt if some disc cannot be placed.
inline std::optional<std::vector<Point>> dart_throw(int n, double side, double r, Rng& rng,
                                                     const GenOptions& opt) {
  std::vector<Point> pts;
  pts.reserve(n);
  DiscGrid grid(2 * r);
  for (int i = 0; i < n; ++i) {
    bool placed = false;
    for (int attempt = 0; attempt < opt.attempts_per_disc && !placed; ++attempt) {
      Point p{rng.uniform(r, side - r), rng.uniform(r, side - r)};
      bool ok = true;
      grid.for_neighbors(p, [&](int j) {
        if (ok && distance(p, pts[j]) < 2 * r) ok = false;
      });
      if (ok) {
        grid.insert(i, p);
        pts.push_back(p);
        placed = true;
      }
    }
    if (!placed) return std::nullopt;
  }
  return pts;
}

// Pushes overlapping pairs apart; returns true once no pair is closer than 2r.
inline bool relax(std::vector<Point>& pts, double side, double r, Rng& rng, int sweeps) {
  const double target = 2 * r * (1 + 1e-9);
  const int n = static_cast<int>(pts.size());
  DiscGrid grid(2 * r);
  for (int s = 0; s < sweeps; ++s) {
    grid.clear();
    for (int i = 0; i < n; ++i) grid.insert(i, pts[i]);
    bool any = false;
    for (int i = 0; i < n; ++i) {
      grid.for_neighbors(pts[i], [&](int j) {
        if (j <= i) return;
        double dx = pts[j].x - pts[i].x, dy = pts[j].y - pts[i].y;
        double d = std::hypot(dx, dy);
        if (d >= 2 * r) return;
        any = true;
        if (d < 1e-12) {
          const double a = rng.uniform(0, 2 * std::numbers::pi);
          dx = std::cos(a);
          dy = std::sin(a);
          d = 1.0;
        } else {
          dx /= d;
          dy /= d;
        }
        // jitter keeps symmetric jams from oscillating
        const double push = (target - std::min(d, target)) / 2 * (1.0 + 0.05 * rng.uniform01());
        pts[i].x -= dx * push;
        pts[i].y -= dy * push;
        pts[j].x += dx * push;
        pts[j].y += dy * push;
      });
    }
    for (auto& p : pts) {
      p.x = std::clamp(p.x, r, side - r);
      p.y = std::clamp(p.y, r, side - r);
    }
    if (!any) return true;
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (distance(pts[i], pts[j]) < 2 * r) return false;
  return true;
}

inline std::vector<Point> sample_arrangement(int n, double side, double r, Rng& rng,
                                             const GenOptions& opt) {
  if (auto direct = dart_throw(n, side, r, rng, opt)) return *direct;

  // small jammed cases may need several relaxation steps before darts fit
  double cur = side / std::sqrt(opt.fallback_ratio);
  auto loose = dart_throw(n, cur, r, rng, opt);
  for (int widen = 0; !loose && widen < 8; ++widen) {
    cur /= std::sqrt(opt.fallback_ratio);
    loose = dart_throw(n, cur, r, rng, opt);
  }
  if (!loose) throw GenerationFailure("dart throwing failed even at the relaxed density");
  std::vector<Point> pts = std::move(*loose);
  for (int round = 0; round < opt.max_rounds; ++round) {
    if (cur > side) {
      const double next = std::max(side, cur * opt.contraction);
      const double scale = (next - 2 * r) / (cur - 2 * r);
      for (auto& p : pts) {
        p.x = r + (p.x - r) * scale;
        p.y = r + (p.y - r) * scale;
      }
      cur = next;
    }
    const bool clean = relax(pts, cur, r, rng, opt.relax_sweeps);
    if (clean && cur <= side) return pts;
  }
  throw GenerationFailure("compaction did not converge within " + std::to_string(opt.max_rounds) +
                          " rounds");
}

}  // namespace detail

/// Random instance with r = 1 and a square workspace sized so that the
/// density equals rho. Start and goal are sampled independently; labeled
/// instances get a uniformly random label permutation. Pure in (args, seed).
inline GeomInstance gen_random(int n, double rho, Kind kind, std::uint64_t seed,
                               const GenOptions& opt = {}) {
  if (n < 1) throw InputError("gen_random: n must be >= 1");
  if (!(rho > 0 && rho < 0.7)) throw InputError("gen_random: rho must lie in (0, 0.7)");
  const double r = 1.0;
  const double side = std::sqrt(n * std::numbers::pi / rho);
  Rng rng(seed);

  GeomInstance inst;
  inst.kind = kind;
  const Workspace ws{side, side};
  inst.start = Arrangement{r, detail::sample_arrangement(n, side, r, rng, opt), ws};
  inst.goal = Arrangement{r, detail::sample_arrangement(n, side, r, rng, opt), ws};
  if (kind == Kind::Labeled) {
    std::vector<int> labels(n);
    for (int i = 0; i < n; ++i) labels[i] = i;
    rng.shuffle(labels);
    inst.labels = std::move(labels);
  }
  return inst;
}

}  // namespace mrb
