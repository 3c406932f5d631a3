#include "toro/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "toro/errors.hpp"
#include "toro/rng.hpp"

namespace toro {

using geometry::classify_contact;
using geometry::DiscContact;
using geometry::dist;

namespace {

constexpr int kAttemptsPerDisc = 20'000;
constexpr double kOverlapDensity = 0.3;

bool separate_from_all(const Point2& p, const std::vector<Point2>& others, double r) {
  return std::all_of(others.begin(), others.end(),
                     [&](const Point2& q) { return classify_contact(p, q, r) == DiscContact::separate; });
}

Point2 uniform_in(Rng& rng, const Rect& box) {
  const double x = rng.uniform_real(box.min_x, box.max_x);
  const double y = rng.uniform_real(box.min_y, box.max_y);
  return {x, y};
}

Rect shrink(const Rect& r, double by) { return {r.min_x + by, r.min_y + by, r.max_x - by, r.max_y - by}; }

void check_common(int n, const Rect& workspace, double radius) {
  if (n < 0) throw std::invalid_argument("object count must be non-negative");
  if (!(radius > 0.0)) throw std::invalid_argument("radius must be positive");
  if (workspace.width() < 2.0 * radius || workspace.height() < 2.0 * radius) {
    throw std::invalid_argument("workspace is smaller than one disc");
  }
}

/// Samples `count` discs separate from `existing` and from each other.
std::vector<Point2> sample_separate(Rng& rng, int count, const Rect& centers, double r, std::vector<Point2> existing) {
  std::vector<Point2> out;
  for (int k = 0; k < count; ++k) {
    bool placed = false;
    for (int attempt = 0; attempt < kAttemptsPerDisc && !placed; ++attempt) {
      const Point2 p = uniform_in(rng, centers);
      if (separate_from_all(p, existing, r)) {
        existing.push_back(p);
        out.push_back(p);
        placed = true;
      }
    }
    if (!placed) throw InfeasibleError("rejection sampling ran out of attempts placing disc " + std::to_string(k));
  }
  return out;
}

Instance empty_instance(const Rect& workspace, double radius) {
  Instance inst;
  inst.workspace = workspace;
  inst.start.radius = radius;
  inst.goal.radius = radius;
  inst.rest_start = {workspace.min_x, workspace.min_y};
  inst.rest_goal = {workspace.max_x, workspace.max_y};
  return inst;
}

}  // namespace

Instance gen_no_overlap(int n, std::uint64_t seed, const Rect& workspace, double radius) {
  check_common(n, workspace, radius);
  const double area = workspace.width() * workspace.height();
  if (2.0 * n * std::numbers::pi * radius * radius > 0.5 * area) {
    throw std::invalid_argument("2n discs do not fit in the workspace");
  }
  Rng rng(seed);
  Instance inst = empty_instance(workspace, radius);
  const auto pts = sample_separate(rng, 2 * n, shrink(workspace, radius), radius, {});
  inst.start.poses.assign(pts.begin(), pts.begin() + n);
  inst.goal.poses.assign(pts.begin() + n, pts.end());
  return inst;
}

DepGraph gen_dep_graph(int n, double avg_degree, int max_degree, std::uint64_t seed) {
  if (n < 0 || avg_degree < 0.0 || max_degree < 0) throw std::invalid_argument("negative graph parameter");
  const auto m = static_cast<long>(std::floor(avg_degree * n + 1e-9));
  if (m > static_cast<long>(n) * (n - 1)) throw std::invalid_argument("more arcs than ordered vertex pairs");
  if (2 * m > static_cast<long>(n) * max_degree) {
    throw std::invalid_argument("arc count exceeds what the degree cap allows");
  }
  Rng rng(seed);
  constexpr int kRestarts = 10'000;
  for (int attempt = 0; attempt < kRestarts; ++attempt) {
    std::vector<int> degree(static_cast<std::size_t>(n), 0);
    std::vector<std::vector<bool>> present(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n), false));
    std::vector<Arc> arcs;
    std::vector<Arc> open;
    while (static_cast<long>(arcs.size()) < m) {
      open.clear();
      for (int a = 0; a < n; ++a) {
        if (degree[static_cast<std::size_t>(a)] >= max_degree) continue;
        for (int b = 0; b < n; ++b) {
          if (a == b || degree[static_cast<std::size_t>(b)] >= max_degree) continue;
          if (present[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]) continue;
          open.emplace_back(a, b);
        }
      }
      if (open.empty()) break;
      const auto [a, b] = open[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(open.size()) - 1))];
      present[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = true;
      ++degree[static_cast<std::size_t>(a)];
      ++degree[static_cast<std::size_t>(b)];
      arcs.emplace_back(a, b);
    }
    if (static_cast<long>(arcs.size()) == m) return DepGraph::from_arcs(n, arcs);
  }
  throw InfeasibleError("degree-capped arc sampling kept reaching dead ends");
}

Instance gen_overlap(int n, std::uint64_t seed, double target_avg_degree, const Rect& workspace, double radius) {
  check_common(n, workspace, radius);
  if (target_avg_degree < 0.0) throw std::invalid_argument("target degree must be non-negative");
  const double area = workspace.width() * workspace.height();
  if (2.0 * n * std::numbers::pi * radius * radius > 0.5 * area) {
    throw std::invalid_argument("2n discs do not fit in the workspace");
  }
  Rng rng(seed);
  Instance inst = empty_instance(workspace, radius);
  const double r = radius;

  // Overlaps need starts packed densely enough for a goal to touch several;
  // a centered sub-square at fixed disc density keeps that scale-free.
  Rect region = workspace;
  if (target_avg_degree > 0.0 && n > 0) {
    const double side = std::sqrt(n * std::numbers::pi * r * r / kOverlapDensity) + 2.0 * r;
    const double cx = 0.5 * (workspace.min_x + workspace.max_x);
    const double cy = 0.5 * (workspace.min_y + workspace.max_y);
    const double hx = std::min(0.5 * side, 0.5 * workspace.width());
    const double hy = std::min(0.5 * side, 0.5 * workspace.height());
    region = {cx - hx, cy - hy, cx + hx, cy + hy};
  }
  const Rect centers = shrink(region, r);
  inst.start.poses = sample_separate(rng, n, centers, r, {});
  const auto& starts = inst.start.poses;

  auto overlaps_with = [&](const Point2& p, int self) {
    int k = 0;
    for (int j = 0; j < n; ++j) {
      if (j != self && geometry::discs_overlap(p, starts[static_cast<std::size_t>(j)], r)) ++k;
    }
    return k;
  };
  auto usable = [&](const Point2& p, int self) {
    return centers.contains(p) && classify_contact(p, starts[static_cast<std::size_t>(self)], r) == DiscContact::separate &&
           separate_from_all(p, inst.goal.poses, r);
  };

  constexpr int kMaxOverlaps = 3;
  constexpr int kAttemptsPerK = 400;
  long arcs = 0;
  for (int i = 0; i < n; ++i) {
    const long want = std::lround(target_avg_degree * (i + 1)) - arcs;
    const int k0 = static_cast<int>(std::clamp<long>(want, 0, kMaxOverlaps));
    std::vector<int> tries{k0};
    for (int d = 1; d <= kMaxOverlaps; ++d) {
      if (k0 - d >= 0) tries.push_back(k0 - d);
      if (k0 + d <= kMaxOverlaps) tries.push_back(k0 + d);
    }
    if (target_avg_degree == 0.0) tries.assign(1, 0);
    bool placed = false;
    for (int k : tries) {
      for (int attempt = 0; attempt < kAttemptsPerK && !placed; ++attempt) {
        Point2 p;
        if (k == 0 || n < 2) {
          p = uniform_in(rng, centers);
        } else {
          auto j = static_cast<int>(rng.uniform_int(0, n - 2));
          if (j >= i) ++j;
          const double angle = rng.uniform_real(0.0, 2.0 * std::numbers::pi);
          const double len = 2.0 * r * std::sqrt(rng.canonical());
          const auto& a = starts[static_cast<std::size_t>(j)];
          p = {a.x + len * std::cos(angle), a.y + len * std::sin(angle)};
        }
        if (!usable(p, i) || overlaps_with(p, i) != k) continue;
        inst.goal.poses.push_back(p);
        arcs += k;
        placed = true;
      }
      if (placed) break;
    }
    if (!placed) throw InfeasibleError("could not place goal " + std::to_string(i));
  }
  return inst;
}

Instance reduce_tsp_to_toro_no(std::span<const Point2> points, double epsilon) {
  if (points.empty()) throw std::invalid_argument("need at least the depot point");
  const auto n = static_cast<double>(points.size() - 1);
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (n > 0 && !(epsilon < 1.0 / (4.0 * n))) throw std::invalid_argument("epsilon must be below 1/(4n)");
  for (std::size_t a = 0; a < points.size(); ++a) {
    if (!geometry::is_finite(points[a])) throw std::invalid_argument("points must be finite");
    for (std::size_t b = a + 1; b < points.size(); ++b) {
      if (!(dist(points[a], points[b]) > 1.5 * epsilon)) {
        throw std::invalid_argument("points " + std::to_string(a) + " and " + std::to_string(b) + " are too close");
      }
    }
  }
  Instance inst;
  const double r = epsilon / 4.0;
  inst.start.radius = inst.goal.radius = r;
  inst.rest_start = inst.rest_goal = points[0];
  Rect box{points[0].x, points[0].y, points[0].x, points[0].y};
  for (std::size_t i = 1; i < points.size(); ++i) {
    const auto& p = points[i];
    inst.start.poses.push_back({p.x - epsilon / 2.0, p.y});
    inst.goal.poses.push_back({p.x + epsilon / 2.0, p.y});
    box = {std::min(box.min_x, p.x), std::min(box.min_y, p.y), std::max(box.max_x, p.x), std::max(box.max_y, p.y)};
  }
  inst.workspace = {box.min_x - epsilon, box.min_y - epsilon, box.max_x + epsilon, box.max_y + epsilon};
  return inst;
}

DepGraph arc_split_graph(const DepGraph& g) {
  const auto arcs = g.arcs();
  const int v = g.size();
  std::vector<Arc> split;
  for (std::size_t k = 0; k < arcs.size(); ++k) {
    const int mid = v + static_cast<int>(k);
    split.emplace_back(arcs[k].first, mid);
    split.emplace_back(mid, arcs[k].second);
  }
  return DepGraph::from_arcs(v + static_cast<int>(arcs.size()), split);
}

Instance reduce_fvs_to_toro(const DepGraph& g, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("radius must be positive");
  const int v = g.size();
  for (int u = 0; u < v; ++u) {
    if (g.in_degree(u) > 2 || g.out_degree(u) > 2) {
      throw std::invalid_argument("vertex " + std::to_string(u) + " has in- or out-degree above 2");
    }
  }
  if (v > 0 && sccs(g).size() != 1) throw std::invalid_argument("graph is not strongly connected");

  // Each vertex owns two far-apart clusters. Around its start sit the goals
  // of its incoming arc objects; around its goal sit the starts of its
  // outgoing arc objects. Cluster members are 1.2r from the center and 2.4r
  // from each other, so only the intended pairs overlap.
  const double r = radius;
  const double spacing = 10.0 * r;
  const int clusters = 2 * v;
  const int cols = std::max(1, static_cast<int>(std::ceil(std::sqrt(static_cast<double>(clusters)))));
  auto center = [&](int c) { return Point2{(c % cols) * spacing, (c / cols) * spacing}; };

  const auto arcs = g.arcs();
  const int n = v + static_cast<int>(arcs.size());
  Instance inst;
  inst.start.radius = inst.goal.radius = r;
  inst.start.poses.resize(static_cast<std::size_t>(n));
  inst.goal.poses.resize(static_cast<std::size_t>(n));
  std::vector<int> in_used(static_cast<std::size_t>(v), 0);
  std::vector<int> out_used(static_cast<std::size_t>(v), 0);
  for (int u = 0; u < v; ++u) {
    inst.start.poses[static_cast<std::size_t>(u)] = center(2 * u);
    inst.goal.poses[static_cast<std::size_t>(u)] = center(2 * u + 1);
  }
  auto satellite = [&](Point2 c, int slot) { return Point2{c.x + (slot == 0 ? -1.2 : 1.2) * r, c.y}; };
  for (std::size_t k = 0; k < arcs.size(); ++k) {
    const auto [from, to] = arcs[k];
    const auto obj = static_cast<std::size_t>(v) + k;
    inst.start.poses[obj] = satellite(center(2 * from + 1), out_used[static_cast<std::size_t>(from)]++);
    inst.goal.poses[obj] = satellite(center(2 * to), in_used[static_cast<std::size_t>(to)]++);
  }
  const int rows = (clusters + cols - 1) / cols;
  inst.workspace = {-spacing / 2, -spacing / 2, (cols - 0.5) * spacing, (std::max(rows, 1) - 0.5) * spacing};
  inst.rest_start = {inst.workspace.min_x, inst.workspace.min_y};
  inst.rest_goal = {inst.workspace.max_x, inst.workspace.max_y};

  if (!(build_dep_graph(inst) == arc_split_graph(g))) {
    throw std::logic_error("constructed instance does not realize the arc-split graph");
  }
  return inst;
}

}  // namespace toro
