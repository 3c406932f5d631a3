#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

namespace toro::oracle {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double d(const Point2& a, const Point2& b) { return std::sqrt((a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y)); }

bool collide(const Point2& a, const Point2& b, double r) { return d(a, b) < 2.0 * r - 1e-9; }

/// Minimum-cost perfect assignment of rows to columns (Hungarian method).
double assignment(const std::vector<std::vector<double>>& cost) {
  const int n = static_cast<int>(cost.size());
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, kInf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const int i0 = p[j0];
      double delta = kInf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  double total = 0.0;
  for (int j = 1; j <= n; ++j) total += cost[p[j] - 1][j - 1];
  return total;
}

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

double labeled_tour_distance(const Instance& inst) {
  std::vector<int> order;
  for (int i = 0; i < inst.size(); ++i) {
    if (!(d(inst.start_of(i), inst.goal_of(i)) <= 1e-9)) order.push_back(i);
  }
  double best = kInf;
  do {
    Point2 hand = inst.rest_start;
    double total = 0.0;
    for (int i : order) {
      total += d(hand, inst.start_of(i)) + d(inst.start_of(i), inst.goal_of(i));
      hand = inst.goal_of(i);
    }
    total += d(hand, inst.rest_goal);
    best = std::min(best, total);
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

double unlabeled_tour_distance(const Instance& inst) {
  const int n = inst.size();
  if (n == 0) return d(inst.rest_start, inst.rest_goal);
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  double best = kInf;
  std::vector<std::vector<double>> cost(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n)));
  do {
    // Slot k's goal sits between start order[k] and the next start (or g_M).
    double fixed = d(inst.rest_start, inst.start_of(order[0]));
    for (int k = 0; k < n; ++k) {
      const Point2& from = inst.start_of(order[static_cast<std::size_t>(k)]);
      const Point2& to = k + 1 < n ? inst.start_of(order[static_cast<std::size_t>(k + 1)]) : inst.rest_goal;
      for (int g = 0; g < n; ++g) {
        cost[static_cast<std::size_t>(k)][static_cast<std::size_t>(g)] = d(from, inst.goal_of(g)) + d(inst.goal_of(g), to);
      }
    }
    best = std::min(best, fixed + assignment(cost));
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

double order_distance(const TourGraph& g, const std::vector<std::pair<int, int>>& order) {
  Point2 hand = g.vertex(TourGraph::rest_start()).pos;
  double total = 0.0;
  for (const auto& [pick, place] : order) {
    total += d(hand, g.vertex(pick).pos) + d(g.vertex(pick).pos, g.vertex(place).pos);
    hand = g.vertex(place).pos;
  }
  return total + d(hand, g.vertex(TourGraph::rest_goal()).pos);
}

double euclidean_tsp(const std::vector<Point2>& points) {
  if (points.size() <= 1) return 0.0;
  std::vector<int> order(points.size() - 1);
  std::iota(order.begin(), order.end(), 1);
  double best = kInf;
  do {
    double total = d(points[0], points[static_cast<std::size_t>(order.front())]);
    for (std::size_t k = 0; k + 1 < order.size(); ++k) {
      total += d(points[static_cast<std::size_t>(order[k])], points[static_cast<std::size_t>(order[k + 1])]);
    }
    total += d(points[static_cast<std::size_t>(order.back())], points[0]);
    best = std::min(best, total);
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

bool acyclic_without(int n, const std::vector<Arc>& arcs, const std::vector<int>& removed) {
  std::vector<bool> gone(static_cast<std::size_t>(n), false);
  for (int v : removed) gone[static_cast<std::size_t>(v)] = true;
  std::vector<int> indeg(static_cast<std::size_t>(n), 0);
  std::vector<std::vector<int>> out(static_cast<std::size_t>(n));
  for (const auto& [a, b] : arcs) {
    if (gone[static_cast<std::size_t>(a)] || gone[static_cast<std::size_t>(b)]) continue;
    out[static_cast<std::size_t>(a)].push_back(b);
    ++indeg[static_cast<std::size_t>(b)];
  }
  std::vector<int> ready;
  int alive = 0;
  for (int v = 0; v < n; ++v) {
    if (gone[static_cast<std::size_t>(v)]) continue;
    ++alive;
    if (indeg[static_cast<std::size_t>(v)] == 0) ready.push_back(v);
  }
  int seen = 0;
  while (!ready.empty()) {
    const int v = ready.back();
    ready.pop_back();
    ++seen;
    for (int w : out[static_cast<std::size_t>(v)]) {
      if (--indeg[static_cast<std::size_t>(w)] == 0) ready.push_back(w);
    }
  }
  return seen == alive;
}

std::vector<std::vector<int>> all_min_fvs(int n, const std::vector<Arc>& arcs) {
  for (int k = 0; k <= n; ++k) {
    std::vector<std::vector<int>> found;
    std::vector<bool> pick(static_cast<std::size_t>(n), false);
    std::fill(pick.begin(), pick.begin() + k, true);
    // prev_permutation over a true-first mask visits subsets in lex order.
    do {
      std::vector<int> set;
      for (int v = 0; v < n; ++v) {
        if (pick[static_cast<std::size_t>(v)]) set.push_back(v);
      }
      if (acyclic_without(n, arcs, set)) found.push_back(set);
    } while (std::prev_permutation(pick.begin(), pick.end()));
    if (!found.empty()) {
      std::sort(found.begin(), found.end());
      return found;
    }
  }
  return {};
}

int min_fvs_size(int n, const std::vector<Arc>& arcs) {
  for (int k = 0; k <= n; ++k) {
    std::vector<bool> pick(static_cast<std::size_t>(n), false);
    std::fill(pick.begin(), pick.begin() + k, true);
    do {
      std::vector<int> set;
      for (int v = 0; v < n; ++v) {
        if (pick[static_cast<std::size_t>(v)]) set.push_back(v);
      }
      if (acyclic_without(n, arcs, set)) return k;
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return n;
}

std::vector<Arc> dependency_arcs(const Instance& inst) {
  std::vector<Arc> arcs;
  for (int i = 0; i < inst.size(); ++i) {
    for (int j = 0; j < inst.size(); ++j) {
      if (i != j && collide(inst.goal_of(i), inst.start_of(j), inst.radius())) arcs.emplace_back(i, j);
    }
  }
  return arcs;
}

std::optional<double> best_binary_objective(const bip::BinaryProgram& program) {
  const int k = program.variable_count();
  std::optional<double> best;
  std::vector<std::uint8_t> x(static_cast<std::size_t>(k), 0);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    for (int v = 0; v < k; ++v) x[static_cast<std::size_t>(v)] = (mask >> v) & 1;
    bool ok = true;
    for (const auto& c : program.constraints()) {
      double lhs = 0.0;
      for (const auto& t : c.terms) lhs += t.coef * x[static_cast<std::size_t>(t.var)];
      if (c.relation == bip::Relation::less_equal) ok = lhs <= c.rhs + 1e-9;
      if (c.relation == bip::Relation::greater_equal) ok = lhs >= c.rhs - 1e-9;
      if (c.relation == bip::Relation::equal) ok = std::abs(lhs - c.rhs) <= 1e-9;
      if (!ok) break;
    }
    if (!ok) continue;
    double value = program.objective_offset();
    for (int v = 0; v < k; ++v) value += program.objective(v) * x[static_cast<std::size_t>(v)];
    const bool better = !best || (program.sense() == bip::Sense::minimize ? value < *best : value > *best);
    if (better) best = value;
  }
  return best;
}

std::string simulate(const Plan& plan, const Instance& inst) {
  const int n = inst.size();
  std::vector<Point2> where(inst.start.poses);
  std::vector<bool> goal_used(static_cast<std::size_t>(n), false);
  const double r = inst.radius();
  for (std::size_t k = 0; k < plan.actions.size(); ++k) {
    const Action& a = plan.actions[k];
    std::ostringstream why;
    if (a.object < 0 || a.object >= n) {
      why << "action " << k << ": unknown object";
      return why.str();
    }
    const auto obj = static_cast<std::size_t>(a.object);
    if (d(where[obj], a.pick) > 1e-9) {
      why << "action " << k << ": object is not at the pick pose";
      return why.str();
    }
    for (int j = 0; j < n; ++j) {
      if (j != a.object && collide(where[static_cast<std::size_t>(j)], a.place, r)) {
        why << "action " << k << ": collision with object " << j;
        return why.str();
      }
    }
    where[obj] = a.place;
  }
  // Final arrangement: every object on a goal, all goals covered.
  for (int i = 0; i < n; ++i) {
    bool on_goal = false;
    for (int g = 0; g < n; ++g) {
      if (d(where[static_cast<std::size_t>(i)], inst.goal_of(g)) > 1e-9) continue;
      if (inst.labeled && g != i) continue;
      if (goal_used[static_cast<std::size_t>(g)]) continue;
      goal_used[static_cast<std::size_t>(g)] = true;
      on_goal = true;
      break;
    }
    if (!on_goal) return "object " + std::to_string(i) + " does not end on a goal";
  }
  return {};
}

double path_length(const Plan& plan, const Instance& inst) {
  Point2 hand = inst.rest_start;
  double total = 0.0;
  for (const auto& a : plan.actions) {
    total += d(hand, a.pick) + d(a.pick, a.place);
    hand = a.place;
  }
  return total + d(hand, inst.rest_goal);
}

bool well_formed_xml(const std::string& text) {
  std::vector<std::string> stack;
  std::size_t pos = 0;
  bool root_seen = false;
  while ((pos = text.find('<', pos)) != std::string::npos) {
    const auto end = text.find('>', pos);
    if (end == std::string::npos) return false;
    std::string tag = text.substr(pos + 1, end - pos - 1);
    pos = end + 1;
    if (tag.empty()) return false;
    if (tag.front() == '?' || tag.front() == '!') continue;
    if (tag.front() == '/') {
      const std::string name = tag.substr(1);
      if (stack.empty() || stack.back() != name) return false;
      stack.pop_back();
      continue;
    }
    const bool self_closing = tag.back() == '/';
    const std::string name = tag.substr(0, tag.find_first_of(" \t\n/"));
    if (stack.empty()) {
      if (root_seen) return false;
      root_seen = true;
    }
    if (!self_closing) stack.push_back(name);
  }
  return root_seen && stack.empty();
}

Instance random_no_overlap(int n, std::uint64_t seed, bool labeled, double side, double radius) {
  std::mt19937_64 rng(seed);
  Instance inst;
  inst.labeled = labeled;
  inst.start.radius = inst.goal.radius = radius;
  inst.workspace = {0.0, 0.0, side, side};
  inst.rest_start = {unit(rng) * side, unit(rng) * side};
  inst.rest_goal = {unit(rng) * side, unit(rng) * side};
  std::vector<Point2> placed;
  while (static_cast<int>(placed.size()) < 2 * n) {
    const Point2 p{radius + unit(rng) * (side - 2 * radius), radius + unit(rng) * (side - 2 * radius)};
    bool ok = true;
    for (const auto& q : placed) ok = ok && d(p, q) > 2 * radius + 1e-6;
    if (ok) placed.push_back(p);
  }
  inst.start.poses.assign(placed.begin(), placed.begin() + n);
  inst.goal.poses.assign(placed.begin() + n, placed.end());
  return inst;
}

std::vector<Arc> random_arcs(int n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Arc> arcs;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (a != b && unit(rng) < p) arcs.emplace_back(a, b);
    }
  }
  return arcs;
}

}  // namespace toro::oracle
