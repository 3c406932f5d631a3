#include "toro/routing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "toro/errors.hpp"
#include "toro/rng.hpp"

namespace toro {

using geometry::dist;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kImprovement = 1e-10;
constexpr int kHeuristicStarts = 8;

}  // namespace

std::optional<double> TourGraph::weight(int a, int b) const {
  if (a < 0 || b < 0 || a >= vertex_count() || b >= vertex_count()) return std::nullopt;
  return w_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
}

std::size_t TourGraph::edge_count() const {
  std::size_t count = 0;
  for (int a = 0; a < vertex_count(); ++a) {
    for (int b = a + 1; b < vertex_count(); ++b) {
      if (has_edge(a, b)) ++count;
    }
  }
  return count;
}

namespace {

struct GraphBuilder {
  std::vector<TourVertex>& vertices;
  std::vector<std::vector<std::optional<double>>>& w;

  void init(const Instance& inst, bool with_links) {
    const int n = inst.size();
    vertices.push_back({VertexTag::rest_start, -1, inst.rest_start});
    vertices.push_back({VertexTag::rest_goal, -1, inst.rest_goal});
    vertices.push_back({VertexTag::rest_link, -1, inst.rest_start});
    for (int i = 0; i < n; ++i) vertices.push_back({VertexTag::start, i, inst.start_of(i)});
    for (int i = 0; i < n; ++i) vertices.push_back({VertexTag::goal, i, inst.goal_of(i)});
    if (with_links) {
      for (int i = 0; i < n; ++i) vertices.push_back({VertexTag::link, i, inst.start_of(i)});
    }
    w.assign(vertices.size(), std::vector<std::optional<double>>(vertices.size()));
  }

  void edge(int a, int b, double weight) {
    w[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = weight;
    w[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = weight;
  }

  void rest_edges(const Instance& inst) {
    const int n = inst.size();
    edge(0, 2, 0.0);
    edge(1, 2, 0.0);
    for (int i = 0; i < n; ++i) {
      edge(0, 3 + i, dist(inst.rest_start, inst.start_of(i)));
      edge(1, 3 + n + i, dist(inst.rest_goal, inst.goal_of(i)));
    }
  }
};

void require_non_overlapping(const Instance& inst) {
  if (!is_non_overlapping(inst)) {
    throw std::invalid_argument("instance has overlapping start and goal poses; use the dependency-graph planner");
  }
}

}  // namespace

TourGraph build_g_no(const Instance& inst) {
  if (!inst.labeled) throw std::invalid_argument("labeled tour graph needs a labeled instance");
  require_non_overlapping(inst);
  TourGraph g;
  g.kind_ = TourKind::labeled;
  g.n_ = inst.size();
  GraphBuilder b{g.vertices_, g.w_};
  b.init(inst, true);
  b.rest_edges(inst);
  const int n = g.n_;
  for (int i = 0; i < n; ++i) {
    b.edge(g.start(i), g.link(i), 0.0);
    b.edge(g.link(i), g.goal(i), 0.0);
    for (int j = 0; j < n; ++j) {
      if (i != j) b.edge(g.start(i), g.goal(j), dist(inst.start_of(i), inst.goal_of(j)));
    }
  }
  return g;
}

TourGraph build_g_uno(const Instance& inst) {
  require_non_overlapping(inst);
  TourGraph g;
  g.kind_ = TourKind::unlabeled;
  g.n_ = inst.size();
  GraphBuilder b{g.vertices_, g.w_};
  b.init(inst, false);
  b.rest_edges(inst);
  for (int i = 0; i < g.n_; ++i) {
    for (int j = 0; j < g.n_; ++j) b.edge(g.start(i), g.goal(j), dist(inst.start_of(i), inst.goal_of(j)));
  }
  return g;
}

double tour_weight(const TourGraph& g, const std::vector<int>& cycle) {
  const int v = g.vertex_count();
  if (static_cast<int>(cycle.size()) != v) throw std::invalid_argument("tour does not visit every vertex");
  std::vector<bool> seen(static_cast<std::size_t>(v), false);
  for (int x : cycle) {
    if (x < 0 || x >= v || seen[static_cast<std::size_t>(x)]) throw std::invalid_argument("tour repeats a vertex");
    seen[static_cast<std::size_t>(x)] = true;
  }
  if (g.objects() == 0) return 0.0;
  double total = 0.0;
  for (std::size_t k = 0; k < cycle.size(); ++k) {
    const int a = cycle[k];
    const int b = cycle[(k + 1) % cycle.size()];
    const auto w = g.weight(a, b);
    if (!w) throw std::invalid_argument("tour uses a missing edge " + std::to_string(a) + "-" + std::to_string(b));
    total += *w;
  }
  return total;
}

Tour tour_from_order(const TourGraph& g, const std::vector<std::pair<int, int>>& order) {
  Tour t;
  t.cycle.push_back(TourGraph::rest_start());
  for (const auto& [pick, place] : order) {
    t.cycle.push_back(pick);
    if (g.kind() == TourKind::labeled) t.cycle.push_back(g.link(g.vertex(pick).object));
    t.cycle.push_back(place);
  }
  t.cycle.push_back(TourGraph::rest_goal());
  t.cycle.push_back(TourGraph::rest_link());
  t.weight = tour_weight(g, t.cycle);
  return t;
}

std::vector<std::pair<int, int>> tour_to_order(const TourGraph& g, const Tour& tour) {
  tour_weight(g, tour.cycle);  // permutation and edge checks
  const auto v = tour.cycle.size();
  const auto at = static_cast<std::size_t>(
      std::find(tour.cycle.begin(), tour.cycle.end(), TourGraph::rest_start()) - tour.cycle.begin());
  const bool forward = tour.cycle[(at + 1) % v] != TourGraph::rest_link();
  std::vector<int> walk;
  for (std::size_t k = 0; k < v; ++k) {
    walk.push_back(tour.cycle[forward ? (at + k) % v : (at + v - k) % v]);
  }
  if (walk[v - 1] != TourGraph::rest_link() || walk[v - 2] != TourGraph::rest_goal()) {
    throw std::invalid_argument("tour does not pass through g_M, u_0, s_M consecutively");
  }
  std::vector<std::pair<int, int>> order;
  const std::size_t step = g.kind() == TourKind::labeled ? 3 : 2;
  for (std::size_t k = 1; k + 2 < v; k += step) {
    const auto& pick = g.vertex(walk[k]);
    const auto& place = g.vertex(walk[k + step - 1]);
    if (pick.tag != VertexTag::start || place.tag != VertexTag::goal) {
      throw std::invalid_argument("tour does not alternate pick and place vertices");
    }
    if (g.kind() == TourKind::labeled) {
      const auto& mid = g.vertex(walk[k + 1]);
      if (mid.tag != VertexTag::link || mid.object != pick.object || place.object != pick.object) {
        throw std::invalid_argument("labeled tour leaves an object segment s_i u_i g_i");
      }
    }
    order.emplace_back(walk[k], walk[k + step - 1]);
  }
  return order;
}

namespace {

std::vector<std::pair<int, int>> labeled_order(const TourGraph& g, const std::vector<int>& objects) {
  std::vector<std::pair<int, int>> order;
  for (int i : objects) order.emplace_back(g.start(i), g.goal(i));
  return order;
}

Tour exact_labeled(const TourGraph& g) {
  const int n = g.objects();
  const auto pos = [&](int v) { return g.vertex(v).pos; };
  const std::size_t masks = std::size_t{1} << n;
  std::vector<double> dp(masks * static_cast<std::size_t>(n), kInf);
  std::vector<std::int8_t> parent(dp.size(), -1);
  auto at = [n](std::size_t mask, int last) { return mask * static_cast<std::size_t>(n) + static_cast<std::size_t>(last); };

  for (int b = 0; b < n; ++b) dp[at(std::size_t{1} << b, b)] = dist(pos(0), pos(g.start(b)));
  for (std::size_t mask = 1; mask < masks; ++mask) {
    for (int a = 0; a < n; ++a) {
      const double base = dp[at(mask, a)];
      if (base == kInf) continue;
      const Point2 from = pos(g.goal(a));
      for (int b = 0; b < n; ++b) {
        if (mask >> b & 1) continue;
        const std::size_t next = mask | std::size_t{1} << b;
        const double cand = base + dist(from, pos(g.start(b)));
        if (cand < dp[at(next, b)]) {
          dp[at(next, b)] = cand;
          parent[at(next, b)] = static_cast<std::int8_t>(a);
        }
      }
    }
  }
  const std::size_t full = masks - 1;
  int last = 0;
  double best = kInf;
  for (int a = 0; a < n; ++a) {
    const double cand = dp[at(full, a)] + dist(pos(g.goal(a)), pos(1));
    if (cand < best) {
      best = cand;
      last = a;
    }
  }
  std::vector<int> objects;
  std::size_t mask = full;
  while (last >= 0) {
    objects.push_back(last);
    const int prev = parent[at(mask, last)];
    mask &= ~(std::size_t{1} << last);
    last = prev;
  }
  std::reverse(objects.begin(), objects.end());
  return tour_from_order(g, labeled_order(g, objects));
}

Tour exact_unlabeled(const TourGraph& g) {
  const int n = g.objects();
  const auto un = static_cast<std::size_t>(n);
  std::vector<double> goal_to_start(un * un);
  std::vector<double> start_to_goal(un * un);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      goal_to_start[static_cast<std::size_t>(a) * un + static_cast<std::size_t>(b)] =
          dist(g.vertex(g.goal(a)).pos, g.vertex(g.start(b)).pos);
      start_to_goal[static_cast<std::size_t>(a) * un + static_cast<std::size_t>(b)] =
          dist(g.vertex(g.start(a)).pos, g.vertex(g.goal(b)).pos);
    }
  }

  std::vector<std::vector<unsigned>> combos(un + 1);
  std::vector<int> rank(std::size_t{1} << n);
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    auto& c = combos[static_cast<std::size_t>(std::popcount(mask))];
    rank[mask] = static_cast<int>(c.size());
    c.push_back(mask);
  }

  // Each step is split in two half-steps. A "place" table holds the cheapest
  // way to have used starts S and goals G, ending at goal `last`; a "pick"
  // table holds starts S, goals G, the hand holding the object from start s.
  struct Table {
    std::size_t s_width = 0;
    std::size_t g_width = 0;
    std::vector<double> cost;
    std::vector<std::int8_t> back;  // place: start picked; pick: previous goal (-1 rest)
    std::size_t at(int rs, int rg, int v, std::size_t n) const {
      return (static_cast<std::size_t>(rs) * g_width + static_cast<std::size_t>(rg)) * n + static_cast<std::size_t>(v);
    }
    void init(std::size_t sw, std::size_t gw, std::size_t n) {
      s_width = sw;
      g_width = gw;
      cost.assign(sw * gw * n, kInf);
      back.assign(sw * gw * n, -1);
    }
  };
  std::vector<Table> place(un + 1);
  std::vector<Table> pick(un + 1);  // pick[k]: k starts used, k - 1 goals
  for (std::size_t k = 1; k <= un; ++k) {
    place[k].init(combos[k].size(), combos[k].size(), un);
    pick[k].init(combos[k].size(), combos[k - 1].size(), un);
  }
  const Point2 rest = g.vertex(0).pos;
  for (int s = 0; s < n; ++s) {
    const auto idx = pick[1].at(rank[1u << s], 0, s, un);
    pick[1].cost[idx] = dist(rest, g.vertex(g.start(s)).pos);
  }
  for (std::size_t k = 1; k <= un; ++k) {
    auto& pk = pick[k];
    auto& pl = place[k];
    for (unsigned S : combos[k]) {
      for (unsigned G : combos[k - 1]) {
        for (int s = 0; s < n; ++s) {
          if (!(S >> s & 1)) continue;
          const double base = pk.cost[pk.at(rank[S], rank[G], s, un)];
          if (base == kInf) continue;
          for (int t = 0; t < n; ++t) {
            if (G >> t & 1) continue;
            const double cand = base + start_to_goal[static_cast<std::size_t>(s) * un + static_cast<std::size_t>(t)];
            const auto idx = pl.at(rank[S], rank[G | 1u << t], t, un);
            if (cand < pl.cost[idx]) {
              pl.cost[idx] = cand;
              pl.back[idx] = static_cast<std::int8_t>(s);
            }
          }
        }
      }
    }
    if (k == un) break;
    auto& next = pick[k + 1];
    for (unsigned S : combos[k]) {
      for (unsigned G : combos[k]) {
        for (int last = 0; last < n; ++last) {
          if (!(G >> last & 1)) continue;
          const double base = pl.cost[pl.at(rank[S], rank[G], last, un)];
          if (base == kInf) continue;
          for (int s = 0; s < n; ++s) {
            if (S >> s & 1) continue;
            const double cand = base + goal_to_start[static_cast<std::size_t>(last) * un + static_cast<std::size_t>(s)];
            const auto idx = next.at(rank[S | 1u << s], rank[G], s, un);
            if (cand < next.cost[idx]) {
              next.cost[idx] = cand;
              next.back[idx] = static_cast<std::int8_t>(last);
            }
          }
        }
      }
    }
  }

  const unsigned full = (1u << n) - 1;
  const Point2 rest_goal = g.vertex(1).pos;
  const auto& top = place[un];
  int last = 0;
  double best = kInf;
  for (int t = 0; t < n; ++t) {
    const double cand = top.cost[top.at(rank[full], rank[full], t, un)] + dist(g.vertex(g.goal(t)).pos, rest_goal);
    if (cand < best) {
      best = cand;
      last = t;
    }
  }
  std::vector<std::pair<int, int>> order;
  unsigned S = full;
  unsigned G = full;
  for (std::size_t k = un; k >= 1; --k) {
    const auto& pl = place[k];
    const int s = pl.back[pl.at(rank[S], rank[G], last, un)];
    order.emplace_back(g.start(s), g.goal(last));
    G &= ~(1u << last);
    const auto& pk = pick[k];
    last = pk.back[pk.at(rank[S], rank[G], s, un)];
    S &= ~(1u << s);
  }
  std::reverse(order.begin(), order.end());
  return tour_from_order(g, order);
}

/// Asymmetric path problem over object segments. City c is entered at its
/// start and left at its goal; the depot is left at s_M and entered at g_M.
class LabeledSearch {
 public:
  explicit LabeledSearch(const TourGraph& g) : n_(g.objects()) {
    // Index 0 is the depot: left at s_M, entered at g_M.
    const auto from = [&](int a) { return a == 0 ? g.vertex(0).pos : g.vertex(g.goal(a - 1)).pos; };
    const auto to = [&](int b) { return b == 0 ? g.vertex(1).pos : g.vertex(g.start(b - 1)).pos; };
    for (int a = 0; a <= n_; ++a) {
      for (int b = 0; b <= n_; ++b) cost_.push_back(dist(from(a), to(b)));
    }
  }

  std::vector<int> nearest_neighbour(int first) const {
    std::vector<int> order{first};
    std::vector<bool> used(static_cast<std::size_t>(n_), false);
    used[static_cast<std::size_t>(first)] = true;
    while (static_cast<int>(order.size()) < n_) {
      int best = -1;
      double best_d = kInf;
      for (int b = 0; b < n_; ++b) {
        if (used[static_cast<std::size_t>(b)]) continue;
        const double d = cost(order.back(), b);
        if (d < best_d) {
          best_d = d;
          best = b;
        }
      }
      used[static_cast<std::size_t>(best)] = true;
      order.push_back(best);
    }
    return order;
  }

  void improve(std::vector<int>& order) const {
    bool changed = true;
    while (changed) {
      changed = two_opt(order);
      changed = or_opt(order) || changed;
    }
  }

  double path_cost(const std::vector<int>& order) const {
    double total = 0.0;
    int prev = kDepot;
    for (int c : order) {
      total += cost(prev, c);
      prev = c;
    }
    return total + cost(prev, kDepot);
  }

 private:
  static constexpr int kDepot = -1;

  double cost(int a, int b) const {
    return cost_[static_cast<std::size_t>(a + 1) * static_cast<std::size_t>(n_ + 1) + static_cast<std::size_t>(b + 1)];
  }

  // Reversal of ext[i..j]; the asymmetric inner cost comes from prefix sums.
  bool two_opt(std::vector<int>& order) const {
    bool improved = false;
    std::vector<int> ext;
    std::vector<double> fwd;
    std::vector<double> bwd;
    auto refresh = [&] {
      ext.assign(1, kDepot);
      ext.insert(ext.end(), order.begin(), order.end());
      ext.push_back(kDepot);
      fwd.assign(ext.size(), 0.0);
      bwd.assign(ext.size(), 0.0);
      for (std::size_t t = 1; t + 2 < ext.size(); ++t) {
        fwd[t + 1] = fwd[t] + cost(ext[t], ext[t + 1]);
        bwd[t + 1] = bwd[t] + cost(ext[t + 1], ext[t]);
      }
    };
    refresh();
    const int m = static_cast<int>(ext.size());
    for (int i = 1; i < m - 1; ++i) {
      for (int j = i + 1; j < m - 1; ++j) {
        const double inner_old = fwd[static_cast<std::size_t>(j)] - fwd[static_cast<std::size_t>(i)];
        const double inner_new = bwd[static_cast<std::size_t>(j)] - bwd[static_cast<std::size_t>(i)];
        const double delta = cost(ext[i - 1], ext[j]) + cost(ext[i], ext[j + 1]) + inner_new -
                             cost(ext[i - 1], ext[i]) - cost(ext[j], ext[j + 1]) - inner_old;
        if (delta < -kImprovement) {
          std::reverse(order.begin() + (i - 1), order.begin() + j);
          refresh();
          improved = true;
        }
      }
    }
    return improved;
  }

  // Moves a run of 1-3 consecutive cities to another gap, keeping direction.
  bool or_opt(std::vector<int>& order) const {
    bool improved = false;
    const auto at = [&](int p) { return p < 0 || p >= n_ ? kDepot : order[static_cast<std::size_t>(p)]; };
    for (int len = 1; len <= 3; ++len) {
      for (int i = 0; i + len <= n_; ++i) {
        const int first = at(i);
        const int last = at(i + len - 1);
        const double gain = cost(at(i - 1), first) + cost(last, at(i + len)) - cost(at(i - 1), at(i + len));
        // Gap p lies between order[p-1] and order[p].
        for (int p = 0; p <= n_; ++p) {
          if (p >= i && p <= i + len) continue;
          const int a = at(p - 1);
          const int b = at(p);
          const double delta = cost(a, first) + cost(last, b) - cost(a, b) - gain;
          if (delta < -kImprovement) {
            if (p < i) {
              std::rotate(order.begin() + p, order.begin() + i, order.begin() + i + len);
            } else {
              std::rotate(order.begin() + i, order.begin() + i + len, order.begin() + p);
            }
            improved = true;
            break;
          }
        }
      }
    }
    return improved;
  }

  int n_;
  std::vector<double> cost_;
};

/// Symmetric alternating path s_M, s, g, s, g, ..., g_M over vertex ids.
class UnlabeledSearch {
 public:
  explicit UnlabeledSearch(const TourGraph& g) : g_(g), n_(g.objects()), v_(g.vertex_count()) {
    for (int a = 0; a < v_; ++a) {
      for (int b = 0; b < v_; ++b) d_.push_back(dist(g.vertex(a).pos, g.vertex(b).pos));
    }
  }

  std::vector<int> nearest_neighbour(int first_start) const {
    std::vector<bool> used_s(static_cast<std::size_t>(n_), false);
    std::vector<bool> used_g(static_cast<std::size_t>(n_), false);
    std::vector<int> seq;
    int s = first_start;
    for (;;) {
      used_s[static_cast<std::size_t>(s)] = true;
      seq.push_back(g_.start(s));
      const int t = closest(g_.start(s), used_g, [&](int i) { return g_.goal(i); });
      used_g[static_cast<std::size_t>(t)] = true;
      seq.push_back(g_.goal(t));
      if (static_cast<int>(seq.size()) == 2 * n_) break;
      s = closest(g_.goal(t), used_s, [&](int i) { return g_.start(i); });
    }
    return seq;
  }

  void improve(std::vector<int>& seq) const {
    bool changed = true;
    while (changed) {
      changed = two_opt(seq);
      changed = pair_move(seq) || changed;
    }
  }

  double path_cost(const std::vector<int>& seq) const {
    double total = 0.0;
    int prev = 0;
    for (int v : seq) {
      total += d(prev, v);
      prev = v;
    }
    return total + d(prev, 1);
  }

 private:
  double d(int a, int b) const {
    return d_[static_cast<std::size_t>(a) * static_cast<std::size_t>(v_) + static_cast<std::size_t>(b)];
  }

  template <typename VertexOf>
  int closest(int from, const std::vector<bool>& used, VertexOf vertex_of) const {
    int best = -1;
    double best_d = kInf;
    for (int i = 0; i < n_; ++i) {
      if (used[static_cast<std::size_t>(i)]) continue;
      const double dd = d(from, vertex_of(i));
      if (dd < best_d) {
        best_d = dd;
        best = i;
      }
    }
    return best;
  }

  // ext[k] for k in [0, 2n+1]: s_M, the sequence, then g_M.
  int ext(const std::vector<int>& seq, int k) const {
    if (k == 0) return 0;
    if (k == 2 * n_ + 1) return 1;
    return seq[static_cast<std::size_t>(k - 1)];
  }

  // Reversing a segment keeps the alternation when both ends have the same type.
  bool two_opt(std::vector<int>& seq) const {
    bool improved = false;
    const int m = 2 * n_ + 2;
    for (int i = 1; i < m - 1; ++i) {
      for (int j = i + 2; j < m - 1; j += 2) {
        const int a = ext(seq, i - 1);
        const int b = ext(seq, i);
        const int c = ext(seq, j);
        const int e = ext(seq, j + 1);
        const double delta = d(a, c) + d(b, e) - d(a, b) - d(c, e);
        if (delta < -kImprovement) {
          std::reverse(seq.begin() + (i - 1), seq.begin() + j);
          improved = true;
        }
      }
    }
    return improved;
  }

  // Moves one pick/place pair to another gap between pairs.
  bool pair_move(std::vector<int>& seq) const {
    bool improved = false;
    for (int k = 0; k < n_; ++k) {
      const int ps = 2 * k + 1;  // ext index of the pair's start
      const int s = ext(seq, ps);
      const int t = ext(seq, ps + 1);
      const double gain = d(ext(seq, ps - 1), s) + d(t, ext(seq, ps + 2)) - d(ext(seq, ps - 1), ext(seq, ps + 2));
      for (int q = 0; q <= n_; ++q) {
        if (q == k || q == k + 1) continue;
        // Gap q sits between ext[2q] and ext[2q+1].
        const int a = ext(seq, 2 * q);
        const int b = ext(seq, 2 * q + 1);
        const double delta = d(a, s) + d(t, b) - d(a, b) - gain;
        if (delta < -kImprovement) {
          const auto pair_begin = seq.begin() + 2 * k;
          if (q < k) {
            std::rotate(seq.begin() + 2 * q, pair_begin, pair_begin + 2);
          } else {
            std::rotate(pair_begin, pair_begin + 2, seq.begin() + 2 * q);
          }
          improved = true;
          break;
        }
      }
    }
    return improved;
  }

  const TourGraph& g_;
  int n_;
  int v_;
  std::vector<double> d_;
};

std::vector<int> start_cities(int n, std::uint64_t seed) {
  std::vector<int> cities(static_cast<std::size_t>(n));
  std::iota(cities.begin(), cities.end(), 0);
  if (n > kHeuristicStarts) {
    Rng rng(seed);
    rng.shuffle(cities.begin(), cities.end());
    cities.resize(kHeuristicStarts);
  }
  return cities;
}

}  // namespace

Tour solve_tour_exact(const TourGraph& g, const TourLimits& limits) {
  const int n = g.objects();
  if (n == 0) return tour_from_order(g, {});
  if (g.kind() == TourKind::labeled) {
    if (n > limits.labeled_exact) {
      throw SizeGuardError("exact labeled tour is limited to " + std::to_string(limits.labeled_exact) +
                           " objects; use the heuristic");
    }
    return exact_labeled(g);
  }
  if (n > limits.unlabeled_exact) {
    throw SizeGuardError("exact unlabeled tour is limited to " + std::to_string(limits.unlabeled_exact) +
                         " objects; use the heuristic");
  }
  return exact_unlabeled(g);
}

Tour solve_tour_heuristic(const TourGraph& g, std::uint64_t seed) {
  const int n = g.objects();
  if (n == 0) return tour_from_order(g, {});
  if (g.kind() == TourKind::labeled) {
    const LabeledSearch search(g);
    std::vector<int> best;
    double best_cost = kInf;
    for (int first : start_cities(n, seed)) {
      auto order = search.nearest_neighbour(first);
      search.improve(order);
      const double c = search.path_cost(order);
      if (c < best_cost - kImprovement) {
        best_cost = c;
        best = std::move(order);
      }
    }
    return tour_from_order(g, labeled_order(g, best));
  }
  const UnlabeledSearch search(g);
  std::vector<int> best;
  double best_cost = kInf;
  for (int first : start_cities(n, seed)) {
    auto seq = search.nearest_neighbour(first);
    search.improve(seq);
    const double c = search.path_cost(seq);
    if (c < best_cost - kImprovement) {
      best_cost = c;
      best = std::move(seq);
    }
  }
  std::vector<std::pair<int, int>> order;
  for (std::size_t k = 0; k < best.size(); k += 2) order.emplace_back(best[k], best[k + 1]);
  return tour_from_order(g, order);
}

Tour solve_tour(const TourGraph& g, std::uint64_t seed, const TourLimits& limits) {
  const int limit = g.kind() == TourKind::labeled ? limits.labeled_exact : limits.unlabeled_exact;
  return g.objects() <= limit ? solve_tour_exact(g, limits) : solve_tour_heuristic(g, seed);
}

}  // namespace toro
