#include "toro/planner.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "toro/depgraph.hpp"
#include "toro/errors.hpp"

namespace toro {

using geometry::dist;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

Plan toro_no_tsp(const Instance& inst, std::uint64_t seed, const TourLimits& limits) {
  if (!is_non_overlapping(inst)) {
    throw std::invalid_argument("toro_no_tsp needs a non-overlapping instance; use toro_fvs_single");
  }
  const TourGraph g = inst.labeled ? build_g_no(inst) : build_g_uno(inst);
  const Tour tour = solve_tour(g, seed, limits);
  Plan plan;
  for (const auto& [pick, place] : tour_to_order(g, tour)) {
    const auto& p = g.vertex(pick);
    const auto& q = g.vertex(place);
    plan.actions.push_back(Action{p.object, p.pos, q.pos, PlaceKind::goal});
  }
  return plan;
}

namespace {

struct Setup {
  std::vector<int> movable;         // object ids that must move
  std::vector<bool> buffered;       // per object: goes through a buffer
  std::vector<int> parked;          // buffered objects, ascending
  std::vector<Point2> slots;
  DepGraph dep;
};

Setup prepare(const Instance& inst, std::span<const int> fvs) {
  if (!inst.labeled) throw std::invalid_argument("dependency-graph planning needs a labeled instance");
  Setup s;
  const int n = inst.size();
  s.dep = build_dep_graph(inst);
  s.buffered.assign(static_cast<std::size_t>(n), false);
  for (int v : fvs) {
    if (v < 0 || v >= n) throw std::invalid_argument("fvs names unknown object " + std::to_string(v));
    if (!inst.at_goal(v)) s.buffered[static_cast<std::size_t>(v)] = true;
  }
  if (!breaks_all_cycles(s.dep, fvs)) throw std::invalid_argument("fvs does not break every dependency cycle");
  for (int i = 0; i < n; ++i) {
    if (inst.at_goal(i)) continue;
    s.movable.push_back(i);
    if (s.buffered[static_cast<std::size_t>(i)]) s.parked.push_back(i);
  }
  s.slots = buffer_positions(inst, static_cast<int>(s.parked.size()));
  return s;
}

// Location codes used by the distance search.
constexpr std::uint8_t kAtStart = 0;
constexpr std::uint8_t kAtGoal = 1;
constexpr std::uint8_t kFirstSlot = 2;

class MinDistSearch {
 public:
  MinDistSearch(const Instance& inst, const Setup& setup, const MinDistOptions& options)
      : inst_(inst), s_(setup), options_(options), n_(inst.size()) {}

  Plan run() {
    // State bytes: location per object, then the hand code (0 = s_M,
    // 1 + i = goal of i, 1 + n + k = slot k).
    std::string root(static_cast<std::size_t>(n_) + 1, static_cast<char>(kAtStart));
    for (int i = 0; i < n_; ++i) {
      if (inst_.at_goal(i)) root[static_cast<std::size_t>(i)] = static_cast<char>(kAtGoal);
    }
    root.back() = 0;

    using Entry = std::pair<double, std::size_t>;  // (f, node index)
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
    std::unordered_map<std::string, double> best;
    nodes_.push_back(Node{root, 0.0, -1, {}});
    best[root] = 0.0;
    open.emplace(heuristic(root), 0);

    std::size_t expansions = 0;
    while (!open.empty()) {
      const auto [f, idx] = open.top();
      open.pop();
      const Node node = nodes_[idx];
      if (node.g > best[node.state]) continue;
      if (done(node.state)) return reconstruct(idx);
      if (++expansions > options_.max_expansions) {
        throw SolverLimitError("min-distance search exceeded " + std::to_string(options_.max_expansions) +
                               " expansions");
      }
      expand(idx, node, best, open);
    }
    throw InfeasibleError("no plan buffers exactly the given objects");
  }

 private:
  struct Node {
    std::string state;
    double g = 0.0;
    long parent = -1;
    Action action;
  };

  std::uint8_t loc(const std::string& st, int i) const { return static_cast<std::uint8_t>(st[static_cast<std::size_t>(i)]); }

  Point2 hand(const std::string& st) const {
    const int h = static_cast<std::uint8_t>(st.back());
    if (h == 0) return inst_.rest_start;
    if (h <= n_) return inst_.goal_of(h - 1);
    return s_.slots[static_cast<std::size_t>(h - 1 - n_)];
  }

  bool done(const std::string& st) const {
    for (int i : s_.movable) {
      if (loc(st, i) != kAtGoal) return false;
    }
    return true;
  }

  bool slot_free(const std::string& st, int k) const {
    for (int i : s_.parked) {
      if (loc(st, i) == kFirstSlot + k) return false;
    }
    return true;
  }

  // Goal i is free once every object whose start it overlaps has left.
  bool goal_clear(const std::string& st, int i) const {
    for (int j : s_.dep.successors(i)) {
      if (loc(st, j) == kAtStart) return false;
    }
    return true;
  }

  double heuristic(const std::string& st) const {
    double carry = 0.0;
    double to_pick = kInf;
    const Point2 h = hand(st);
    for (int i : s_.movable) {
      const auto l = loc(st, i);
      if (l == kAtGoal) continue;
      if (l == kAtStart) {
        const Point2 sp = inst_.start_of(i);
        to_pick = std::min(to_pick, dist(h, sp));
        if (s_.buffered[static_cast<std::size_t>(i)]) {
          double via = kInf;
          for (const auto& b : s_.slots) via = std::min(via, dist(sp, b) + dist(b, inst_.goal_of(i)));
          carry += via;
        } else {
          carry += dist(sp, inst_.goal_of(i));
        }
      } else {
        const Point2 bp = s_.slots[static_cast<std::size_t>(l - kFirstSlot)];
        to_pick = std::min(to_pick, dist(h, bp));
        carry += dist(bp, inst_.goal_of(i));
      }
    }
    return to_pick == kInf ? dist(h, inst_.rest_goal) : carry + to_pick;
  }

  template <typename Open>
  void expand(std::size_t idx, const Node& node, std::unordered_map<std::string, double>& best, Open& open) {
    const Point2 h = hand(node.state);
    auto push = [&](int object, Point2 pick, Point2 place, PlaceKind kind, std::uint8_t new_loc, int hand_code) {
      std::string next = node.state;
      next[static_cast<std::size_t>(object)] = static_cast<char>(new_loc);
      next.back() = static_cast<char>(hand_code);
      double g = node.g + dist(h, pick) + dist(pick, place);
      if (done(next)) g += dist(place, inst_.rest_goal);
      const auto it = best.find(next);
      if (it != best.end() && it->second <= g) return;
      best[next] = g;
      nodes_.push_back(Node{next, g, static_cast<long>(idx), Action{object, pick, place, kind}});
      open.emplace(g + (done(next) ? 0.0 : heuristic(next)), nodes_.size() - 1);
    };
    for (int i : s_.movable) {
      const auto l = loc(node.state, i);
      if (l == kAtGoal) continue;
      if (l == kAtStart) {
        if (s_.buffered[static_cast<std::size_t>(i)]) {
          for (int k = 0; k < static_cast<int>(s_.slots.size()); ++k) {
            if (!slot_free(node.state, k)) continue;
            push(i, inst_.start_of(i), s_.slots[static_cast<std::size_t>(k)], PlaceKind::buffer,
                 static_cast<std::uint8_t>(kFirstSlot + k), 1 + n_ + k);
          }
        } else if (goal_clear(node.state, i)) {
          push(i, inst_.start_of(i), inst_.goal_of(i), PlaceKind::goal, kAtGoal, 1 + i);
        }
      } else if (goal_clear(node.state, i)) {
        push(i, s_.slots[static_cast<std::size_t>(l - kFirstSlot)], inst_.goal_of(i), PlaceKind::goal, kAtGoal, 1 + i);
      }
    }
  }

  Plan reconstruct(std::size_t idx) const {
    Plan plan;
    for (long at = static_cast<long>(idx); nodes_[static_cast<std::size_t>(at)].parent >= 0;
         at = nodes_[static_cast<std::size_t>(at)].parent) {
      plan.actions.push_back(nodes_[static_cast<std::size_t>(at)].action);
    }
    std::reverse(plan.actions.begin(), plan.actions.end());
    return plan;
  }

  const Instance& inst_;
  const Setup& s_;
  MinDistOptions options_;
  int n_;
  std::vector<Node> nodes_;
};

void require_valid(const Plan& plan, const Instance& inst, const char* who) {
  if (const auto check = plan_is_valid(plan, inst); !check) {
    throw std::logic_error(std::string(who) + " produced an invalid plan: " + check.message);
  }
}

}  // namespace

Plan min_dist_plan(const Instance& inst, std::span<const int> fvs, const MinDistOptions& options) {
  const Setup setup = prepare(inst, fvs);
  Plan plan = MinDistSearch(inst, setup, options).run();
  require_valid(plan, inst, "min_dist_plan");
  return plan;
}

namespace {

struct ModelAction {
  int object = 0;
  Point2 pick;
  Point2 place;
  PlaceKind kind = PlaceKind::goal;
  int slot = -1;
  bool from_slot = false;
};

struct MinDistModel {
  bip::BinaryProgram program;
  std::vector<ModelAction> actions;
  std::vector<std::vector<int>> x;  // x[t][a], steps t = 0..T-1
};

MinDistModel make_model(const Instance& inst, const Setup& s) {
  MinDistModel m;
  const int p = static_cast<int>(s.parked.size());
  const int steps = static_cast<int>(s.movable.size()) + p;
  for (int i : s.movable) {
    if (!s.buffered[static_cast<std::size_t>(i)]) {
      m.actions.push_back({i, inst.start_of(i), inst.goal_of(i), PlaceKind::goal, -1, false});
      continue;
    }
    for (int k = 0; k < p; ++k) {
      m.actions.push_back({i, inst.start_of(i), s.slots[static_cast<std::size_t>(k)], PlaceKind::buffer, k, false});
    }
    for (int k = 0; k < p; ++k) {
      m.actions.push_back({i, s.slots[static_cast<std::size_t>(k)], inst.goal_of(i), PlaceKind::goal, k, true});
    }
  }
  const auto na = m.actions.size();
  auto& prog = m.program;
  using bip::Relation;
  using bip::Term;

  // Occupancy per step boundary t = 0..T.
  const int n = inst.size();
  std::vector<std::vector<int>> sv(static_cast<std::size_t>(steps + 1), std::vector<int>(static_cast<std::size_t>(n), -1));
  auto gv = sv;
  std::vector<std::vector<std::vector<int>>> bv(static_cast<std::size_t>(steps + 1),
                                                std::vector<std::vector<int>>(static_cast<std::size_t>(n)));
  for (int t = 0; t <= steps; ++t) {
    const auto ut = static_cast<std::size_t>(t);
    for (int i : s.movable) {
      const auto ui = static_cast<std::size_t>(i);
      const std::string suffix = std::to_string(i) + "_" + std::to_string(t);
      sv[ut][ui] = prog.add_variable("s_" + suffix);
      gv[ut][ui] = prog.add_variable("g_" + suffix);
      if (s.buffered[ui]) {
        for (int k = 0; k < p; ++k) {
          bv[ut][ui].push_back(prog.add_variable("b_" + std::to_string(i) + "_" + std::to_string(k) + "_" + std::to_string(t)));
        }
      }
    }
  }
  // Boundary states.
  for (int i : s.movable) {
    const auto ui = static_cast<std::size_t>(i);
    const auto last = static_cast<std::size_t>(steps);
    prog.add_constraint({{sv[0][ui], 1.0}}, Relation::equal, 1.0);
    prog.add_constraint({{gv[0][ui], 1.0}}, Relation::equal, 0.0);
    prog.add_constraint({{sv[last][ui], 1.0}}, Relation::equal, 0.0);
    prog.add_constraint({{gv[last][ui], 1.0}}, Relation::equal, 1.0);
    for (int k = 0; k < static_cast<int>(bv[0][ui].size()); ++k) {
      prog.add_constraint({{bv[0][ui][static_cast<std::size_t>(k)], 1.0}}, Relation::equal, 0.0);
      prog.add_constraint({{bv[last][ui][static_cast<std::size_t>(k)], 1.0}}, Relation::equal, 0.0);
    }
  }

  // One pick-and-place per step; its carry, and the first and last empty moves.
  m.x.assign(static_cast<std::size_t>(steps), std::vector<int>(na, -1));
  for (int t = 0; t < steps; ++t) {
    std::vector<Term> one;
    for (std::size_t a = 0; a < na; ++a) {
      const auto& act = m.actions[a];
      double c = dist(act.pick, act.place);
      if (t == 0) c += dist(inst.rest_start, act.pick);
      if (t == steps - 1) c += dist(act.place, inst.rest_goal);
      const int var = prog.add_variable("x_" + std::to_string(a) + "_" + std::to_string(t + 1), c);
      m.x[static_cast<std::size_t>(t)][a] = var;
      one.push_back({var, 1.0});
    }
    prog.add_constraint(std::move(one), Relation::equal, 1.0);
  }

  // State updates and pick validity.
  for (int t = 1; t <= steps; ++t) {
    const auto ut = static_cast<std::size_t>(t);
    const auto& xt = m.x[ut - 1];
    for (int i : s.movable) {
      const auto ui = static_cast<std::size_t>(i);
      std::vector<Term> s_update{{sv[ut][ui], 1.0}, {sv[ut - 1][ui], -1.0}};
      std::vector<Term> g_update{{gv[ut][ui], 1.0}, {gv[ut - 1][ui], -1.0}};
      std::vector<std::vector<Term>> b_update;
      for (int k = 0; k < static_cast<int>(bv[ut][ui].size()); ++k) {
        b_update.push_back({{bv[ut][ui][static_cast<std::size_t>(k)], 1.0}, {bv[ut - 1][ui][static_cast<std::size_t>(k)], -1.0}});
      }
      for (std::size_t a = 0; a < na; ++a) {
        const auto& act = m.actions[a];
        if (act.object != i) continue;
        if (act.from_slot) {
          b_update[static_cast<std::size_t>(act.slot)].push_back({xt[a], 1.0});
          g_update.push_back({xt[a], -1.0});
          prog.add_constraint({{xt[a], 1.0}, {bv[ut - 1][ui][static_cast<std::size_t>(act.slot)], -1.0}},
                              Relation::less_equal, 0.0);
        } else {
          s_update.push_back({xt[a], 1.0});
          if (act.kind == PlaceKind::buffer) {
            b_update[static_cast<std::size_t>(act.slot)].push_back({xt[a], -1.0});
          } else {
            g_update.push_back({xt[a], -1.0});
          }
          prog.add_constraint({{xt[a], 1.0}, {sv[ut - 1][ui], -1.0}}, Relation::less_equal, 0.0);
        }
      }
      prog.add_constraint(std::move(s_update), Relation::equal, 0.0);
      prog.add_constraint(std::move(g_update), Relation::equal, 0.0);
      for (auto& b : b_update) prog.add_constraint(std::move(b), Relation::equal, 0.0);
    }
  }

  // Each slot holds at most one object; a goal cannot be filled while a start
  // it overlaps is still occupied.
  for (int t = 0; t <= steps; ++t) {
    const auto ut = static_cast<std::size_t>(t);
    for (int k = 0; k < p; ++k) {
      std::vector<Term> cap;
      for (int i : s.parked) cap.push_back({bv[ut][static_cast<std::size_t>(i)][static_cast<std::size_t>(k)], 1.0});
      prog.add_constraint(std::move(cap), Relation::less_equal, 1.0);
    }
    for (const auto& [i, j] : s.dep.arcs()) {
      if (inst.at_goal(i) || inst.at_goal(j)) continue;
      prog.add_constraint({{gv[ut][static_cast<std::size_t>(i)], 1.0}, {sv[ut][static_cast<std::size_t>(j)], 1.0}},
                          Relation::less_equal, 1.0);
    }
  }

  // Empty-hand moves from the place of step t to the pick of step t+1.
  for (int t = 0; t + 1 < steps; ++t) {
    const auto& xa = m.x[static_cast<std::size_t>(t)];
    const auto& xb = m.x[static_cast<std::size_t>(t + 1)];
    std::vector<std::vector<Term>> out(na);
    std::vector<std::vector<Term>> in(na);
    for (std::size_t a = 0; a < na; ++a) {
      for (std::size_t b = 0; b < na; ++b) {
        const int e = prog.add_variable(
            "e_" + std::to_string(a) + "_" + std::to_string(b) + "_" + std::to_string(t + 1),
            dist(m.actions[a].place, m.actions[b].pick));
        out[a].push_back({e, 1.0});
        in[b].push_back({e, 1.0});
      }
    }
    for (std::size_t a = 0; a < na; ++a) {
      out[a].push_back({xa[a], -1.0});
      prog.add_constraint(std::move(out[a]), Relation::equal, 0.0);
      in[a].push_back({xb[a], -1.0});
      prog.add_constraint(std::move(in[a]), Relation::equal, 0.0);
    }
  }
  return m;
}

}  // namespace

bip::BinaryProgram build_min_dist_model(const Instance& inst, std::span<const int> fvs) {
  return make_model(inst, prepare(inst, fvs)).program;
}

Plan min_dist_plan_model(const Instance& inst, std::span<const int> fvs, const bip::SolveOptions& options) {
  const Setup setup = prepare(inst, fvs);
  const MinDistModel m = make_model(inst, setup);
  const auto sol = bip::solve(m.program, options);
  if (sol.status == bip::Status::infeasible) throw InfeasibleError("min-distance model is infeasible");
  if (sol.status != bip::Status::optimal) throw SolverLimitError("min-distance model hit its time budget");
  Plan plan;
  for (const auto& xt : m.x) {
    for (std::size_t a = 0; a < xt.size(); ++a) {
      if (!sol.assignment[static_cast<std::size_t>(xt[a])]) continue;
      const auto& act = m.actions[a];
      plan.actions.push_back(Action{act.object, act.pick, act.place, act.kind});
    }
  }
  require_valid(plan, inst, "min_dist_plan_model");
  return plan;
}

Plan feasible_plan(const Instance& inst, std::span<const int> fvs) {
  const Setup s = prepare(inst, fvs);
  Plan plan;
  std::vector<bool> left_start(static_cast<std::size_t>(inst.size()), false);
  for (std::size_t k = 0; k < s.parked.size(); ++k) {
    const int i = s.parked[k];
    plan.actions.push_back(Action{i, inst.start_of(i), s.slots[k], PlaceKind::buffer});
    left_start[static_cast<std::size_t>(i)] = true;
  }
  std::vector<int> waiting;
  for (int i : s.movable) {
    if (!s.buffered[static_cast<std::size_t>(i)]) waiting.push_back(i);
  }
  while (!waiting.empty()) {
    const auto ready = std::find_if(waiting.begin(), waiting.end(), [&](int i) {
      const auto& succ = s.dep.successors(i);
      return std::all_of(succ.begin(), succ.end(), [&](int j) { return left_start[static_cast<std::size_t>(j)]; });
    });
    if (ready == waiting.end()) throw std::logic_error("feasible_plan: residual dependency graph has a cycle");
    const int i = *ready;
    plan.actions.push_back(Action{i, inst.start_of(i), inst.goal_of(i), PlaceKind::goal});
    left_start[static_cast<std::size_t>(i)] = true;
    waiting.erase(ready);
  }
  for (std::size_t k = 0; k < s.parked.size(); ++k) {
    const int i = s.parked[k];
    plan.actions.push_back(Action{i, s.slots[k], inst.goal_of(i), PlaceKind::goal});
  }
  require_valid(plan, inst, "feasible_plan");
  return plan;
}

Plan toro_fvs_single(const Instance& inst, FvsMethod method, const FvsOptions& fvs_options,
                     const MinDistOptions& options) {
  if (!inst.labeled) throw std::invalid_argument("toro_fvs_single needs a labeled instance");
  const auto fvs = solve_fvs(build_dep_graph(inst), method, fvs_options);
  return min_dist_plan(inst, fvs.vertices, options);
}

OptimalPlan toro_optimal(const Instance& inst, std::size_t cap, const FvsOptions& fvs_options,
                         const MinDistOptions& options) {
  if (!inst.labeled) throw std::invalid_argument("toro_optimal needs a labeled instance");
  const auto sets = enumerate_optimal_fvs(build_dep_graph(inst), cap, fvs_options);
  OptimalPlan best;
  best.truncated = sets.truncated;
  double best_distance = kInf;
  for (const auto& set : sets.sets) {
    Plan plan = min_dist_plan(inst, set, options);
    const double d = plan_distance(plan, inst);
    if (d < best_distance - 1e-9) {
      best_distance = d;
      best.plan = std::move(plan);
      best.fvs = set;
    }
  }
  return best;
}

namespace {

class BruteForce {
 public:
  BruteForce(const Instance& inst, int slots, std::vector<bool> eligible)
      : inst_(inst), n_(inst.size()), slots_(buffer_positions(inst, slots)), eligible_(std::move(eligible)) {}

  // Location code per object: 0 = start, 1 + k = slot k, 1 + q + g = goal g.
  std::optional<Plan> run(int steps) {
    std::string st(static_cast<std::size_t>(n_) + 2, '\0');
    for (int i = 0; i < n_; ++i) {
      if (inst_.at_goal(i)) st[static_cast<std::size_t>(i)] = static_cast<char>(goal_code(i));
    }
    st[static_cast<std::size_t>(n_)] = static_cast<char>(kHandRest);
    st[static_cast<std::size_t>(n_) + 1] = static_cast<char>(steps);
    if (value(st) == kInf) return std::nullopt;

    Plan plan;
    while (st[static_cast<std::size_t>(n_) + 1] > 0) {
      const double v = value(st);
      bool moved = false;
      for_each_move(st, [&](const Action& a, const std::string& next, double cost) {
        if (moved) return;
        if (cost + value(next) <= v + 1e-9) {
          plan.actions.push_back(a);
          st = next;
          moved = true;
        }
      });
      if (!moved) throw std::logic_error("brute force lost its optimal path");
    }
    return plan;
  }

 private:
  static constexpr int kHandRest = 255;

  int q() const { return static_cast<int>(slots_.size()); }
  int goal_code(int g) const { return 1 + q() + g; }

  Point2 pose_of(int code, int object) const {
    if (code == 0) return inst_.start_of(object);
    if (code <= q()) return slots_[static_cast<std::size_t>(code - 1)];
    return inst_.goal_of(code - 1 - q());
  }

  Point2 hand(const std::string& st) const {
    const int h = static_cast<std::uint8_t>(st[static_cast<std::size_t>(n_)]);
    return h == kHandRest ? inst_.rest_start : pose_of(h, -1);
  }

  bool clear(const std::string& st, int object, Point2 place) const {
    for (int j = 0; j < n_; ++j) {
      if (j == object) continue;
      const int code = static_cast<std::uint8_t>(st[static_cast<std::size_t>(j)]);
      if (geometry::discs_overlap(place, pose_of(code, j), inst_.radius())) return false;
    }
    return true;
  }

  bool final_ok(const std::string& st) const {
    if (inst_.labeled) {
      for (int i = 0; i < n_; ++i) {
        if (static_cast<std::uint8_t>(st[static_cast<std::size_t>(i)]) != goal_code(i)) return false;
      }
      return true;
    }
    std::vector<bool> used(static_cast<std::size_t>(n_), false);
    for (int i = 0; i < n_; ++i) {
      const int code = static_cast<std::uint8_t>(st[static_cast<std::size_t>(i)]);
      const Point2 p = pose_of(code, i);
      bool matched = false;
      for (int g = 0; g < n_ && !matched; ++g) {
        if (!used[static_cast<std::size_t>(g)] && geometry::same_pose(p, inst_.goal_of(g))) {
          used[static_cast<std::size_t>(g)] = true;
          matched = true;
        }
      }
      if (!matched) return false;
    }
    return true;
  }

  template <typename Visit>
  void for_each_move(const std::string& st, Visit&& visit) const {
    const Point2 h = hand(st);
    const int left = static_cast<std::uint8_t>(st[static_cast<std::size_t>(n_) + 1]);
    for (int i = 0; i < n_; ++i) {
      if (inst_.at_goal(i)) continue;
      const int code = static_cast<std::uint8_t>(st[static_cast<std::size_t>(i)]);
      if (code > q()) continue;  // already on a goal
      const Point2 pick = pose_of(code, i);
      auto emit = [&](int target, PlaceKind kind) {
        const Point2 place = pose_of(target, i);
        if (geometry::same_pose(pick, place) || !clear(st, i, place)) return;
        std::string next = st;
        next[static_cast<std::size_t>(i)] = static_cast<char>(target);
        next[static_cast<std::size_t>(n_)] = static_cast<char>(target);
        next[static_cast<std::size_t>(n_) + 1] = static_cast<char>(left - 1);
        visit(Action{i, pick, place, kind}, next, dist(h, pick) + dist(pick, place));
      };
      if (inst_.labeled) {
        emit(goal_code(i), PlaceKind::goal);
      } else {
        for (int g = 0; g < n_; ++g) emit(goal_code(g), PlaceKind::goal);
      }
      if (code == 0 && eligible_[static_cast<std::size_t>(i)]) {
        for (int k = 0; k < q(); ++k) emit(1 + k, PlaceKind::buffer);
      }
    }
  }

  double value(const std::string& st) {
    if (const auto it = memo_.find(st); it != memo_.end()) return it->second;
    double best = kInf;
    if (st[static_cast<std::size_t>(n_) + 1] == 0) {
      if (final_ok(st)) best = dist(hand(st), inst_.rest_goal);
    } else {
      for_each_move(st, [&](const Action&, const std::string& next, double cost) {
        best = std::min(best, cost + value(next));
      });
    }
    memo_.emplace(st, best);
    return best;
  }

  const Instance& inst_;
  int n_;
  std::vector<Point2> slots_;
  std::vector<bool> eligible_;
  std::unordered_map<std::string, double> memo_;
};

}  // namespace

std::optional<Plan> brute_force_plan(const Instance& inst, int max_actions, std::optional<std::vector<int>> buffer_eligible) {
  const int n = inst.size();
  if (n > kBruteForcePlanObjects) {
    throw SizeGuardError("brute-force planning is limited to " + std::to_string(kBruteForcePlanObjects) + " objects");
  }
  if (max_actions > n + kBruteForceExtraActions) {
    throw SizeGuardError("brute-force planning is limited to n + " + std::to_string(kBruteForceExtraActions) +
                         " actions");
  }
  std::vector<bool> eligible(static_cast<std::size_t>(n), !buffer_eligible.has_value());
  if (buffer_eligible) {
    for (int v : *buffer_eligible) {
      if (v < 0 || v >= n) throw std::invalid_argument("buffer_eligible names unknown object " + std::to_string(v));
      eligible[static_cast<std::size_t>(v)] = true;
    }
  }
  int moving = 0;
  for (int i = 0; i < n; ++i) {
    if (inst.labeled) {
      moving += inst.at_goal(i) ? 0 : 1;
    } else {
      const bool on_goal = std::any_of(inst.goal.poses.begin(), inst.goal.poses.end(),
                                       [&](const Point2& g) { return geometry::same_pose(g, inst.start_of(i)); });
      moving += on_goal ? 0 : 1;
    }
  }
  for (int steps = moving; steps <= max_actions; ++steps) {
    BruteForce search(inst, steps - moving, eligible);
    if (auto plan = search.run(steps)) return plan;
  }
  return std::nullopt;
}

}  // namespace toro
