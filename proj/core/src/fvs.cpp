#include "toro/fvs.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "toro/bip.hpp"
#include "toro/errors.hpp"

namespace toro {

const char* to_string(FvsMethod method) {
  switch (method) {
    case FvsMethod::brute_force:
      return "brute";
    case FvsMethod::ilp_constraint:
      return "ilp-c";
    case FvsMethod::ilp_enumerate:
      return "ilp-e";
    case FvsMethod::msch:
      return "msch";
    case FvsMethod::mch:
      return "mch";
    case FvsMethod::mdh:
      return "mdh";
  }
  return "unknown";
}

std::optional<FvsMethod> parse_fvs_method(std::string_view name) {
  for (auto m : {FvsMethod::brute_force, FvsMethod::ilp_constraint, FvsMethod::ilp_enumerate, FvsMethod::msch,
                 FvsMethod::mch, FvsMethod::mdh}) {
    if (name == to_string(m)) return m;
  }
  return std::nullopt;
}

bool is_exact(FvsMethod method) {
  return method == FvsMethod::brute_force || method == FvsMethod::ilp_constraint ||
         method == FvsMethod::ilp_enumerate;
}

namespace {

FvsResult finish(const DepGraph& g, std::vector<int> vertices, FvsMethod method, bool optimal) {
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  if (!breaks_all_cycles(g, vertices)) {
    throw std::logic_error(std::string("fvs method ") + to_string(method) + " returned a set that leaves a cycle");
  }
  return FvsResult{std::move(vertices), method, optimal};
}

bip::SolveOptions solve_options(const FvsOptions& options) {
  bip::SolveOptions o;
  o.time_budget = options.time_budget;
  return o;
}

const bip::Solution& require_optimal(const bip::Solution& s, const char* model) {
  if (s.status == bip::Status::optimal) return s;
  if (s.status == bip::Status::infeasible) throw std::logic_error(std::string(model) + " model reported infeasible");
  throw SolverLimitError(std::string(model) + " model hit its time budget (status " + bip::to_string(s.status) + ")");
}

/// Minimum FVS of one strongly connected component given in local ids.
std::vector<int> ordering_model_fvs(const DepGraph& h, const FvsOptions& options) {
  const int s = h.size();
  const int m = 2 * s;  // in-copy of i is 2i, out-copy is 2i+1
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < s; ++i) edges.emplace_back(2 * i, 2 * i + 1);
  for (const auto& [i, j] : h.arcs()) edges.emplace_back(2 * i + 1, 2 * j);

  bip::BinaryProgram p;
  std::vector<std::vector<int>> y(static_cast<std::size_t>(m), std::vector<int>(static_cast<std::size_t>(m), -1));
  for (int a = 0; a < m; ++a) {
    for (int b = a + 1; b < m; ++b) {
      y[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
          p.add_variable("y_" + std::to_string(a) + "_" + std::to_string(b));
    }
  }
  auto yv = [&](int a, int b) { return y[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; };

  // y_ab = 1 means b precedes a. An edge a->b is backward when b precedes a.
  double offset = 0.0;
  std::vector<double> obj(static_cast<std::size_t>(p.variable_count()), 0.0);
  for (const auto& [a, b] : edges) {
    if (a < b) {
      obj[static_cast<std::size_t>(yv(a, b))] += 1.0;
    } else {
      offset += 1.0;
      obj[static_cast<std::size_t>(yv(b, a))] -= 1.0;
    }
  }
  for (int v = 0; v < p.variable_count(); ++v) p.set_objective(v, obj[static_cast<std::size_t>(v)]);
  p.set_objective_offset(offset);

  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      for (int k = j + 1; k < m; ++k) {
        p.add_constraint({{yv(i, j), 1.0}, {yv(j, k), 1.0}, {yv(i, k), -1.0}}, bip::Relation::less_equal, 1.0);
        p.add_constraint({{yv(i, j), -1.0}, {yv(j, k), -1.0}, {yv(i, k), 1.0}}, bip::Relation::less_equal, 0.0);
      }
    }
  }

  const auto sol = bip::solve(p, solve_options(options));
  require_optimal(sol, "ordering");
  auto before = [&](int a, int b) {
    return a < b ? sol.assignment[static_cast<std::size_t>(yv(a, b))] == 0
                 : sol.assignment[static_cast<std::size_t>(yv(b, a))] == 1;
  };
  std::vector<int> out;
  for (const auto& [a, b] : edges) {
    if (!before(a, b)) out.push_back(a / 2);  // internal or (i_out, j_in): both map to i
  }
  return out;
}

/// Hitting-set model: keep as many vertices as possible while every cycle
/// loses one. `no_goods` lists vertex sets that must not be returned again.
bip::BinaryProgram hitting_set_model(int s, const std::vector<std::vector<int>>& cycles,
                                     const std::vector<std::vector<int>>& no_goods) {
  bip::BinaryProgram p;
  p.set_sense(bip::Sense::maximize);
  for (int i = 0; i < s; ++i) p.add_variable("v_" + std::to_string(i), 1.0);
  for (const auto& c : cycles) {
    std::vector<bip::Term> terms;
    for (int v : c) terms.push_back({v, 1.0});
    p.add_constraint(std::move(terms), bip::Relation::less_equal, static_cast<double>(c.size()) - 1.0);
  }
  for (const auto& set : no_goods) {
    std::vector<bip::Term> terms;
    for (int v : set) terms.push_back({v, 1.0});
    p.add_constraint(std::move(terms), bip::Relation::greater_equal, 1.0);
  }
  return p;
}

std::vector<int> removed_vertices(const bip::Solution& sol) {
  std::vector<int> out;
  for (std::size_t i = 0; i < sol.assignment.size(); ++i) {
    if (!sol.assignment[i]) out.push_back(static_cast<int>(i));
  }
  return out;
}

std::vector<std::vector<int>> component_cycles(const DepGraph& h, const FvsOptions& options) {
  auto e = simple_cycles(h, options.cycle_cap);
  if (e.truncated) {
    throw SolverLimitError("component has more than " + std::to_string(options.cycle_cap) + " simple cycles");
  }
  return std::move(e.cycles);
}

std::vector<int> hitting_set_fvs(const DepGraph& h, const FvsOptions& options) {
  const auto cycles = component_cycles(h, options);
  const auto p = hitting_set_model(h.size(), cycles, {});
  const auto sol = bip::solve(p, solve_options(options));
  return removed_vertices(require_optimal(sol, "hitting-set"));
}

template <typename PerComponent>
std::vector<int> per_component(const DepGraph& g, PerComponent&& solve_component) {
  std::vector<int> out;
  for (const auto& comp : cyclic_sccs(g)) {
    const DepGraph h = g.induced(comp);
    for (int local : solve_component(h)) out.push_back(comp[static_cast<std::size_t>(local)]);
  }
  return out;
}

/// Vertices of g that lie on some cycle, ascending.
std::vector<int> cyclic_vertices(const DepGraph& g) {
  std::vector<int> out;
  for (const auto& comp : cyclic_sccs(g)) out.insert(out.end(), comp.begin(), comp.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

FvsResult fvs_brute_force(const DepGraph& g) {
  if (g.size() > kBruteForceFvsLimit) {
    throw SizeGuardError("brute-force FVS is limited to " + std::to_string(kBruteForceFvsLimit) + " vertices");
  }
  // A minimum set never contains a vertex outside every cycle, so only cyclic
  // vertices are candidates. Lexicographic order over them matches the order
  // over all vertices.
  const auto candidates = cyclic_vertices(g);
  const int c = static_cast<int>(candidates.size());
  for (int k = 0; k <= c; ++k) {
    std::vector<int> idx(static_cast<std::size_t>(k));
    std::iota(idx.begin(), idx.end(), 0);
    for (;;) {
      std::vector<int> set;
      for (int i : idx) set.push_back(candidates[static_cast<std::size_t>(i)]);
      if (breaks_all_cycles(g, set)) return finish(g, std::move(set), FvsMethod::brute_force, true);
      int pos = k - 1;
      while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == c - k + pos) --pos;
      if (pos < 0) break;
      ++idx[static_cast<std::size_t>(pos)];
      for (int q = pos + 1; q < k; ++q) idx[static_cast<std::size_t>(q)] = idx[static_cast<std::size_t>(q - 1)] + 1;
    }
  }
  throw std::logic_error("brute-force FVS found no set");
}

FvsResult fvs_ilp_constraint(const DepGraph& g, const FvsOptions& options) {
  auto set = per_component(g, [&](const DepGraph& h) { return ordering_model_fvs(h, options); });
  return finish(g, std::move(set), FvsMethod::ilp_constraint, true);
}

FvsResult fvs_ilp_enumerate(const DepGraph& g, const FvsOptions& options) {
  auto set = per_component(g, [&](const DepGraph& h) { return hitting_set_fvs(h, options); });
  return finish(g, std::move(set), FvsMethod::ilp_enumerate, true);
}

FvsResult fvs_msch(const DepGraph& g, const FvsOptions& options) {
  std::vector<int> removed;
  for (;;) {
    const DepGraph h = g.without(removed);
    const auto e = simple_cycles(h, options.cycle_cap);
    if (e.truncated) throw SolverLimitError("MSCH: more than " + std::to_string(options.cycle_cap) + " simple cycles");
    if (e.cycles.empty()) break;
    std::vector<std::size_t> count(static_cast<std::size_t>(g.size()), 0);
    for (const auto& c : e.cycles) {
      for (int v : c) ++count[static_cast<std::size_t>(v)];
    }
    const auto best = std::max_element(count.begin(), count.end());  // first maximum = lowest id
    removed.push_back(static_cast<int>(best - count.begin()));
  }
  return finish(g, std::move(removed), FvsMethod::msch, false);
}

FvsResult fvs_mch(const DepGraph& g) {
  const int n = g.size();
  std::vector<int> removed;
  for (;;) {
    const DepGraph h = g.without(removed);
    if (is_acyclic(h)) break;
    // Marking one unmarked cycle-closing out-edge per cycle found leaves one
    // mark on every out-edge (v, w) where w can reach v.
    std::vector<int> count(static_cast<std::size_t>(n), 0);
    std::vector<char> reaches(static_cast<std::size_t>(n));
    std::vector<int> stack;
    for (int v = 0; v < n; ++v) {
      std::fill(reaches.begin(), reaches.end(), 0);
      reaches[static_cast<std::size_t>(v)] = 1;
      stack.assign(1, v);
      while (!stack.empty()) {
        const int u = stack.back();
        stack.pop_back();
        for (int p : h.predecessors(u)) {
          if (!reaches[static_cast<std::size_t>(p)]) {
            reaches[static_cast<std::size_t>(p)] = 1;
            stack.push_back(p);
          }
        }
      }
      for (int w : h.successors(v)) {
        if (reaches[static_cast<std::size_t>(w)]) ++count[static_cast<std::size_t>(v)];
      }
    }
    const auto best = std::max_element(count.begin(), count.end());
    removed.push_back(static_cast<int>(best - count.begin()));
  }
  return finish(g, std::move(removed), FvsMethod::mch, false);
}

FvsResult fvs_mdh(const DepGraph& g) {
  std::vector<int> removed;
  for (;;) {
    const DepGraph h = g.without(removed);
    const auto cyclic = cyclic_vertices(h);
    if (cyclic.empty()) break;
    int best = -1;
    long best_score = -1;
    for (int v : cyclic) {
      const long score = static_cast<long>(h.in_degree(v)) * h.out_degree(v);
      if (score > best_score) {
        best_score = score;
        best = v;
      }
    }
    removed.push_back(best);
  }
  return finish(g, std::move(removed), FvsMethod::mdh, false);
}

FvsResult solve_fvs(const DepGraph& g, FvsMethod method, const FvsOptions& options) {
  switch (method) {
    case FvsMethod::brute_force:
      return fvs_brute_force(g);
    case FvsMethod::ilp_constraint:
      return fvs_ilp_constraint(g, options);
    case FvsMethod::ilp_enumerate:
      return fvs_ilp_enumerate(g, options);
    case FvsMethod::msch:
      return fvs_msch(g, options);
    case FvsMethod::mch:
      return fvs_mch(g);
    case FvsMethod::mdh:
      return fvs_mdh(g);
  }
  throw std::invalid_argument("unknown FVS method");
}

FvsEnumeration enumerate_optimal_fvs(const DepGraph& g, std::size_t cap, const FvsOptions& options) {
  if (cap == 0) throw std::invalid_argument("enumeration cap must be positive");
  FvsEnumeration out;

  // Optimal sets of the whole graph are exactly the products of optimal sets
  // of the cyclic components.
  std::vector<std::vector<std::vector<int>>> per_comp;
  for (const auto& comp : cyclic_sccs(g)) {
    const DepGraph h = g.induced(comp);
    const auto cycles = component_cycles(h, options);
    std::vector<std::vector<int>> found;
    std::size_t optimum_kept = 0;
    for (;;) {
      const auto p = hitting_set_model(h.size(), cycles, found);
      const auto sol = bip::solve(p, solve_options(options));
      if (sol.status == bip::Status::infeasible) break;
      require_optimal(sol, "hitting-set");
      const auto kept = static_cast<std::size_t>(std::llround(sol.objective_value));
      if (found.empty()) {
        optimum_kept = kept;
      } else if (kept < optimum_kept) {
        break;
      }
      found.push_back(removed_vertices(sol));
      if (found.size() >= cap) {
        out.truncated = true;
        break;
      }
    }
    std::vector<std::vector<int>> global;
    for (const auto& set : found) {
      std::vector<int> ids;
      for (int local : set) ids.push_back(comp[static_cast<std::size_t>(local)]);
      global.push_back(std::move(ids));
    }
    per_comp.push_back(std::move(global));
  }

  std::vector<std::size_t> pick(per_comp.size(), 0);
  for (;;) {
    std::vector<int> set;
    for (std::size_t c = 0; c < per_comp.size(); ++c) {
      const auto& s = per_comp[c][pick[c]];
      set.insert(set.end(), s.begin(), s.end());
    }
    std::sort(set.begin(), set.end());
    if (!breaks_all_cycles(g, set)) throw std::logic_error("enumerated set leaves a cycle");
    out.sets.push_back(std::move(set));
    if (out.sets.size() >= cap) {
      std::size_t total = 1;
      for (const auto& c : per_comp) total = total > cap ? total : total * c.size();
      if (total > cap) out.truncated = true;
      break;
    }
    std::size_t c = 0;
    while (c < pick.size() && ++pick[c] == per_comp[c].size()) pick[c++] = 0;
    if (c == pick.size()) break;
  }
  std::sort(out.sets.begin(), out.sets.end());
  return out;
}

int min_fvs_size(const DepGraph& g, const FvsOptions& options) {
  std::size_t total = 0;
  for (const auto& comp : cyclic_sccs(g)) {
    const DepGraph h = g.induced(comp);
    std::vector<int> set;
    try {
      set = hitting_set_fvs(h, options);
    } catch (const SolverLimitError&) {
      set = ordering_model_fvs(h, options);
    }
    std::sort(set.begin(), set.end());
    total += static_cast<std::size_t>(std::unique(set.begin(), set.end()) - set.begin());
  }
  return static_cast<int>(total);
}

int min_grasps(const Instance& inst, const FvsOptions& options) {
  return inst.movable_count() + min_fvs_size(build_dep_graph(inst), options);
}

}  // namespace toro
