#include "toro/depgraph.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "toro/errors.hpp"

namespace toro {

DepGraph::DepGraph(int vertex_count)
    : succ_(static_cast<std::size_t>(vertex_count)),
      pred_(static_cast<std::size_t>(vertex_count)),
      self_overlap_(static_cast<std::size_t>(vertex_count), false) {
  if (vertex_count < 0) throw std::invalid_argument("vertex count must be non-negative");
}

void DepGraph::add_arc_unchecked(int from, int to) {
  auto& out = succ_[static_cast<std::size_t>(from)];
  const auto pos = std::lower_bound(out.begin(), out.end(), to);
  if (pos != out.end() && *pos == to) return;
  out.insert(pos, to);
  auto& in = pred_[static_cast<std::size_t>(to)];
  in.insert(std::lower_bound(in.begin(), in.end(), from), from);
  ++arc_count_;
}

DepGraph DepGraph::from_arcs(int vertex_count, std::span<const Arc> arcs) {
  DepGraph g(vertex_count);
  for (const auto& [from, to] : arcs) {
    if (from < 0 || from >= vertex_count || to < 0 || to >= vertex_count) {
      throw std::invalid_argument("arc endpoint out of range");
    }
    if (from == to) throw std::invalid_argument("self-loops are not allowed in a dependency graph");
    g.add_arc_unchecked(from, to);
  }
  return g;
}

bool DepGraph::has_arc(int from, int to) const {
  const auto& out = successors(from);
  return std::binary_search(out.begin(), out.end(), to);
}

std::vector<Arc> DepGraph::arcs() const {
  std::vector<Arc> out;
  out.reserve(arc_count_);
  for (int v = 0; v < size(); ++v) {
    for (int w : successors(v)) out.emplace_back(v, w);
  }
  return out;
}

DepGraph DepGraph::without(std::span<const int> removed) const {
  std::vector<bool> gone(static_cast<std::size_t>(size()), false);
  for (int v : removed) gone[static_cast<std::size_t>(v)] = true;
  DepGraph g(size());
  g.self_overlap_ = self_overlap_;
  for (int v = 0; v < size(); ++v) {
    if (gone[static_cast<std::size_t>(v)]) continue;
    for (int w : successors(v)) {
      if (!gone[static_cast<std::size_t>(w)]) g.add_arc_unchecked(v, w);
    }
  }
  return g;
}

DepGraph DepGraph::induced(std::span<const int> vertices) const {
  std::vector<int> local(static_cast<std::size_t>(size()), -1);
  for (std::size_t k = 0; k < vertices.size(); ++k) local[static_cast<std::size_t>(vertices[k])] = static_cast<int>(k);
  DepGraph g(static_cast<int>(vertices.size()));
  for (std::size_t k = 0; k < vertices.size(); ++k) {
    const int v = vertices[k];
    g.self_overlap_[k] = self_overlap(v);
    for (int w : successors(v)) {
      const int lw = local[static_cast<std::size_t>(w)];
      if (lw >= 0) g.add_arc_unchecked(static_cast<int>(k), lw);
    }
  }
  return g;
}

DepGraph build_dep_graph(const Instance& inst) {
  if (!inst.labeled) throw std::invalid_argument("dependency graphs are defined for labeled instances only");
  const int n = inst.size();
  const double r = inst.radius();
  std::vector<Arc> arcs;
  std::vector<int> self;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (!geometry::discs_overlap(inst.goal_of(i), inst.start_of(j), r)) continue;
      if (i != j) {
        arcs.emplace_back(i, j);
      } else if (!inst.at_goal(i)) {
        self.push_back(i);
      }
    }
  }
  DepGraph g = DepGraph::from_arcs(n, arcs);
  for (int i : self) g.set_self_overlap(i, true);
  return g;
}

std::vector<std::vector<int>> sccs(const DepGraph& g) {
  // Iterative Tarjan so deep chains do not exhaust the call stack.
  const int n = g.size();
  std::vector<int> index(static_cast<std::size_t>(n), -1);
  std::vector<int> low(static_cast<std::size_t>(n), 0);
  std::vector<bool> on_stack(static_cast<std::size_t>(n), false);
  std::vector<int> stack;
  std::vector<std::vector<int>> components;
  int counter = 0;

  struct Frame {
    int v;
    std::size_t next;
  };
  std::vector<Frame> call;

  for (int root = 0; root < n; ++root) {
    if (index[static_cast<std::size_t>(root)] != -1) continue;
    call.push_back({root, 0});
    index[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] = counter++;
    stack.push_back(root);
    on_stack[static_cast<std::size_t>(root)] = true;

    while (!call.empty()) {
      Frame& f = call.back();
      const auto v = static_cast<std::size_t>(f.v);
      const auto& out = g.successors(f.v);
      if (f.next < out.size()) {
        const int w = out[f.next++];
        const auto uw = static_cast<std::size_t>(w);
        if (index[uw] == -1) {
          index[uw] = low[uw] = counter++;
          stack.push_back(w);
          on_stack[uw] = true;
          call.push_back({w, 0});
        } else if (on_stack[uw]) {
          low[v] = std::min(low[v], index[uw]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::vector<int> comp;
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[static_cast<std::size_t>(w)] = false;
          comp.push_back(w);
        } while (w != f.v);
        std::sort(comp.begin(), comp.end());
        components.push_back(std::move(comp));
      }
      const int finished = f.v;
      call.pop_back();
      if (!call.empty()) {
        const auto parent = static_cast<std::size_t>(call.back().v);
        low[parent] = std::min(low[parent], low[static_cast<std::size_t>(finished)]);
      }
    }
  }
  std::sort(components.begin(), components.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return components;
}

std::vector<std::vector<int>> cyclic_sccs(const DepGraph& g) {
  auto all = sccs(g);
  std::erase_if(all, [](const auto& c) { return c.size() < 2; });
  return all;
}

std::vector<int> topological_order(const DepGraph& g) {
  const int n = g.size();
  std::vector<int> indeg(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) indeg[static_cast<std::size_t>(v)] = g.in_degree(v);
  std::priority_queue<int, std::vector<int>, std::greater<>> ready;
  for (int v = 0; v < n; ++v) {
    if (indeg[static_cast<std::size_t>(v)] == 0) ready.push(v);
  }
  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(n));
  while (!ready.empty()) {
    const int v = ready.top();
    ready.pop();
    order.push_back(v);
    for (int w : g.successors(v)) {
      if (--indeg[static_cast<std::size_t>(w)] == 0) ready.push(w);
    }
  }
  if (static_cast<int>(order.size()) != n) throw std::invalid_argument("graph has a directed cycle");
  return order;
}

bool is_acyclic(const DepGraph& g) {
  const int n = g.size();
  std::vector<int> indeg(static_cast<std::size_t>(n));
  std::vector<int> ready;
  for (int v = 0; v < n; ++v) {
    indeg[static_cast<std::size_t>(v)] = g.in_degree(v);
    if (indeg[static_cast<std::size_t>(v)] == 0) ready.push_back(v);
  }
  int seen = 0;
  while (!ready.empty()) {
    const int v = ready.back();
    ready.pop_back();
    ++seen;
    for (int w : g.successors(v)) {
      if (--indeg[static_cast<std::size_t>(w)] == 0) ready.push_back(w);
    }
  }
  return seen == n;
}

bool breaks_all_cycles(const DepGraph& g, std::span<const int> removed) {
  return is_acyclic(g.without(removed));
}

namespace {

// Johnson (1975): for each start vertex s, search the SCC containing s in the
// subgraph induced by vertices >= s, using blocked sets to avoid re-walking
// dead ends.
class JohnsonCycles {
 public:
  JohnsonCycles(const DepGraph& g, std::size_t cap) : g_(g), cap_(cap) {}

  CycleEnumeration run() {
    const int n = g_.size();
    blocked_.assign(static_cast<std::size_t>(n), false);
    blocked_by_.assign(static_cast<std::size_t>(n), {});
    allowed_.assign(static_cast<std::size_t>(n), false);

    for (int s = 0; s < n && !result_.truncated; ++s) {
      // Restrict to the strongly connected component of s within vertices >= s.
      std::vector<int> sub;
      for (int v = s; v < n; ++v) sub.push_back(v);
      const DepGraph h = g_.induced(sub);
      int comp_of_s = -1;
      const auto comps = sccs(h);
      for (std::size_t c = 0; c < comps.size(); ++c) {
        if (comps[c].front() == 0) comp_of_s = static_cast<int>(c);
      }
      const auto& comp = comps[static_cast<std::size_t>(comp_of_s)];
      if (comp.size() < 2) continue;
      std::fill(allowed_.begin(), allowed_.end(), false);
      for (int local : comp) {
        const int v = local + s;
        allowed_[static_cast<std::size_t>(v)] = true;
        blocked_[static_cast<std::size_t>(v)] = false;
        blocked_by_[static_cast<std::size_t>(v)].clear();
      }
      start_ = s;
      circuit(s);
    }
    return std::move(result_);
  }

 private:
  bool circuit(int v) {
    bool found = false;
    path_.push_back(v);
    blocked_[static_cast<std::size_t>(v)] = true;
    for (int w : g_.successors(v)) {
      if (result_.truncated) break;
      if (!allowed_[static_cast<std::size_t>(w)]) continue;
      if (w == start_) {
        if (result_.cycles.size() >= cap_) {
          result_.truncated = true;
          break;
        }
        result_.cycles.push_back(path_);
        found = true;
      } else if (!blocked_[static_cast<std::size_t>(w)]) {
        if (circuit(w)) found = true;
      }
    }
    if (found) {
      unblock(v);
    } else {
      for (int w : g_.successors(v)) {
        if (!allowed_[static_cast<std::size_t>(w)]) continue;
        auto& list = blocked_by_[static_cast<std::size_t>(w)];
        if (std::find(list.begin(), list.end(), v) == list.end()) list.push_back(v);
      }
    }
    path_.pop_back();
    return found;
  }

  void unblock(int u) {
    std::vector<int> work{u};
    while (!work.empty()) {
      const int x = work.back();
      work.pop_back();
      if (!blocked_[static_cast<std::size_t>(x)]) continue;
      blocked_[static_cast<std::size_t>(x)] = false;
      auto& list = blocked_by_[static_cast<std::size_t>(x)];
      for (int w : list) work.push_back(w);
      list.clear();
    }
  }

  const DepGraph& g_;
  std::size_t cap_;
  int start_ = 0;
  std::vector<bool> blocked_;
  std::vector<std::vector<int>> blocked_by_;
  std::vector<bool> allowed_;
  std::vector<int> path_;
  CycleEnumeration result_;
};

}  // namespace

CycleEnumeration simple_cycles(const DepGraph& g, std::size_t cap) {
  if (cap == 0) throw std::invalid_argument("cycle cap must be positive");
  return JohnsonCycles(g, cap).run();
}

DepGraph parse_dep_graph(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      return true;
    }
    return false;
  };
  if (!next_line()) throw ParseError("line 1", "missing header \"n m\"");
  long long n = -1;
  long long m = -1;
  {
    std::istringstream header(line);
    std::string extra;
    if (!(header >> n >> m) || (header >> extra) || n < 0 || m < 0) {
      throw ParseError("line " + std::to_string(line_no), "expected header \"n m\" with non-negative integers");
    }
  }
  std::vector<Arc> arcs;
  for (long long k = 0; k < m; ++k) {
    if (!next_line()) throw ParseError("line " + std::to_string(line_no + 1), "expected " + std::to_string(m) + " arcs");
    std::istringstream row(line);
    long long i = -1;
    long long j = -1;
    std::string extra;
    if (!(row >> i >> j) || (row >> extra)) throw ParseError("line " + std::to_string(line_no), "expected \"i j\"");
    if (i < 0 || j < 0 || i >= n || j >= n) throw ParseError("line " + std::to_string(line_no), "vertex out of range");
    if (i == j) throw ParseError("line " + std::to_string(line_no), "self-loop");
    arcs.emplace_back(static_cast<int>(i), static_cast<int>(j));
  }
  return DepGraph::from_arcs(static_cast<int>(n), arcs);
}

std::string format_dep_graph(const DepGraph& g) {
  std::ostringstream out;
  out << g.size() << ' ' << g.arc_count() << '\n';
  for (const auto& [i, j] : g.arcs()) out << i << ' ' << j << '\n';
  return out.str();
}

}  // namespace toro
