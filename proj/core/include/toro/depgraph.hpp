#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "toro/model.hpp"

namespace toro {

using Arc = std::pair<int, int>;

/// Directed dependency graph over objects. Arc (i, j) means object j must
/// leave its start before object i can be placed at its goal.
class DepGraph {
 public:
  DepGraph() = default;
  explicit DepGraph(int vertex_count);

  /// Builds a graph from an arc list. Duplicate arcs collapse; self-loops and
  /// out-of-range endpoints throw std::invalid_argument.
  static DepGraph from_arcs(int vertex_count, std::span<const Arc> arcs);

  int size() const { return static_cast<int>(succ_.size()); }
  std::size_t arc_count() const { return arc_count_; }
  const std::vector<int>& successors(int v) const { return succ_[static_cast<std::size_t>(v)]; }
  const std::vector<int>& predecessors(int v) const { return pred_[static_cast<std::size_t>(v)]; }
  bool has_arc(int from, int to) const;
  /// All arcs in lexicographic order.
  std::vector<Arc> arcs() const;

  int out_degree(int v) const { return static_cast<int>(successors(v).size()); }
  int in_degree(int v) const { return static_cast<int>(predecessors(v).size()); }

  /// Object whose own start overlaps its own goal. Recorded, never an arc.
  bool self_overlap(int v) const { return self_overlap_[static_cast<std::size_t>(v)]; }
  void set_self_overlap(int v, bool flag) { self_overlap_[static_cast<std::size_t>(v)] = flag; }

  /// Same vertex ids, with every arc touching a removed vertex dropped.
  DepGraph without(std::span<const int> removed) const;

  /// Subgraph induced by `vertices`, renumbered 0..k-1 in the given order.
  DepGraph induced(std::span<const int> vertices) const;

  friend bool operator==(const DepGraph&, const DepGraph&) = default;

 private:
  void add_arc_unchecked(int from, int to);

  std::vector<std::vector<int>> succ_;
  std::vector<std::vector<int>> pred_;
  std::vector<bool> self_overlap_;
  std::size_t arc_count_ = 0;
};

/// Dependency graph of a labeled instance. Throws std::invalid_argument for
/// unlabeled instances.
DepGraph build_dep_graph(const Instance& inst);

/// Strongly connected components (Tarjan). Each component is sorted and the
/// list is ordered by smallest member.
std::vector<std::vector<int>> sccs(const DepGraph& g);

/// Components that contain at least one cycle.
std::vector<std::vector<int>> cyclic_sccs(const DepGraph& g);

bool is_acyclic(const DepGraph& g);

/// True when removing `removed` leaves the graph acyclic.
bool breaks_all_cycles(const DepGraph& g, std::span<const int> removed);

/// A topological order of an acyclic graph, smallest ready vertex first.
/// Throws std::invalid_argument if the graph has a cycle.
std::vector<int> topological_order(const DepGraph& g);

struct CycleEnumeration {
  std::vector<std::vector<int>> cycles;  ///< each starts at its smallest vertex
  bool truncated = false;                ///< stopped at the cap
};

inline constexpr std::size_t kDefaultCycleCap = 1'000'000;

/// Simple directed cycles via Johnson's algorithm, stopping after `cap`.
CycleEnumeration simple_cycles(const DepGraph& g, std::size_t cap = kDefaultCycleCap);

/// Fixture text format: "n m" then m lines "i j" (0-based).
DepGraph parse_dep_graph(std::string_view text);
std::string format_dep_graph(const DepGraph& g);

}  // namespace toro
