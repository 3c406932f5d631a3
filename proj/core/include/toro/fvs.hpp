#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "toro/depgraph.hpp"
#include "toro/model.hpp"

namespace toro {

enum class FvsMethod { brute_force, ilp_constraint, ilp_enumerate, msch, mch, mdh };

/// Short CLI names: brute, ilp-c, ilp-e, msch, mch, mdh.
const char* to_string(FvsMethod method);
std::optional<FvsMethod> parse_fvs_method(std::string_view name);
bool is_exact(FvsMethod method);

/// A feedback vertex set. Removing `vertices` always leaves the graph acyclic;
/// every solver checks this before returning.
struct FvsResult {
  std::vector<int> vertices;  ///< sorted object ids
  FvsMethod method = FvsMethod::brute_force;
  bool proven_optimal = false;
};

struct FvsOptions {
  std::size_t cycle_cap = kDefaultCycleCap;
  std::chrono::duration<double> time_budget{60.0};
};

inline constexpr int kBruteForceFvsLimit = 20;

/// Smallest set by enumeration in increasing size; lexicographically smallest
/// among ties. Throws SizeGuardError above kBruteForceFvsLimit vertices.
FvsResult fvs_brute_force(const DepGraph& g);

/// Vertex-split ordering model, solved per strongly connected component.
/// Throws SolverLimitError on timeout.
FvsResult fvs_ilp_constraint(const DepGraph& g, const FvsOptions& options = {});

/// Cycle hitting-set model over all simple cycles. Throws SolverLimitError
/// when a component has more simple cycles than the cap.
FvsResult fvs_ilp_enumerate(const DepGraph& g, const FvsOptions& options = {});

/// Removes the vertex lying on the most simple cycles until acyclic.
FvsResult fvs_msch(const DepGraph& g, const FvsOptions& options = {});

/// Removes the vertex with the most marked cycle-closing out-edges until
/// acyclic, recounting after each removal.
FvsResult fvs_mch(const DepGraph& g);

/// Removes the cyclic vertex with the largest in-degree * out-degree.
FvsResult fvs_mdh(const DepGraph& g);

FvsResult solve_fvs(const DepGraph& g, FvsMethod method, const FvsOptions& options = {});

struct FvsEnumeration {
  std::vector<std::vector<int>> sets;  ///< distinct, equal size, lexicographic order
  bool truncated = false;              ///< stopped at the cap
};

/// All minimum feedback vertex sets, up to `cap`, found by re-solving each
/// component with no-good cuts.
FvsEnumeration enumerate_optimal_fvs(const DepGraph& g, std::size_t cap = 1000, const FvsOptions& options = {});

/// Size of a minimum feedback vertex set (exact; hitting-set model, falling
/// back to the ordering model when a component has too many cycles).
int min_fvs_size(const DepGraph& g, const FvsOptions& options = {});

/// Fewest grasps that solve a labeled instance: one per object not already at
/// its goal plus the minimum feedback vertex set of the dependency graph.
int min_grasps(const Instance& inst, const FvsOptions& options = {});

}  // namespace toro
