#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "toro/bip.hpp"
#include "toro/fvs.hpp"
#include "toro/model.hpp"
#include "toro/routing.hpp"

namespace toro {

/// Tour-based planner for instances where no start overlaps a goal. Labeled
/// instances use the labeled tour graph, unlabeled ones the unlabeled graph.
/// Exact within `limits`, heuristic beyond. Throws std::invalid_argument for
/// overlapping instances.
Plan toro_no_tsp(const Instance& inst, std::uint64_t seed = 0, const TourLimits& limits = {});

struct MinDistOptions {
  std::size_t max_expansions = 20'000'000;
};

/// Shortest plan in which every member of `fvs` goes start -> buffer -> goal
/// and every other movable object goes start -> goal. Exact best-first search
/// over object locations, buffer occupancy and hand position. Buffer poses
/// come from buffer_positions(inst, |fvs|). Throws std::invalid_argument when
/// `fvs` leaves a dependency cycle, SolverLimitError past max_expansions.
Plan min_dist_plan(const Instance& inst, std::span<const int> fvs, const MinDistOptions& options = {});

/// The same optimum through the time-expanded 0/1 model: occupancy variables
/// per step, one pick-and-place per step, and empty-hand move variables
/// between consecutive steps. Practical only for small instances.
bip::BinaryProgram build_min_dist_model(const Instance& inst, std::span<const int> fvs);
Plan min_dist_plan_model(const Instance& inst, std::span<const int> fvs, const bip::SolveOptions& options = {});

/// Valid plan without distance optimization: buffer the fvs objects in
/// ascending id, then place any object whose remaining blockers have all
/// left (lowest id first), then bring buffered objects to their goals.
Plan feasible_plan(const Instance& inst, std::span<const int> fvs);

/// Dependency graph, one feedback vertex set by `method`, then min_dist_plan.
Plan toro_fvs_single(const Instance& inst, FvsMethod method = FvsMethod::ilp_enumerate,
                     const FvsOptions& fvs_options = {}, const MinDistOptions& options = {});

struct OptimalPlan {
  Plan plan;
  std::vector<int> fvs;    ///< the optimal set the plan buffers
  bool truncated = false;  ///< FVS enumeration stopped at the cap
};

/// Minimum-distance plan over every minimum feedback vertex set.
OptimalPlan toro_optimal(const Instance& inst, std::size_t cap = 1000, const FvsOptions& fvs_options = {},
                         const MinDistOptions& options = {});

inline constexpr int kBruteForcePlanObjects = 5;
inline constexpr int kBruteForceExtraActions = 3;

/// Exhaustive oracle. Tries plan lengths from the number of movable objects
/// up to max_actions; objects go start -> goal or start -> buffer -> goal, so
/// a plan of length A parks A - n objects in A - n slots. Returns the
/// lexicographically first plan of the fewest actions and then the shortest
/// distance, or nullopt when none exists. `buffer_eligible` limits which
/// objects may be parked. Throws SizeGuardError beyond 5 objects or n + 3
/// actions.
std::optional<Plan> brute_force_plan(const Instance& inst, int max_actions,
                                     std::optional<std::vector<int>> buffer_eligible = std::nullopt);

}  // namespace toro
