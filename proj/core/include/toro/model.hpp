#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "toro/geometry.hpp"

namespace toro {

using geometry::Point2;
using geometry::Rect;

/// Per-action cost weights: one grasp, one release, and the per-unit cost of
/// end-effector travel.
struct CostModel {
  double grasp = 1.0;
  double release = 1.0;
  double move = 1.0;

  friend bool operator==(const CostModel&, const CostModel&) = default;
};

/// Poses of all objects, indexed by object id, sharing one footprint radius.
struct Arrangement {
  std::vector<Point2> poses;
  double radius = 1.0;

  std::size_t size() const { return poses.size(); }
};

/// A rearrangement problem: move every object from `start` to `goal`,
/// with the end effector leaving `rest_start` and finishing at `rest_goal`.
struct Instance {
  Arrangement start;
  Arrangement goal;
  Point2 rest_start;
  Point2 rest_goal;
  bool labeled = true;
  CostModel cost;
  Rect workspace;

  int size() const { return static_cast<int>(start.poses.size()); }
  double radius() const { return start.radius; }
  const Point2& start_of(int object) const { return start.poses[static_cast<std::size_t>(object)]; }
  const Point2& goal_of(int object) const { return goal.poses[static_cast<std::size_t>(object)]; }

  /// Labeled object whose start pose coincides with its goal. Such objects
  /// are never moved.
  bool at_goal(int object) const;

  /// Number of labeled objects that must move at least once.
  int movable_count() const;
};

/// Problems found in an arrangement. Tangent pairs are warnings only.
struct ArrangementReport {
  std::vector<std::pair<int, int>> collisions;
  std::vector<int> out_of_bounds;
  std::vector<std::pair<int, int>> tangencies;

  bool ok() const { return collisions.empty() && out_of_bounds.empty(); }
  std::string describe() const;
};

ArrangementReport validate_arrangement(const Arrangement& arrangement, const Rect& workspace);

/// Checks the structural invariants of an instance: equal sizes and radii,
/// finite coordinates, and feasible start and goal arrangements. Returns an
/// empty string when the instance is well formed.
std::string instance_problems(const Instance& inst);

/// True when no start pose overlaps any goal pose.
bool is_non_overlapping(const Instance& inst);

enum class PlaceKind { goal, buffer };

/// One pick-and-place: move empty to `pick`, grasp, carry to `place`, release.
struct Action {
  int object = 0;
  Point2 pick;
  Point2 place;
  PlaceKind kind = PlaceKind::goal;

  friend bool operator==(const Action&, const Action&) = default;
};

struct Plan {
  std::vector<Action> actions;

  std::size_t grasps() const { return actions.size(); }
  /// Number of distinct buffer poses visited by the plan.
  int buffers_used() const;

  friend bool operator==(const Plan&, const Plan&) = default;
};

struct PlanCheck {
  bool valid = true;
  std::optional<std::size_t> action;  ///< offending action, if any
  std::string message;

  explicit operator bool() const { return valid; }
};

/// Simulates the plan against the instance and reports the first violation.
PlanCheck plan_is_valid(const Plan& plan, const Instance& inst);

struct ActionLegs {
  double empty = 0.0;   ///< travel to the pick pose
  double loaded = 0.0;  ///< travel while carrying
};

struct PlanCost {
  double total = 0.0;
  double grasp_release_total = 0.0;
  double move_total = 0.0;
  std::vector<ActionLegs> legs;
  double final_leg = 0.0;  ///< last release (or rest start) to rest goal

  /// End-effector path length, without cost weights.
  double distance() const;
};

/// Decomposes the cost of a valid plan. Throws std::invalid_argument when the
/// plan does not validate against the instance.
PlanCost plan_cost(const Plan& plan, const Instance& inst);

/// Path length of the plan without validating it.
double plan_distance(const Plan& plan, const Instance& inst);

/// Deterministic off-table buffer slots: a column just right of the workspace.
std::vector<Point2> buffer_positions(const Instance& inst, int count);

}  // namespace toro
