#include "toro/model.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace toro {

using geometry::classify_contact;
using geometry::DiscContact;
using geometry::dist;
using geometry::same_pose;

bool Instance::at_goal(int object) const {
  return labeled && same_pose(start_of(object), goal_of(object));
}

int Instance::movable_count() const {
  int count = 0;
  for (int i = 0; i < size(); ++i) {
    if (!at_goal(i)) ++count;
  }
  return count;
}

std::string ArrangementReport::describe() const {
  std::ostringstream out;
  for (const auto& [a, b] : collisions) out << "overlap: pair (" << a << "," << b << ")\n";
  for (int i : out_of_bounds) out << "out of bounds: object " << i << "\n";
  for (const auto& [a, b] : tangencies) out << "warning: tangent pair (" << a << "," << b << ")\n";
  return out.str();
}

ArrangementReport validate_arrangement(const Arrangement& arrangement, const Rect& workspace) {
  ArrangementReport report;
  const auto n = static_cast<int>(arrangement.size());
  for (int i = 0; i < n; ++i) {
    const auto& p = arrangement.poses[static_cast<std::size_t>(i)];
    if (!geometry::is_finite(p) || !workspace.contains(p)) report.out_of_bounds.push_back(i);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      switch (classify_contact(arrangement.poses[static_cast<std::size_t>(i)],
                               arrangement.poses[static_cast<std::size_t>(j)], arrangement.radius)) {
        case DiscContact::overlapping:
          report.collisions.emplace_back(i, j);
          break;
        case DiscContact::tangent:
          report.tangencies.emplace_back(i, j);
          break;
        case DiscContact::separate:
          break;
      }
    }
  }
  return report;
}

std::string instance_problems(const Instance& inst) {
  std::ostringstream out;
  if (!(inst.start.radius > 0.0) || !(inst.goal.radius > 0.0)) out << "radius must be positive\n";
  if (inst.start.radius != inst.goal.radius) out << "start and goal radii differ\n";
  if (inst.start.size() != inst.goal.size()) out << "start and goal sizes differ\n";
  if (!geometry::is_finite(inst.rest_start) || !geometry::is_finite(inst.rest_goal)) {
    out << "rest poses must be finite\n";
  }
  if (!(inst.workspace.min_x <= inst.workspace.max_x && inst.workspace.min_y <= inst.workspace.max_y)) {
    out << "workspace rectangle is empty\n";
  }
  const auto& c = inst.cost;
  if (!(c.grasp >= 0.0 && c.release >= 0.0 && c.move >= 0.0)) out << "cost weights must be >= 0\n";
  if (!out.str().empty()) return out.str();

  const auto start_report = validate_arrangement(inst.start, inst.workspace);
  if (!start_report.ok()) out << "start arrangement:\n" << start_report.describe();
  const auto goal_report = validate_arrangement(inst.goal, inst.workspace);
  if (!goal_report.ok()) out << "goal arrangement:\n" << goal_report.describe();
  return out.str();
}

bool is_non_overlapping(const Instance& inst) {
  for (const auto& s : inst.start.poses) {
    for (const auto& g : inst.goal.poses) {
      if (geometry::discs_overlap(s, g, inst.radius())) return false;
    }
  }
  return true;
}

int Plan::buffers_used() const {
  std::vector<Point2> seen;
  for (const auto& a : actions) {
    if (a.kind != PlaceKind::buffer) continue;
    const bool known = std::any_of(seen.begin(), seen.end(),
                                   [&](const Point2& p) { return same_pose(p, a.place); });
    if (!known) seen.push_back(a.place);
  }
  return static_cast<int>(seen.size());
}

namespace {

PlanCheck fail(std::size_t k, std::string message) {
  return PlanCheck{false, k, "action " + std::to_string(k) + ": " + std::move(message)};
}

}  // namespace

PlanCheck plan_is_valid(const Plan& plan, const Instance& inst) {
  const int n = inst.size();
  const double r = inst.radius();
  std::vector<Point2> current = inst.start.poses;

  for (std::size_t k = 0; k < plan.actions.size(); ++k) {
    const Action& a = plan.actions[k];
    if (a.object < 0 || a.object >= n) return fail(k, "unknown object " + std::to_string(a.object));
    const auto obj = static_cast<std::size_t>(a.object);
    if (!geometry::is_finite(a.pick) || !geometry::is_finite(a.place)) {
      return fail(k, "non-finite pose");
    }
    if (inst.at_goal(a.object)) return fail(k, "object " + std::to_string(a.object) + " is already at its goal");
    if (!same_pose(a.pick, current[obj])) {
      return fail(k, "pick does not match the current pose of object " + std::to_string(a.object));
    }
    if (same_pose(a.pick, a.place)) return fail(k, "place equals pick");

    if (a.kind == PlaceKind::goal) {
      const bool on_goal =
          inst.labeled ? same_pose(a.place, inst.goal_of(a.object))
                       : std::any_of(inst.goal.poses.begin(), inst.goal.poses.end(),
                                     [&](const Point2& g) { return same_pose(g, a.place); });
      if (!on_goal) return fail(k, "goal place is not a goal pose of object " + std::to_string(a.object));
    } else if (inst.workspace.contains(a.place)) {
      return fail(k, "buffer place lies inside the workspace");
    }

    for (int o = 0; o < n; ++o) {
      if (o == a.object) continue;
      if (geometry::discs_overlap(a.place, current[static_cast<std::size_t>(o)], r)) {
        return fail(k, "collision at action " + std::to_string(k) + " with object " + std::to_string(o));
      }
    }
    current[obj] = a.place;
  }

  if (inst.labeled) {
    for (int i = 0; i < n; ++i) {
      if (!same_pose(current[static_cast<std::size_t>(i)], inst.goal_of(i))) {
        return PlanCheck{false, std::nullopt, "object " + std::to_string(i) + " does not end at its goal"};
      }
    }
  } else {
    std::vector<bool> filled(static_cast<std::size_t>(n), false);
    for (int i = 0; i < n; ++i) {
      bool matched = false;
      for (int g = 0; g < n && !matched; ++g) {
        if (!filled[static_cast<std::size_t>(g)] && same_pose(current[static_cast<std::size_t>(i)], inst.goal_of(g))) {
          filled[static_cast<std::size_t>(g)] = true;
          matched = true;
        }
      }
      if (!matched) {
        return PlanCheck{false, std::nullopt, "object " + std::to_string(i) + " does not end on a goal"};
      }
    }
  }
  return PlanCheck{};
}

double PlanCost::distance() const {
  double d = final_leg;
  for (const auto& leg : legs) d += leg.empty + leg.loaded;
  return d;
}

double plan_distance(const Plan& plan, const Instance& inst) {
  double d = 0.0;
  Point2 hand = inst.rest_start;
  for (const auto& a : plan.actions) {
    d += dist(hand, a.pick) + dist(a.pick, a.place);
    hand = a.place;
  }
  return d + dist(hand, inst.rest_goal);
}

PlanCost plan_cost(const Plan& plan, const Instance& inst) {
  if (const auto check = plan_is_valid(plan, inst); !check) {
    throw std::invalid_argument("invalid plan: " + check.message);
  }
  PlanCost cost;
  Point2 hand = inst.rest_start;
  cost.legs.reserve(plan.actions.size());
  for (const auto& a : plan.actions) {
    cost.legs.push_back(ActionLegs{dist(hand, a.pick), dist(a.pick, a.place)});
    hand = a.place;
  }
  cost.final_leg = dist(hand, inst.rest_goal);
  cost.grasp_release_total = static_cast<double>(plan.actions.size()) * (inst.cost.grasp + inst.cost.release);
  cost.move_total = inst.cost.move * cost.distance();
  cost.total = cost.grasp_release_total + cost.move_total;
  return cost;
}

std::vector<Point2> buffer_positions(const Instance& inst, int count) {
  if (count < 0) throw std::invalid_argument("buffer count must be non-negative");
  const double r = inst.radius();
  const double margin = r;
  const double x = inst.workspace.max_x + 2.0 * r + margin;
  std::vector<Point2> slots;
  slots.reserve(static_cast<std::size_t>(count));
  for (int j = 0; j < count; ++j) {
    slots.push_back(Point2{x, inst.workspace.min_y + j * (2.0 * r + margin)});
  }
  return slots;
}

}  // namespace toro
