#include <gtest/gtest.h>

#include <stdexcept>

#include "oracles.hpp"
#include "toro/geometry.hpp"
#include "toro/io.hpp"
#include "toro/model.hpp"
#include "toro/errors.hpp"

using namespace toro;
using geometry::DiscContact;

namespace {

Instance single(Point2 s, Point2 g, Point2 rs, Point2 rg) {
  Instance inst;
  inst.start.poses = {s};
  inst.goal.poses = {g};
  inst.start.radius = inst.goal.radius = 0.25;
  inst.rest_start = rs;
  inst.rest_goal = rg;
  inst.workspace = {-1, -1, 10, 10};
  return inst;
}

Instance swap_instance() {
  Instance inst;
  inst.start.radius = inst.goal.radius = 1.0;
  inst.workspace = {0, 0, 8, 6};
  inst.start.poses = {{2, 2}, {5, 2}};
  inst.goal.poses = {{5, 3.5}, {2, 3.5}};
  return inst;
}

}  // namespace

TEST(Geometry, Distance) {
  EXPECT_DOUBLE_EQ(geometry::dist({0, 0}, {3, 4}), 5.0);
  EXPECT_DOUBLE_EQ(geometry::dist({1, 1}, {1, 1}), 0.0);
  EXPECT_DOUBLE_EQ(geometry::dist({0, 0}, {1, 0}), 1.0);
}

TEST(Geometry, OverlapIsStrict) {
  EXPECT_TRUE(geometry::discs_overlap({0, 0}, {1.5, 0}, 1.0));
  EXPECT_FALSE(geometry::discs_overlap({0, 0}, {2, 0}, 1.0));
  EXPECT_TRUE(geometry::discs_overlap({0, 0}, {0, 0}, 0.5));
  EXPECT_EQ(geometry::classify_contact({0, 0}, {2, 0}, 1.0), DiscContact::tangent);
  EXPECT_EQ(geometry::classify_contact({0, 0}, {2 + 1e-12, 0}, 1.0), DiscContact::tangent);
  EXPECT_EQ(geometry::classify_contact({0, 0}, {2.1, 0}, 1.0), DiscContact::separate);
  EXPECT_THROW(geometry::discs_overlap({0, 0}, {1, 0}, 0.0), std::invalid_argument);
  EXPECT_THROW(geometry::discs_overlap({0, 0}, {1, 0}, -1.0), std::invalid_argument);
}

TEST(Model, ValidateArrangement) {
  const Rect ws{0, 0, 10, 10};
  EXPECT_TRUE(validate_arrangement({{{0, 0}, {3, 0}}, 1.0}, ws).ok());
  const auto bad = validate_arrangement({{{0, 0}, {1, 0}}, 1.0}, ws);
  ASSERT_EQ(bad.collisions.size(), 1u);
  EXPECT_EQ(bad.collisions[0], std::make_pair(0, 1));
  EXPECT_TRUE(validate_arrangement({{}, 1.0}, ws).ok());
  const auto outside = validate_arrangement({{{11, 0}}, 1.0}, ws);
  EXPECT_EQ(outside.out_of_bounds, std::vector<int>{0});
  const auto touching = validate_arrangement({{{0, 0}, {2, 0}}, 1.0}, ws);
  EXPECT_TRUE(touching.ok());
  EXPECT_EQ(touching.tangencies.size(), 1u);
}

TEST(Model, PlanCostDecomposition) {
  Instance inst = single({1, 0}, {2, 0}, {0, 0}, {3, 0});
  inst.cost = {0.5, 0.5, 1.0};
  const Plan plan{{Action{0, {1, 0}, {2, 0}, PlaceKind::goal}}};
  const PlanCost c = plan_cost(plan, inst);
  EXPECT_DOUBLE_EQ(c.total, 4.0);
  EXPECT_DOUBLE_EQ(c.grasp_release_total, 1.0);
  EXPECT_DOUBLE_EQ(c.move_total, 3.0);
  ASSERT_EQ(c.legs.size(), 1u);
  EXPECT_DOUBLE_EQ(c.legs[0].empty, 1.0);
  EXPECT_DOUBLE_EQ(c.legs[0].loaded, 1.0);
  EXPECT_DOUBLE_EQ(c.final_leg, 1.0);
}

TEST(Model, EmptyPlanCostsFinalLegOnly) {
  Instance inst;
  inst.rest_start = {0, 0};
  inst.rest_goal = {3, 4};
  EXPECT_DOUBLE_EQ(plan_cost(Plan{}, inst).total, 5.0);
}

TEST(Model, InvalidPlanCostThrows) {
  const Instance inst = single({1, 0}, {2, 0}, {0, 0}, {3, 0});
  const Plan wrong{{Action{0, {5, 5}, {2, 0}, PlaceKind::goal}}};
  EXPECT_THROW(plan_cost(wrong, inst), std::invalid_argument);
}

TEST(Model, PlanValidity) {
  const Instance one = single({1, 0}, {2, 0}, {0, 0}, {3, 0});
  EXPECT_TRUE(plan_is_valid(Plan{{Action{0, {1, 0}, {2, 0}, PlaceKind::goal}}}, one));

  Instance swap = swap_instance();
  const Plan direct{{Action{0, {2, 2}, {5, 3.5}, PlaceKind::goal}, Action{1, {5, 2}, {2, 3.5}, PlaceKind::goal}}};
  const PlanCheck check = plan_is_valid(direct, swap);
  EXPECT_FALSE(check);
  ASSERT_TRUE(check.action.has_value());
  EXPECT_EQ(*check.action, 0u);
  EXPECT_NE(check.message.find("collision at action 0"), std::string::npos);

  const Point2 slot = buffer_positions(swap, 1)[0];
  const Plan buffered{{Action{1, {5, 2}, slot, PlaceKind::buffer}, Action{0, {2, 2}, {5, 3.5}, PlaceKind::goal},
                       Action{1, slot, {2, 3.5}, PlaceKind::goal}}};
  EXPECT_TRUE(plan_is_valid(buffered, swap)) << plan_is_valid(buffered, swap).message;
  EXPECT_EQ(oracle::simulate(buffered, swap), "");
  EXPECT_EQ(buffered.buffers_used(), 1);
}

TEST(Model, PlanValidityAgreesWithSimulator) {
  // Random action sequences on small overlapping scenes.
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    Instance inst = swap_instance();
    inst.start.poses.push_back({7, 1});
    inst.goal.poses.push_back({7, 5});
    const auto slots = buffer_positions(inst, 2);
    std::vector<Point2> where = inst.start.poses;
    Plan plan;
    std::uint64_t state = seed * 2654435761u + 1;
    for (int k = 0; k < 4; ++k) {
      state = state * 6364136223846793005ULL + 1442695040888963407ULL;
      const int obj = static_cast<int>((state >> 33) % 3);
      const int target = static_cast<int>((state >> 40) % 3);
      const bool to_goal = target == 0;
      const Point2 place = to_goal ? inst.goal_of(obj) : slots[static_cast<std::size_t>(target - 1)];
      if (geometry::same_pose(where[static_cast<std::size_t>(obj)], place)) continue;
      plan.actions.push_back(Action{obj, where[static_cast<std::size_t>(obj)], place,
                                    to_goal ? PlaceKind::goal : PlaceKind::buffer});
      where[static_cast<std::size_t>(obj)] = place;
    }
    EXPECT_EQ(static_cast<bool>(plan_is_valid(plan, inst)), oracle::simulate(plan, inst).empty()) << "seed " << seed;
  }
}

TEST(Model, BufferPositions) {
  Instance inst;
  inst.start.radius = inst.goal.radius = 1.0;
  inst.workspace = {0, 0, 10, 10};
  EXPECT_TRUE(buffer_positions(inst, 0).empty());
  const auto two = buffer_positions(inst, 2);
  ASSERT_EQ(two.size(), 2u);
  EXPECT_EQ(two[0], (Point2{13, 0}));
  EXPECT_EQ(two[1], (Point2{13, 3}));

  const Instance random = oracle::random_no_overlap(12, 4, true, 10.0, 0.5);
  const auto slots = buffer_positions(random, 12);
  for (const auto& b : slots) {
    for (const auto& p : random.start.poses) EXPECT_FALSE(geometry::discs_overlap(b, p, 0.5));
    for (const auto& p : random.goal.poses) EXPECT_FALSE(geometry::discs_overlap(b, p, 0.5));
  }
  for (std::size_t a = 0; a < slots.size(); ++a) {
    for (std::size_t b = a + 1; b < slots.size(); ++b) EXPECT_FALSE(geometry::discs_overlap(slots[a], slots[b], 0.5));
  }
}

TEST(Model, InstanceProblemsAndAtGoal) {
  Instance inst = single({1, 0}, {1, 0}, {0, 0}, {0, 0});
  EXPECT_EQ(instance_problems(inst), "");
  EXPECT_TRUE(inst.at_goal(0));
  EXPECT_EQ(inst.movable_count(), 0);
  inst.goal.poses.push_back({4, 4});
  EXPECT_NE(instance_problems(inst), "");
}

TEST(Io, InstanceRoundTrip) {
  Instance inst = swap_instance();
  inst.rest_start = {0.5, 0.25};
  inst.rest_goal = {7, 1};
  inst.cost = {0.5, 1.5, 2.0};
  const Instance back = io::parse_instance(io::format_instance(inst));
  EXPECT_EQ(back.start.poses, inst.start.poses);
  EXPECT_EQ(back.goal.poses, inst.goal.poses);
  EXPECT_EQ(back.rest_start, inst.rest_start);
  EXPECT_EQ(back.rest_goal, inst.rest_goal);
  EXPECT_EQ(back.workspace, inst.workspace);
  EXPECT_EQ(back.cost, inst.cost);
  EXPECT_EQ(back.labeled, inst.labeled);
  EXPECT_DOUBLE_EQ(back.radius(), inst.radius());
}

TEST(Io, PlanRoundTrip) {
  const Plan plan{{Action{1, {5, 2}, {13, 0}, PlaceKind::buffer}, Action{0, {2, 2}, {5, 3.5}, PlaceKind::goal}}};
  const io::PlanFile back = io::parse_plan(io::format_plan(plan, 12.5));
  EXPECT_EQ(back.plan, plan);
  ASSERT_TRUE(back.cost.has_value());
  EXPECT_DOUBLE_EQ(*back.cost, 12.5);
}

TEST(Io, MalformedInputNamesField) {
  try {
    io::parse_instance(R"({"radius": 1, "workspace": [0,0,1,1], "rest_start": [0,0], "rest_goal": [0,0],
                          "objects": [{"id": 0, "start": [0, "x"], "goal": [1,1]}]})");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.where(), "instance.objects[0].start[1]");
  }
  EXPECT_THROW(io::parse_instance("{not json"), ParseError);
  EXPECT_THROW(io::parse_plan(R"({"actions": [{"object": 0}]})"), ParseError);
}
