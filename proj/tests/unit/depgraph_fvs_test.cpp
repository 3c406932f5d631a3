#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "oracles.hpp"
#include "toro/depgraph.hpp"
#include "toro/errors.hpp"
#include "toro/fvs.hpp"
#include "toro/generators.hpp"

using namespace toro;

namespace {

DepGraph graph(int n, std::vector<Arc> arcs) { return DepGraph::from_arcs(n, arcs); }

Instance swap_instance() {
  Instance inst;
  inst.start.radius = inst.goal.radius = 1.0;
  inst.workspace = {0, 0, 8, 6};
  inst.start.poses = {{2, 2}, {5, 2}};
  inst.goal.poses = {{5, 3.5}, {2, 3.5}};
  return inst;
}

const std::vector<FvsMethod> kAll{FvsMethod::brute_force, FvsMethod::ilp_constraint, FvsMethod::ilp_enumerate,
                                  FvsMethod::msch,        FvsMethod::mch,            FvsMethod::mdh};

}  // namespace

TEST(DepGraph, SwapHasTwoCycle) {
  const DepGraph g = build_dep_graph(swap_instance());
  EXPECT_EQ(g.arcs(), (std::vector<Arc>{{0, 1}, {1, 0}}));
  EXPECT_EQ(sccs(g), (std::vector<std::vector<int>>{{0, 1}}));
  EXPECT_FALSE(is_acyclic(g));
}

TEST(DepGraph, NonOverlappingAndChain) {
  EXPECT_EQ(build_dep_graph(oracle::random_no_overlap(6, 1, true)).arc_count(), 0u);
  Instance chain;
  chain.start.radius = chain.goal.radius = 1.0;
  chain.workspace = {0, 0, 20, 20};
  chain.start.poses = {{2, 2}, {6, 2}};
  chain.goal.poses = {{6, 3.5}, {12, 12}};
  const DepGraph g = build_dep_graph(chain);
  EXPECT_EQ(g.arcs(), (std::vector<Arc>{{0, 1}}));
  EXPECT_TRUE(is_acyclic(g));
}

TEST(DepGraph, MatchesPairwiseOracle) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Instance inst = gen_overlap(8, seed, 1.5, {0, 0, 30, 30}, 1.0);
    EXPECT_EQ(build_dep_graph(inst).arcs(), oracle::dependency_arcs(inst));
  }
}

TEST(DepGraph, UnlabeledThrows) {
  Instance inst = swap_instance();
  inst.labeled = false;
  EXPECT_THROW(build_dep_graph(inst), std::invalid_argument);
}

TEST(DepGraph, Components) {
  EXPECT_EQ(sccs(DepGraph(3)), (std::vector<std::vector<int>>{{0}, {1}, {2}}));
  const DepGraph g = graph(4, {{0, 1}, {1, 2}, {2, 0}});
  EXPECT_EQ(sccs(g), (std::vector<std::vector<int>>{{0, 1, 2}, {3}}));
  EXPECT_EQ(cyclic_sccs(g), (std::vector<std::vector<int>>{{0, 1, 2}}));
  EXPECT_TRUE(is_acyclic(DepGraph(3)));
  EXPECT_TRUE(is_acyclic(graph(2, {{0, 1}})));
}

TEST(DepGraph, SimpleCycles) {
  EXPECT_EQ(simple_cycles(graph(2, {{0, 1}, {1, 0}})).cycles, (std::vector<std::vector<int>>{{0, 1}}));
  std::vector<Arc> complete;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      if (a != b) complete.emplace_back(a, b);
    }
  }
  const auto c = simple_cycles(graph(3, complete));
  EXPECT_EQ(c.cycles.size(), 5u);
  EXPECT_FALSE(c.truncated);
  EXPECT_TRUE(simple_cycles(graph(3, {{0, 1}, {1, 2}})).cycles.empty());
  const auto capped = simple_cycles(graph(3, complete), 2);
  EXPECT_EQ(capped.cycles.size(), 2u);
  EXPECT_TRUE(capped.truncated);
}

TEST(DepGraph, TextFormatRoundTrip) {
  const DepGraph g = graph(4, {{0, 1}, {1, 2}, {3, 0}});
  EXPECT_EQ(parse_dep_graph(format_dep_graph(g)), g);
  EXPECT_THROW(parse_dep_graph("2 1\n0 5\n"), ParseError);
}

TEST(Fvs, SmallCases) {
  const DepGraph two = graph(2, {{0, 1}, {1, 0}});
  const DepGraph dag = graph(3, {{0, 1}, {1, 2}});
  const DepGraph disjoint = graph(4, {{0, 1}, {1, 0}, {2, 3}, {3, 2}});
  const DepGraph tri = graph(3, {{0, 1}, {1, 2}, {2, 0}});
  for (FvsMethod m : kAll) {
    SCOPED_TRACE(to_string(m));
    EXPECT_EQ(solve_fvs(two, m).vertices.size(), 1u);
    EXPECT_TRUE(solve_fvs(dag, m).vertices.empty());
    EXPECT_TRUE(solve_fvs(DepGraph(0), m).vertices.empty());
    EXPECT_EQ(solve_fvs(disjoint, m).vertices.size(), 2u);
    EXPECT_EQ(solve_fvs(tri, m).vertices.size(), 1u);
  }
}

TEST(Fvs, HeuristicShapes) {
  // Two triangles sharing vertex 0.
  const DepGraph bowtie = graph(5, {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {3, 4}, {4, 0}});
  EXPECT_EQ(fvs_msch(bowtie).vertices, std::vector<int>{0});
  // Star of 2-cycles through hub 2.
  const DepGraph star = graph(5, {{2, 0}, {0, 2}, {2, 1}, {1, 2}, {2, 3}, {3, 2}, {2, 4}, {4, 2}});
  EXPECT_EQ(fvs_mdh(star).vertices, std::vector<int>{2});
  EXPECT_EQ(fvs_msch(star).vertices, std::vector<int>{2});
}

TEST(Fvs, ExactMethodsMatchSubsetOracle) {
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    const int n = 3 + static_cast<int>(seed % 8);
    const double avg = 1.0 + static_cast<double>(seed % 3);
    const auto arcs = oracle::random_arcs(n, avg / (n - 1), seed);
    const DepGraph g = DepGraph::from_arcs(n, arcs);
    const int opt = oracle::min_fvs_size(n, arcs);
    for (FvsMethod m : kAll) {
      const auto r = solve_fvs(g, m);
      EXPECT_TRUE(oracle::acyclic_without(n, arcs, r.vertices)) << to_string(m) << " seed " << seed;
      if (is_exact(m)) {
        EXPECT_EQ(static_cast<int>(r.vertices.size()), opt) << to_string(m) << " seed " << seed;
      } else {
        EXPECT_GE(static_cast<int>(r.vertices.size()), opt) << to_string(m) << " seed " << seed;
      }
    }
    EXPECT_EQ(min_fvs_size(g), opt);
    ++checked;
  }
  EXPECT_EQ(checked, 120);
}

TEST(Fvs, EnumerationMatchesOracle) {
  EXPECT_EQ(enumerate_optimal_fvs(graph(2, {{0, 1}, {1, 0}})).sets, (std::vector<std::vector<int>>{{0}, {1}}));
  EXPECT_EQ(enumerate_optimal_fvs(graph(3, {{0, 1}, {1, 2}, {2, 0}})).sets.size(), 3u);
  EXPECT_EQ(enumerate_optimal_fvs(DepGraph(3)).sets, (std::vector<std::vector<int>>{{}}));
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const int n = 4 + static_cast<int>(seed % 6);
    const auto arcs = oracle::random_arcs(n, 2.0 / (n - 1), 1000 + seed);
    const auto e = enumerate_optimal_fvs(DepGraph::from_arcs(n, arcs));
    EXPECT_FALSE(e.truncated);
    EXPECT_EQ(e.sets, oracle::all_min_fvs(n, arcs)) << "seed " << seed;
  }
}

TEST(Fvs, EnumerationCap) {
  // Three disjoint triangles: 27 optimal sets.
  std::vector<Arc> arcs;
  for (int t = 0; t < 3; ++t) {
    arcs.insert(arcs.end(), {{3 * t, 3 * t + 1}, {3 * t + 1, 3 * t + 2}, {3 * t + 2, 3 * t}});
  }
  const DepGraph g = DepGraph::from_arcs(9, arcs);
  EXPECT_EQ(enumerate_optimal_fvs(g).sets.size(), 27u);
  const auto capped = enumerate_optimal_fvs(g, 10);
  EXPECT_EQ(capped.sets.size(), 10u);
  EXPECT_TRUE(capped.truncated);
}

TEST(Fvs, BruteForceGuard) {
  std::vector<Arc> ring;
  for (int v = 0; v < 25; ++v) ring.emplace_back(v, (v + 1) % 25);
  EXPECT_THROW(fvs_brute_force(DepGraph::from_arcs(25, ring)), SizeGuardError);
}

TEST(Fvs, MinGrasps) {
  EXPECT_EQ(min_grasps(oracle::random_no_overlap(5, 3, true)), 5);
  EXPECT_EQ(min_grasps(swap_instance()), 3);
}

TEST(Fvs, MethodNames) {
  for (FvsMethod m : kAll) EXPECT_EQ(parse_fvs_method(to_string(m)), m);
  EXPECT_FALSE(parse_fvs_method("greedy").has_value());
}
