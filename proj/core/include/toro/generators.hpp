#pragma once

#include <cstdint>
#include <span>

#include "toro/depgraph.hpp"
#include "toro/model.hpp"

namespace toro {

// Random and constructed instances. Every generator is a pure function of
// its arguments; equal seeds give identical output on every platform.

/// 2n pairwise separate discs sampled uniformly inside the workspace; the
/// first n are starts, the rest goals. s_M is the workspace's min corner and
/// g_M its max corner. Throws std::invalid_argument when the discs cannot fit
/// (total disc area above half the workspace) and InfeasibleError when
/// rejection sampling runs out of attempts.
Instance gen_no_overlap(int n, std::uint64_t seed, const Rect& workspace, double radius);

/// floor(avg_degree * n) distinct arcs drawn uniformly among pairs that keep
/// every vertex's in+out degree at most max_degree. Throws
/// std::invalid_argument for impossible parameters and InfeasibleError when
/// sampling keeps reaching dead ends.
DepGraph gen_dep_graph(int n, double avg_degree, int max_degree, std::uint64_t seed);

/// Starts sampled like gen_no_overlap, then each goal is placed next to a few
/// other objects' starts so that the dependency graph has about
/// target_avg_degree * n arcs. Goals never overlap each other or their own
/// start. With target 0 no goal overlaps any start.
Instance gen_overlap(int n, std::uint64_t seed, double target_avg_degree, const Rect& workspace, double radius);

/// Euclidean TSP point set as a non-overlapping instance: points[0] becomes
/// s_M = g_M and each other point p splits into s = p - (eps/2, 0) and
/// g = p + (eps/2, 0) with radius eps/4. Requires 0 < eps < 1/(4(n-1)) and
/// points more than 1.5 eps apart.
Instance reduce_tsp_to_toro_no(std::span<const Point2> points, double epsilon);

/// Instance whose dependency graph is the arc-split graph of `g`: objects
/// 0..V-1 stand for vertices, V + k for the k-th arc (u, v) in lexicographic
/// order, with dependencies u -> V + k -> v. Requires in- and out-degree at
/// most 2 and a strongly connected graph.
Instance reduce_fvs_to_toro(const DepGraph& g, double radius);

/// The arc-split graph that reduce_fvs_to_toro realizes.
DepGraph arc_split_graph(const DepGraph& g);

}  // namespace toro
