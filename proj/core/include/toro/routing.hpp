#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "toro/model.hpp"

namespace toro {

enum class TourKind { labeled, unlabeled };
enum class VertexTag { rest_start, rest_goal, rest_link, start, goal, link };

struct TourVertex {
  VertexTag tag = VertexTag::start;
  int object = -1;  ///< -1 for the three rest vertices
  Point2 pos;
};

/// Weighted undirected tour graph. Vertex ids: 0 = s_M, 1 = g_M, 2 = u_0,
/// 3+i = s_i, 3+n+i = g_i, and for the labeled kind 3+2n+i = u_i. Pairs with
/// no edge are simply absent; there are no infinite weights.
class TourGraph {
 public:
  TourKind kind() const { return kind_; }
  int objects() const { return n_; }
  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  const TourVertex& vertex(int v) const { return vertices_[static_cast<std::size_t>(v)]; }

  static constexpr int rest_start() { return 0; }
  static constexpr int rest_goal() { return 1; }
  static constexpr int rest_link() { return 2; }
  int start(int i) const { return 3 + i; }
  int goal(int i) const { return 3 + n_ + i; }
  int link(int i) const { return 3 + 2 * n_ + i; }

  std::optional<double> weight(int a, int b) const;
  bool has_edge(int a, int b) const { return weight(a, b).has_value(); }
  std::size_t edge_count() const;

 private:
  friend TourGraph build_g_no(const Instance&);
  friend TourGraph build_g_uno(const Instance&);

  TourKind kind_ = TourKind::labeled;
  int n_ = 0;
  std::vector<TourVertex> vertices_;
  std::vector<std::vector<std::optional<double>>> w_;
};

/// Labeled tour graph. Throws std::invalid_argument for overlapping or
/// unlabeled instances.
TourGraph build_g_no(const Instance& inst);

/// Unlabeled tour graph (the instance's labels are ignored). Throws
/// std::invalid_argument for overlapping instances.
TourGraph build_g_uno(const Instance& inst);

/// A Hamiltonian cycle through the tour graph, starting at s_M.
struct Tour {
  std::vector<int> cycle;
  double weight = 0.0;
};

/// Sum of edge weights around the cycle. Throws std::invalid_argument when a
/// consecutive pair has no edge. With no objects the empty tour s_M, u_0, g_M
/// has weight 0.
double tour_weight(const TourGraph& g, const std::vector<int>& cycle);

struct TourLimits {
  int labeled_exact = 16;
  int unlabeled_exact = 10;
};

/// Minimum-weight tour: Held-Karp over object segments (labeled) or a subset
/// program over pick/place pairs (unlabeled). Throws SizeGuardError above the
/// limits.
Tour solve_tour_exact(const TourGraph& g, const TourLimits& limits = {});

/// Nearest-neighbour construction from 8 distinct start cities followed by
/// 2-opt and or-opt descent. Deterministic for a given seed.
Tour solve_tour_heuristic(const TourGraph& g, std::uint64_t seed);

/// Exact when within the limits, heuristic otherwise.
Tour solve_tour(const TourGraph& g, std::uint64_t seed, const TourLimits& limits = {});

/// Pick/place vertex pairs in visiting order, reading the cycle from s_M
/// away from u_0. Throws std::invalid_argument for a structurally invalid tour.
std::vector<std::pair<int, int>> tour_to_order(const TourGraph& g, const Tour& tour);

/// Builds the tour that visits the given pick/place vertex pairs in order.
Tour tour_from_order(const TourGraph& g, const std::vector<std::pair<int, int>>& order);

}  // namespace toro
