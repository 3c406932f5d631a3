#pragma once

#include <cmath>

namespace toro::geometry {

/// A pose on the tabletop plane.
struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

/// Absolute band around 2r inside which two discs count as touching.
inline constexpr double kTangencyTolerance = 1e-9;

inline bool is_finite(const Point2& p) { return std::isfinite(p.x) && std::isfinite(p.y); }

inline double dist(const Point2& a, const Point2& b) { return std::hypot(a.x - b.x, a.y - b.y); }

enum class DiscContact { separate, tangent, overlapping };

/// Classifies two equal discs of radius r. Throws std::invalid_argument for r <= 0.
DiscContact classify_contact(const Point2& a, const Point2& b, double r);

/// True iff the discs are in collision. Touching discs (within the tangency
/// band) are not in collision.
bool discs_overlap(const Point2& a, const Point2& b, double r);

/// Exact pose match up to the tangency tolerance.
inline bool same_pose(const Point2& a, const Point2& b) { return dist(a, b) <= kTangencyTolerance; }

/// Axis-aligned workspace rectangle.
struct Rect {
  double min_x = 0.0;
  double min_y = 0.0;
  double max_x = 0.0;
  double max_y = 0.0;

  bool contains(const Point2& p) const {
    return p.x >= min_x && p.x <= max_x && p.y >= min_y && p.y <= max_y;
  }
  double width() const { return max_x - min_x; }
  double height() const { return max_y - min_y; }

  friend bool operator==(const Rect&, const Rect&) = default;
};

}  // namespace toro::geometry
