#include "toro/geometry.hpp"

#include <stdexcept>

namespace toro::geometry {

DiscContact classify_contact(const Point2& a, const Point2& b, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("disc radius must be positive");
  const double d = dist(a, b);
  const double touch = 2.0 * r;
  if (d < touch - kTangencyTolerance) return DiscContact::overlapping;
  if (d > touch + kTangencyTolerance) return DiscContact::separate;
  return DiscContact::tangent;
}

bool discs_overlap(const Point2& a, const Point2& b, double r) {
  return classify_contact(a, b, r) == DiscContact::overlapping;
}

}  // namespace toro::geometry
