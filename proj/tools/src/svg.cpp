#include <algorithm>
#include <cstdio>
#include <sstream>
#include <string>

#include "toro/cli.hpp"
#include "toro/depgraph.hpp"

namespace toro::cli {

namespace {

constexpr double kCanvas = 800.0;
constexpr double kMargin = 20.0;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

struct Frame {
  double min_x, min_y, max_x, max_y, scale;

  double x(double wx) const { return kMargin + (wx - min_x) * scale; }
  double y(double wy) const { return kMargin + (max_y - wy) * scale; }
  double width() const { return 2 * kMargin + (max_x - min_x) * scale; }
  double height() const { return 2 * kMargin + (max_y - min_y) * scale; }
};

Frame frame_for(const Instance& inst, const Plan* plan) {
  const double r = inst.radius();
  double min_x = std::min(inst.rest_start.x, inst.rest_goal.x);
  double max_x = std::max(inst.rest_start.x, inst.rest_goal.x);
  double min_y = std::min(inst.rest_start.y, inst.rest_goal.y);
  double max_y = std::max(inst.rest_start.y, inst.rest_goal.y);
  auto grow = [&](const Point2& p, double pad) {
    min_x = std::min(min_x, p.x - pad);
    max_x = std::max(max_x, p.x + pad);
    min_y = std::min(min_y, p.y - pad);
    max_y = std::max(max_y, p.y + pad);
  };
  if (inst.workspace.width() > 0 || inst.workspace.height() > 0) {
    grow({inst.workspace.min_x, inst.workspace.min_y}, 0);
    grow({inst.workspace.max_x, inst.workspace.max_y}, 0);
  }
  for (const auto& p : inst.start.poses) grow(p, r);
  for (const auto& p : inst.goal.poses) grow(p, r);
  if (plan) {
    for (const auto& a : plan->actions) {
      grow(a.pick, r);
      grow(a.place, r);
    }
  }
  const double span = std::max({max_x - min_x, max_y - min_y, 1e-9});
  return {min_x, min_y, max_x, max_y, (kCanvas - 2 * kMargin) / span};
}

}  // namespace

std::string render_svg(const Instance& inst, const Plan* plan) {
  const Frame f = frame_for(inst, plan);
  const double rr = inst.radius() * f.scale;
  const double mark = std::clamp(rr * 0.3, 2.0, 6.0);
  std::ostringstream s;
  s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(f.width()) << "\" height=\"" << fmt(f.height())
    << "\" viewBox=\"0 0 " << fmt(f.width()) << ' ' << fmt(f.height()) << "\">\n";
  s << "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"10\" refY=\"5\" markerWidth=\"6\" markerHeight=\"6\" "
       "orient=\"auto-start-reverse\"><path d=\"M 0 0 L 10 5 L 0 10 z\" fill=\"#c0392b\"/></marker></defs>\n";
  s << "<rect x=\"0\" y=\"0\" width=\"" << fmt(f.width()) << "\" height=\"" << fmt(f.height())
    << "\" fill=\"white\"/>\n";
  if (inst.workspace.width() > 0 || inst.workspace.height() > 0) {
    s << "<rect class=\"workspace\" x=\"" << fmt(f.x(inst.workspace.min_x)) << "\" y=\"" << fmt(f.y(inst.workspace.max_y))
      << "\" width=\"" << fmt(inst.workspace.width() * f.scale) << "\" height=\""
      << fmt(inst.workspace.height() * f.scale) << "\" fill=\"none\" stroke=\"#999\" stroke-dasharray=\"4 3\"/>\n";
  }

  s << "<g class=\"goals\" fill=\"#5dade2\" fill-opacity=\"0.6\" stroke=\"#2e86c1\">\n";
  for (std::size_t i = 0; i < inst.goal.poses.size(); ++i) {
    const auto& p = inst.goal.poses[i];
    s << "<circle cx=\"" << fmt(f.x(p.x)) << "\" cy=\"" << fmt(f.y(p.y)) << "\" r=\"" << fmt(rr) << "\"><title>goal "
      << i << "</title></circle>\n";
  }
  s << "</g>\n<g class=\"starts\" fill=\"none\" stroke=\"#1c2833\" stroke-width=\"1.5\">\n";
  for (std::size_t i = 0; i < inst.start.poses.size(); ++i) {
    const auto& p = inst.start.poses[i];
    s << "<circle cx=\"" << fmt(f.x(p.x)) << "\" cy=\"" << fmt(f.y(p.y)) << "\" r=\"" << fmt(rr) << "\"><title>start "
      << i << "</title></circle>\n";
  }
  s << "</g>\n";

  if (inst.labeled && inst.start.poses.size() == inst.goal.poses.size()) {
    s << "<g class=\"dependencies\" stroke=\"#c0392b\" stroke-width=\"1\">\n";
    for (const auto& [i, j] : build_dep_graph(inst).arcs()) {
      const auto& a = inst.goal_of(i);
      const auto& b = inst.start_of(j);
      s << "<line x1=\"" << fmt(f.x(a.x)) << "\" y1=\"" << fmt(f.y(a.y)) << "\" x2=\"" << fmt(f.x(b.x)) << "\" y2=\""
        << fmt(f.y(b.y)) << "\" marker-end=\"url(#arrow)\"/>\n";
    }
    s << "</g>\n";
  }

  if (plan) {
    s << "<polyline class=\"path\" fill=\"none\" stroke=\"#27ae60\" stroke-width=\"1.5\" points=\"";
    s << fmt(f.x(inst.rest_start.x)) << ',' << fmt(f.y(inst.rest_start.y));
    for (const auto& a : plan->actions) {
      s << ' ' << fmt(f.x(a.pick.x)) << ',' << fmt(f.y(a.pick.y));
      s << ' ' << fmt(f.x(a.place.x)) << ',' << fmt(f.y(a.place.y));
    }
    s << ' ' << fmt(f.x(inst.rest_goal.x)) << ',' << fmt(f.y(inst.rest_goal.y)) << "\"/>\n";
    s << "<g class=\"markers\">\n";
    for (std::size_t k = 0; k < plan->actions.size(); ++k) {
      const auto& a = plan->actions[k];
      s << "<rect x=\"" << fmt(f.x(a.pick.x) - mark / 2) << "\" y=\"" << fmt(f.y(a.pick.y) - mark / 2) << "\" width=\""
        << fmt(mark) << "\" height=\"" << fmt(mark) << "\" fill=\"#27ae60\"><title>pick " << k + 1 << "</title></rect>\n";
      s << "<circle cx=\"" << fmt(f.x(a.place.x)) << "\" cy=\"" << fmt(f.y(a.place.y)) << "\" r=\"" << fmt(mark / 2)
        << "\" fill=\"" << (a.kind == PlaceKind::buffer ? "#f39c12" : "#1e8449") << "\"><title>place " << k + 1
        << "</title></circle>\n";
    }
    s << "</g>\n";
  }

  s << "<g class=\"rest\" font-family=\"sans-serif\" font-size=\"12\">\n";
  for (const auto& [p, label] : {std::pair{inst.rest_start, "s_M"}, std::pair{inst.rest_goal, "g_M"}}) {
    const double x = f.x(p.x);
    const double y = f.y(p.y);
    s << "<path d=\"M " << fmt(x - 5) << ' ' << fmt(y - 5) << " L " << fmt(x + 5) << ' ' << fmt(y + 5) << " M "
      << fmt(x - 5) << ' ' << fmt(y + 5) << " L " << fmt(x + 5) << ' ' << fmt(y - 5)
      << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
    s << "<text x=\"" << fmt(x + 6) << "\" y=\"" << fmt(y - 6) << "\">" << label << "</text>\n";
  }
  s << "</g>\n</svg>\n";
  return s.str();
}

}  // namespace toro::cli
