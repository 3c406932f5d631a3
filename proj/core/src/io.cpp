#include "toro/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "toro/errors.hpp"

namespace toro::io {

using nlohmann::json;

namespace {

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw ParseError(where, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where + "." + key, "missing field");
  return *it;
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) throw ParseError(where, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ParseError(where, "expected a finite number");
  return d;
}

Point2 point(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2) throw ParseError(where, "expected [x, y]");
  return Point2{number(v[0], where + "[0]"), number(v[1], where + "[1]")};
}

json to_json(const Point2& p) { return json::array({p.x, p.y}); }

json parse_document(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError("byte " + std::to_string(e.byte), e.what());
  }
}

}  // namespace

Instance parse_instance(std::string_view json_text) {
  const json doc = parse_document(json_text);
  Instance inst;

  const double r = number(field(doc, "radius", "instance"), "instance.radius");
  if (!(r > 0.0)) throw ParseError("instance.radius", "must be positive");
  inst.start.radius = r;
  inst.goal.radius = r;

  const json& ws = field(doc, "workspace", "instance");
  if (!ws.is_array() || ws.size() != 4) throw ParseError("instance.workspace", "expected [minx, miny, maxx, maxy]");
  inst.workspace = Rect{number(ws[0], "instance.workspace[0]"), number(ws[1], "instance.workspace[1]"),
                        number(ws[2], "instance.workspace[2]"), number(ws[3], "instance.workspace[3]")};
  if (inst.workspace.min_x > inst.workspace.max_x || inst.workspace.min_y > inst.workspace.max_y) {
    throw ParseError("instance.workspace", "min corner exceeds max corner");
  }

  inst.rest_start = point(field(doc, "rest_start", "instance"), "instance.rest_start");
  inst.rest_goal = point(field(doc, "rest_goal", "instance"), "instance.rest_goal");

  if (doc.contains("labeled")) {
    if (!doc["labeled"].is_boolean()) throw ParseError("instance.labeled", "expected a boolean");
    inst.labeled = doc["labeled"].get<bool>();
  }

  if (doc.contains("cost")) {
    const json& c = doc["cost"];
    if (!c.is_object()) throw ParseError("instance.cost", "expected an object");
    if (c.contains("c_g")) inst.cost.grasp = number(c["c_g"], "instance.cost.c_g");
    if (c.contains("c_r")) inst.cost.release = number(c["c_r"], "instance.cost.c_r");
    if (c.contains("c_m")) inst.cost.move = number(c["c_m"], "instance.cost.c_m");
    if (inst.cost.grasp < 0 || inst.cost.release < 0 || inst.cost.move < 0) {
      throw ParseError("instance.cost", "cost weights must be >= 0");
    }
  }

  const json& objects = field(doc, "objects", "instance");
  if (!objects.is_array()) throw ParseError("instance.objects", "expected an array");
  const std::size_t n = objects.size();
  inst.start.poses.assign(n, Point2{});
  inst.goal.poses.assign(n, Point2{});
  std::set<long long> seen;
  for (std::size_t k = 0; k < n; ++k) {
    const std::string where = "instance.objects[" + std::to_string(k) + "]";
    const json& o = objects[k];
    const json& id_field = field(o, "id", where);
    if (!id_field.is_number_integer()) throw ParseError(where + ".id", "expected an integer");
    const long long id = id_field.get<long long>();
    if (id < 0 || id >= static_cast<long long>(n)) {
      throw ParseError(where + ".id", "ids must be 0.." + std::to_string(n > 0 ? n - 1 : 0));
    }
    if (!seen.insert(id).second) throw ParseError(where + ".id", "duplicate id " + std::to_string(id));
    inst.start.poses[static_cast<std::size_t>(id)] = point(field(o, "start", where), where + ".start");
    inst.goal.poses[static_cast<std::size_t>(id)] = point(field(o, "goal", where), where + ".goal");
  }
  return inst;
}

std::string format_instance(const Instance& inst) {
  json doc;
  doc["radius"] = inst.radius();
  doc["workspace"] = json::array({inst.workspace.min_x, inst.workspace.min_y, inst.workspace.max_x, inst.workspace.max_y});
  doc["rest_start"] = to_json(inst.rest_start);
  doc["rest_goal"] = to_json(inst.rest_goal);
  doc["labeled"] = inst.labeled;
  doc["cost"] = {{"c_g", inst.cost.grasp}, {"c_r", inst.cost.release}, {"c_m", inst.cost.move}};
  json objects = json::array();
  for (int i = 0; i < inst.size(); ++i) {
    objects.push_back({{"id", i}, {"start", to_json(inst.start_of(i))}, {"goal", to_json(inst.goal_of(i))}});
  }
  doc["objects"] = std::move(objects);
  return doc.dump(2) + "\n";
}

PlanFile parse_plan(std::string_view json_text) {
  const json doc = parse_document(json_text);
  PlanFile out;
  const json& actions = field(doc, "actions", "plan");
  if (!actions.is_array()) throw ParseError("plan.actions", "expected an array");
  for (std::size_t k = 0; k < actions.size(); ++k) {
    const std::string where = "plan.actions[" + std::to_string(k) + "]";
    const json& a = actions[k];
    Action action;
    const json& obj = field(a, "object", where);
    if (!obj.is_number_integer()) throw ParseError(where + ".object", "expected an integer");
    action.object = obj.get<int>();
    action.pick = point(field(a, "pick", where), where + ".pick");
    action.place = point(field(a, "place", where), where + ".place");
    const json& kind = field(a, "kind", where);
    if (kind == "goal") {
      action.kind = PlaceKind::goal;
    } else if (kind == "buffer") {
      action.kind = PlaceKind::buffer;
    } else {
      throw ParseError(where + ".kind", "expected \"goal\" or \"buffer\"");
    }
    out.plan.actions.push_back(action);
  }
  if (doc.contains("cost") && !doc["cost"].is_null()) out.cost = number(doc["cost"], "plan.cost");
  return out;
}

std::string format_plan(const Plan& plan, std::optional<double> cost) {
  json doc;
  json actions = json::array();
  for (const auto& a : plan.actions) {
    actions.push_back({{"object", a.object},
                       {"pick", to_json(a.pick)},
                       {"place", to_json(a.place)},
                       {"kind", a.kind == PlaceKind::goal ? "goal" : "buffer"}});
  }
  doc["actions"] = std::move(actions);
  doc["cost"] = cost ? json(*cost) : json(nullptr);
  return doc.dump(2) + "\n";
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string(), "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

Instance load_instance(const std::filesystem::path& path) {
  try {
    return parse_instance(read_text_file(path));
  } catch (const ParseError& e) {
    if (e.where() == path.string()) throw;
    throw ParseError(path.string() + ": " + e.where(), std::string(e.what()).substr(e.where().size() + 2));
  }
}

void save_instance(const Instance& inst, const std::filesystem::path& path) {
  write_text_file(path, format_instance(inst));
}

PlanFile load_plan(const std::filesystem::path& path) {
  try {
    return parse_plan(read_text_file(path));
  } catch (const ParseError& e) {
    if (e.where() == path.string()) throw;
    throw ParseError(path.string() + ": " + e.where(), std::string(e.what()).substr(e.where().size() + 2));
  }
}

void save_plan(const Plan& plan, std::optional<double> cost, const std::filesystem::path& path) {
  write_text_file(path, format_plan(plan, cost));
}

}  // namespace toro::io
