#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "toro/model.hpp"

namespace toro::io {

// JSON instance and plan files. Parse failures throw toro::ParseError naming
// the offending field.

Instance parse_instance(std::string_view json_text);
std::string format_instance(const Instance& inst);

Instance load_instance(const std::filesystem::path& path);
void save_instance(const Instance& inst, const std::filesystem::path& path);

/// A plan file also records the plan's total cost when known.
struct PlanFile {
  Plan plan;
  std::optional<double> cost;
};

PlanFile parse_plan(std::string_view json_text);
std::string format_plan(const Plan& plan, std::optional<double> cost);

PlanFile load_plan(const std::filesystem::path& path);
void save_plan(const Plan& plan, std::optional<double> cost, const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace toro::io
