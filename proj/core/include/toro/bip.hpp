#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace toro::bip {

enum class Sense { minimize, maximize };
enum class Relation { less_equal, equal, greater_equal };

struct Term {
  int var = 0;
  double coef = 0.0;
};

struct Constraint {
  std::vector<Term> terms;  ///< one term per variable, sorted by variable
  Relation relation = Relation::less_equal;
  double rhs = 0.0;
  std::string name;
};

/// A linear program over 0/1 variables.
class BinaryProgram {
 public:
  int add_variable(std::string name, double objective = 0.0);
  void set_objective(int var, double coef);
  void set_objective_offset(double offset) { offset_ = offset; }
  void set_sense(Sense sense) { sense_ = sense; }

  /// Terms on the same variable are merged; zero coefficients are dropped.
  /// Throws std::invalid_argument for unknown variables or non-finite values.
  void add_constraint(std::vector<Term> terms, Relation relation, double rhs, std::string name = {});

  int variable_count() const { return static_cast<int>(names_.size()); }
  const std::string& name(int var) const { return names_[static_cast<std::size_t>(var)]; }
  double objective(int var) const { return objective_[static_cast<std::size_t>(var)]; }
  double objective_offset() const { return offset_; }
  Sense sense() const { return sense_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }

  double evaluate(std::span<const std::uint8_t> assignment) const;
  bool satisfies(std::span<const std::uint8_t> assignment, double tolerance = 1e-9) const;

  /// CPLEX LP text, for inspecting a model with an external solver.
  std::string to_lp_format() const;

 private:
  std::vector<std::string> names_;
  std::vector<double> objective_;
  double offset_ = 0.0;
  Sense sense_ = Sense::minimize;
  std::vector<Constraint> constraints_;
};

enum class Status { optimal, infeasible, timeout_with_incumbent, timeout };

struct Solution {
  Status status = Status::infeasible;
  std::vector<std::uint8_t> assignment;
  double objective_value = 0.0;
  std::size_t nodes = 0;

  bool has_assignment() const { return status == Status::optimal || status == Status::timeout_with_incumbent; }
};

struct SolveOptions {
  std::chrono::duration<double> time_budget{60.0};
};

/// Exact branch-and-bound. Bounds come from the linear relaxation (dual
/// simplex, rows activated lazily as they become violated) and bound
/// propagation. Branches on the most fractional variable, lowest index first.
Solution solve(const BinaryProgram& program, const SolveOptions& options = {});

const char* to_string(Status status);

}  // namespace toro::bip
