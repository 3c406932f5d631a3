#include "toro/bip.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

namespace toro::bip {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw std::invalid_argument(std::string(what) + " must be finite");
}

}  // namespace

int BinaryProgram::add_variable(std::string name, double objective) {
  require_finite(objective, "objective coefficient");
  names_.push_back(std::move(name));
  objective_.push_back(objective);
  return static_cast<int>(names_.size()) - 1;
}

void BinaryProgram::set_objective(int var, double coef) {
  if (var < 0 || var >= variable_count()) throw std::invalid_argument("unknown variable");
  require_finite(coef, "objective coefficient");
  objective_[static_cast<std::size_t>(var)] = coef;
}

void BinaryProgram::add_constraint(std::vector<Term> terms, Relation relation, double rhs, std::string name) {
  require_finite(rhs, "constraint right-hand side");
  std::map<int, double> merged;
  for (const auto& t : terms) {
    if (t.var < 0 || t.var >= variable_count()) throw std::invalid_argument("constraint references an unknown variable");
    require_finite(t.coef, "constraint coefficient");
    merged[t.var] += t.coef;
  }
  Constraint c;
  for (const auto& [var, coef] : merged) {
    if (coef != 0.0) c.terms.push_back(Term{var, coef});
  }
  c.relation = relation;
  c.rhs = rhs;
  c.name = std::move(name);
  constraints_.push_back(std::move(c));
}

double BinaryProgram::evaluate(std::span<const std::uint8_t> assignment) const {
  double v = offset_;
  for (std::size_t j = 0; j < objective_.size(); ++j) {
    if (assignment[j]) v += objective_[j];
  }
  return v;
}

bool BinaryProgram::satisfies(std::span<const std::uint8_t> assignment, double tolerance) const {
  if (assignment.size() != names_.size()) return false;
  for (const auto& c : constraints_) {
    double act = 0.0;
    for (const auto& t : c.terms) {
      if (assignment[static_cast<std::size_t>(t.var)]) act += t.coef;
    }
    switch (c.relation) {
      case Relation::less_equal:
        if (act > c.rhs + tolerance) return false;
        break;
      case Relation::greater_equal:
        if (act < c.rhs - tolerance) return false;
        break;
      case Relation::equal:
        if (std::abs(act - c.rhs) > tolerance) return false;
        break;
    }
  }
  return true;
}

std::string BinaryProgram::to_lp_format() const {
  std::ostringstream out;
  out.precision(17);
  auto write_terms = [&](const std::vector<Term>& terms) {
    if (terms.empty()) {
      out << " 0 " << (names_.empty() ? std::string("x") : names_.front());
      return;
    }
    for (const auto& t : terms) {
      out << (t.coef < 0 ? " - " : " + ") << std::abs(t.coef) << ' ' << names_[static_cast<std::size_t>(t.var)];
    }
  };
  out << (sense_ == Sense::minimize ? "Minimize\n" : "Maximize\n") << " obj:";
  std::vector<Term> obj;
  for (std::size_t j = 0; j < objective_.size(); ++j) {
    if (objective_[j] != 0.0) obj.push_back(Term{static_cast<int>(j), objective_[j]});
  }
  write_terms(obj);
  if (offset_ != 0.0) out << (offset_ < 0 ? " - " : " + ") << std::abs(offset_);
  out << "\nSubject To\n";
  for (std::size_t i = 0; i < constraints_.size(); ++i) {
    const auto& c = constraints_[i];
    out << ' ' << (c.name.empty() ? "c" + std::to_string(i) : c.name) << ':';
    write_terms(c.terms);
    switch (c.relation) {
      case Relation::less_equal:
        out << " <= ";
        break;
      case Relation::greater_equal:
        out << " >= ";
        break;
      case Relation::equal:
        out << " = ";
        break;
    }
    out << c.rhs << '\n';
  }
  out << "Binary\n";
  for (const auto& n : names_) out << ' ' << n << '\n';
  out << "End\n";
  return out.str();
}

const char* to_string(Status status) {
  switch (status) {
    case Status::optimal:
      return "optimal";
    case Status::infeasible:
      return "infeasible";
    case Status::timeout_with_incumbent:
      return "timeout_with_incumbent";
    case Status::timeout:
      return "timeout";
  }
  return "unknown";
}

namespace {

struct Row {
  std::vector<Term> terms;
  double lo = -kInf;
  double hi = kInf;
};

// Bounded dual simplex on a dense tableau. Every basic variable is kept as a
// linear function of the nonbasic ones: x_b(r) = sum_j m[r][j] x_j. Rows are
// activity variables w = a.x with bounds [lo, hi]; structural variables are
// boxed, so the all-slack basis is dual feasible from the start.
class DualSimplex {
 public:
  enum class Result { optimal, infeasible, iteration_limit };

  DualSimplex(int structurals, std::vector<double> cost)
      : k_(structurals),
        lb_(static_cast<std::size_t>(structurals), 0.0),
        ub_(static_cast<std::size_t>(structurals), 1.0),
        cost_(std::move(cost)),
        d_(cost_),
        row_of_col_(static_cast<std::size_t>(structurals), -1),
        at_upper_(static_cast<std::size_t>(structurals), false) {
    for (int j = 0; j < k_; ++j) at_upper_[static_cast<std::size_t>(j)] = d_[static_cast<std::size_t>(j)] < 0.0;
  }

  int columns() const { return static_cast<int>(lb_.size()); }

  void add_row(const Row& row) {
    const int col = columns();
    for (auto& r : m_) r.push_back(0.0);
    std::vector<double> expr(static_cast<std::size_t>(col + 1), 0.0);
    for (const auto& t : row.terms) {
      const int r = row_of_col_[static_cast<std::size_t>(t.var)];
      if (r < 0) {
        expr[static_cast<std::size_t>(t.var)] += t.coef;
      } else {
        const auto& src = m_[static_cast<std::size_t>(r)];
        for (std::size_t c = 0; c < src.size(); ++c) {
          if (src[c] != 0.0) expr[c] += t.coef * src[c];
        }
      }
    }
    m_.push_back(std::move(expr));
    lb_.push_back(row.lo);
    ub_.push_back(row.hi);
    cost_.push_back(0.0);
    d_.push_back(0.0);
    row_of_col_.push_back(static_cast<int>(m_.size()) - 1);
    at_upper_.push_back(false);
    basic_of_row_.push_back(col);
    beta_.push_back(0.0);
  }

  void set_bounds(int j, double lb, double ub) {
    const auto uj = static_cast<std::size_t>(j);
    lb_[uj] = lb;
    ub_[uj] = ub;
    if (row_of_col_[uj] >= 0) return;
    if (lb == ub) {
      at_upper_[uj] = false;
    } else if (d_[uj] < 0.0) {
      at_upper_[uj] = true;
    } else if (d_[uj] > 0.0) {
      at_upper_[uj] = false;
    }
  }

  Result solve(std::size_t max_iterations) {
    refresh_beta();
    for (std::size_t it = 0; it < max_iterations; ++it) {
      if (it % 64 == 63) refresh_beta();
      int leave = -1;
      double worst = kPrimalTol;
      bool raise = false;
      for (std::size_t r = 0; r < m_.size(); ++r) {
        const auto b = static_cast<std::size_t>(basic_of_row_[r]);
        const double below = lb_[b] - beta_[r];
        const double above = beta_[r] - ub_[b];
        if (below > worst) {
          worst = below;
          leave = static_cast<int>(r);
          raise = true;
        } else if (above > worst) {
          worst = above;
          leave = static_cast<int>(r);
          raise = false;
        }
      }
      if (leave < 0) return Result::optimal;

      const auto& row = m_[static_cast<std::size_t>(leave)];
      int enter = -1;
      double best_ratio = kInf;
      double best_mag = 0.0;
      for (std::size_t j = 0; j < row.size(); ++j) {
        if (row_of_col_[j] >= 0 || lb_[j] == ub_[j]) continue;
        const double a = row[j];
        if (std::abs(a) < kPivotTol) continue;
        const bool up = at_upper_[j];
        // Raising x_b needs a nonbasic that moves in the direction of sign(a).
        const bool eligible = raise ? (!up && a > 0.0) || (up && a < 0.0) : (!up && a < 0.0) || (up && a > 0.0);
        if (!eligible) continue;
        const double ratio = std::abs(d_[j]) / std::abs(a);
        if (ratio < best_ratio - 1e-12 || (ratio <= best_ratio + 1e-12 && std::abs(a) > best_mag)) {
          best_ratio = ratio;
          best_mag = std::abs(a);
          enter = static_cast<int>(j);
        }
      }
      if (enter < 0) return Result::infeasible;
      const auto leaving_col = static_cast<std::size_t>(basic_of_row_[static_cast<std::size_t>(leave)]);
      pivot(leave, enter, raise ? lb_[leaving_col] : ub_[leaving_col], !raise);
    }
    return Result::iteration_limit;
  }

  double value(int j) const {
    const auto uj = static_cast<std::size_t>(j);
    const int r = row_of_col_[uj];
    return r >= 0 ? beta_[static_cast<std::size_t>(r)] : nonbasic_value(uj);
  }

  double objective() const {
    double z = 0.0;
    for (int j = 0; j < k_; ++j) z += cost_[static_cast<std::size_t>(j)] * value(j);
    return z;
  }

 private:
  static constexpr double kPrimalTol = 1e-9;
  static constexpr double kPivotTol = 1e-9;

  double nonbasic_value(std::size_t j) const { return at_upper_[j] ? ub_[j] : lb_[j]; }

  void refresh_beta() {
    for (std::size_t r = 0; r < m_.size(); ++r) {
      double v = 0.0;
      const auto& row = m_[r];
      for (std::size_t j = 0; j < row.size(); ++j) {
        if (row[j] != 0.0 && row_of_col_[j] < 0) v += row[j] * nonbasic_value(j);
      }
      beta_[r] = v;
    }
  }

  void pivot(int r, int j, double target, bool leave_at_upper) {
    const auto ur = static_cast<std::size_t>(r);
    const auto uj = static_cast<std::size_t>(j);
    const auto leaving = static_cast<std::size_t>(basic_of_row_[ur]);
    std::vector<double>& pivot_row = m_[ur];
    const double p = pivot_row[uj];
    const double delta = (target - beta_[ur]) / p;
    const double entering_value = nonbasic_value(uj) + delta;

    // Solve the pivot row for x_j.
    for (std::size_t c = 0; c < pivot_row.size(); ++c) pivot_row[c] = -pivot_row[c] / p;
    pivot_row[leaving] = 1.0 / p;
    pivot_row[uj] = 0.0;

    for (std::size_t i = 0; i < m_.size(); ++i) {
      if (i == ur) continue;
      auto& row = m_[i];
      const double f = row[uj];
      if (f == 0.0) continue;
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (pivot_row[c] != 0.0) {
          row[c] += f * pivot_row[c];
          if (std::abs(row[c]) < 1e-13) row[c] = 0.0;
        }
      }
      row[uj] = 0.0;
      beta_[i] += f * delta;
    }
    const double fd = d_[uj];
    if (fd != 0.0) {
      for (std::size_t c = 0; c < d_.size(); ++c) {
        if (pivot_row[c] != 0.0) d_[c] += fd * pivot_row[c];
      }
    }
    d_[uj] = 0.0;

    row_of_col_[leaving] = -1;
    at_upper_[leaving] = leave_at_upper;
    row_of_col_[uj] = r;
    basic_of_row_[ur] = j;
    beta_[ur] = entering_value;
  }

  int k_;
  std::vector<double> lb_;
  std::vector<double> ub_;
  std::vector<double> cost_;
  std::vector<double> d_;
  std::vector<int> row_of_col_;
  std::vector<bool> at_upper_;
  std::vector<int> basic_of_row_;
  std::vector<std::vector<double>> m_;
  std::vector<double> beta_;
};

class BranchAndBound {
 public:
  BranchAndBound(const BinaryProgram& program, const SolveOptions& options)
      : program_(program),
        options_(options),
        k_(program.variable_count()),
        lp_(k_, minimization_costs(program)) {
    integral_objective_ = true;
    for (int j = 0; j < k_; ++j) {
      const double c = cost_[static_cast<std::size_t>(j)];
      if (c != std::round(c)) integral_objective_ = false;
    }
    var_rows_.resize(static_cast<std::size_t>(k_));
    for (const auto& c : program.constraints()) {
      Row row;
      row.terms = c.terms;
      switch (c.relation) {
        case Relation::less_equal:
          row.hi = c.rhs;
          break;
        case Relation::greater_equal:
          row.lo = c.rhs;
          break;
        case Relation::equal:
          row.lo = row.hi = c.rhs;
          break;
      }
      for (const auto& t : row.terms) var_rows_[static_cast<std::size_t>(t.var)].push_back(static_cast<int>(rows_.size()));
      rows_.push_back(std::move(row));
    }
    active_.assign(rows_.size(), false);
    const bool all_eager = rows_.size() <= kEagerRowLimit;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (all_eager || rows_[i].lo == rows_[i].hi) activate(i);
    }
  }

  Solution run() {
    const auto started = std::chrono::steady_clock::now();
    Solution out;
    std::vector<std::vector<std::int8_t>> stack;
    stack.emplace_back(static_cast<std::size_t>(k_), std::int8_t{-1});
    bool timed_out = false;

    while (!stack.empty()) {
      if (std::chrono::steady_clock::now() - started > options_.time_budget) {
        timed_out = true;
        break;
      }
      std::vector<std::int8_t> fix = std::move(stack.back());
      stack.pop_back();
      ++out.nodes;

      if (!propagate(fix)) continue;
      const auto first_free = std::find(fix.begin(), fix.end(), std::int8_t{-1});
      if (first_free == fix.end()) {
        consider(std::vector<std::uint8_t>(fix.begin(), fix.end()));
        continue;
      }

      for (int j = 0; j < k_; ++j) {
        const auto f = fix[static_cast<std::size_t>(j)];
        if (f < 0) {
          lp_.set_bounds(j, 0.0, 1.0);
        } else {
          lp_.set_bounds(j, f, f);
        }
      }
      const LpOutcome lp = solve_relaxation();
      if (lp.infeasible) continue;

      int branch_var = -1;
      if (lp.trusted) {
        double bound = lp.objective;
        if (integral_objective_) bound = std::ceil(bound - 1e-6);
        if (has_incumbent_ && bound >= best_ - (integral_objective_ ? 0.5 : 1e-9)) continue;

        double most = -1.0;
        for (int j = 0; j < k_; ++j) {
          if (fix[static_cast<std::size_t>(j)] >= 0) continue;
          const double v = lp.values[static_cast<std::size_t>(j)];
          const double frac = std::min(v, 1.0 - v);
          if (frac > kIntegralityTol && frac > most + 1e-12) {
            most = frac;
            branch_var = j;
          }
        }
        if (branch_var < 0) {
          std::vector<std::uint8_t> candidate(static_cast<std::size_t>(k_));
          for (int j = 0; j < k_; ++j) {
            const auto f = fix[static_cast<std::size_t>(j)];
            candidate[static_cast<std::size_t>(j)] =
                f >= 0 ? static_cast<std::uint8_t>(f) : static_cast<std::uint8_t>(lp.values[static_cast<std::size_t>(j)] > 0.5);
          }
          if (consider(candidate)) continue;
        }
      }
      if (branch_var < 0) branch_var = static_cast<int>(first_free - fix.begin());

      const double v = lp.trusted ? lp.values[static_cast<std::size_t>(branch_var)] : 0.0;
      const std::int8_t near = v >= 0.5 ? 1 : 0;
      auto far_child = fix;
      far_child[static_cast<std::size_t>(branch_var)] = static_cast<std::int8_t>(1 - near);
      fix[static_cast<std::size_t>(branch_var)] = near;
      stack.push_back(std::move(far_child));
      stack.push_back(std::move(fix));
    }

    if (has_incumbent_) {
      out.assignment = incumbent_;
      out.objective_value = program_.evaluate(incumbent_);
      out.status = timed_out ? Status::timeout_with_incumbent : Status::optimal;
    } else {
      out.status = timed_out ? Status::timeout : Status::infeasible;
    }
    return out;
  }

 private:
  static constexpr std::size_t kEagerRowLimit = 300;
  static constexpr std::size_t kRowsPerRound = 100;
  static constexpr double kIntegralityTol = 1e-6;
  static constexpr double kViolationTol = 1e-7;
  static constexpr double kPropagationTol = 1e-9;

  struct LpOutcome {
    bool infeasible = false;
    bool trusted = false;
    double objective = 0.0;
    std::vector<double> values;
  };

  std::vector<double> minimization_costs(const BinaryProgram& program) {
    cost_.resize(static_cast<std::size_t>(program.variable_count()));
    const double sign = program.sense() == Sense::minimize ? 1.0 : -1.0;
    for (int j = 0; j < program.variable_count(); ++j) cost_[static_cast<std::size_t>(j)] = sign * program.objective(j);
    return cost_;
  }

  void activate(std::size_t i) {
    active_[i] = true;
    lp_.add_row(rows_[i]);
  }

  std::size_t iteration_limit() const {
    return 50'000 + 50 * static_cast<std::size_t>(lp_.columns());
  }

  LpOutcome solve_relaxation() {
    LpOutcome out;
    for (;;) {
      const auto result = lp_.solve(iteration_limit());
      if (result == DualSimplex::Result::infeasible) {
        out.infeasible = true;
        return out;
      }
      if (result == DualSimplex::Result::iteration_limit) return out;

      out.values.resize(static_cast<std::size_t>(k_));
      for (int j = 0; j < k_; ++j) out.values[static_cast<std::size_t>(j)] = std::clamp(lp_.value(j), 0.0, 1.0);

      std::vector<std::pair<double, std::size_t>> violated;
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (active_[i]) continue;
        double act = 0.0;
        for (const auto& t : rows_[i].terms) act += t.coef * out.values[static_cast<std::size_t>(t.var)];
        const double viol = std::max(rows_[i].lo - act, act - rows_[i].hi);
        if (viol > kViolationTol) violated.emplace_back(viol, i);
      }
      if (violated.empty()) break;
      std::sort(violated.begin(), violated.end(), [](const auto& a, const auto& b) {
        return a.first > b.first || (a.first == b.first && a.second < b.second);
      });
      if (violated.size() > kRowsPerRound) violated.resize(kRowsPerRound);
      for (const auto& [viol, i] : violated) activate(i);
    }
    out.trusted = true;
    out.objective = lp_.objective();
    return out;
  }

  // Fixes variables forced by row activity bounds. Returns false when some
  // row cannot be satisfied.
  bool propagate(std::vector<std::int8_t>& fix) const {
    std::vector<int> queue(rows_.size());
    std::vector<bool> queued(rows_.size(), true);
    for (std::size_t i = 0; i < rows_.size(); ++i) queue[i] = static_cast<int>(i);
    std::size_t head = 0;
    while (head < queue.size()) {
      const auto i = static_cast<std::size_t>(queue[head++]);
      queued[i] = false;
      const Row& row = rows_[i];
      double min_act = 0.0;
      double max_act = 0.0;
      for (const auto& t : row.terms) {
        const auto f = fix[static_cast<std::size_t>(t.var)];
        if (f >= 0) {
          min_act += t.coef * f;
          max_act += t.coef * f;
        } else if (t.coef > 0) {
          max_act += t.coef;
        } else {
          min_act += t.coef;
        }
      }
      if (min_act > row.hi + kPropagationTol || max_act < row.lo - kPropagationTol) return false;
      for (const auto& t : row.terms) {
        const auto uv = static_cast<std::size_t>(t.var);
        if (fix[uv] >= 0) continue;
        const double span = std::abs(t.coef);
        std::int8_t forced = -1;
        if (min_act + span > row.hi + kPropagationTol) {
          // The choice that raises activity is ruled out.
          forced = t.coef > 0 ? 0 : 1;
        } else if (max_act - span < row.lo - kPropagationTol) {
          forced = t.coef > 0 ? 1 : 0;
        }
        if (forced < 0) continue;
        fix[uv] = forced;
        const double contribution = t.coef * forced;
        if (t.coef > 0) {
          min_act += contribution;
          max_act -= t.coef - contribution;
        } else {
          min_act -= t.coef - contribution;
          max_act += contribution;
        }
        for (int other : var_rows_[uv]) {
          const auto uo = static_cast<std::size_t>(other);
          if (!queued[uo]) {
            queued[uo] = true;
            queue.push_back(other);
          }
        }
      }
    }
    return true;
  }

  bool consider(const std::vector<std::uint8_t>& candidate) {
    if (!program_.satisfies(candidate)) return false;
    double value = 0.0;
    for (int j = 0; j < k_; ++j) {
      if (candidate[static_cast<std::size_t>(j)]) value += cost_[static_cast<std::size_t>(j)];
    }
    if (!has_incumbent_ || value < best_ - 1e-9) {
      has_incumbent_ = true;
      best_ = value;
      incumbent_ = candidate;
    }
    return true;
  }

  const BinaryProgram& program_;
  SolveOptions options_;
  int k_;
  std::vector<double> cost_;
  DualSimplex lp_;
  bool integral_objective_ = true;
  std::vector<Row> rows_;
  std::vector<std::vector<int>> var_rows_;
  std::vector<bool> active_;
  bool has_incumbent_ = false;
  double best_ = kInf;
  std::vector<std::uint8_t> incumbent_;
};

}  // namespace

Solution solve(const BinaryProgram& program, const SolveOptions& options) {
  return BranchAndBound(program, options).run();
}

}  // namespace toro::bip
