#pragma once

#include <stdexcept>
#include <string>

namespace toro {

/// Malformed instance, plan, or graph input. `where` names the offending
/// field or line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string where, const std::string& what)
      : std::runtime_error(where + ": " + what), where_(std::move(where)) {}
  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

/// A solver refused the input because it exceeds a size guard.
class SizeGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A solver ran out of its time budget or an enumeration hit its cap.
class SolverLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The requested model has no solution.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace toro
