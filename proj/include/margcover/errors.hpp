#pragma once

// Exception hierarchy shared by every margcover module. Each error carries a
// short machine-readable kind so the CLI can report it as JSON.

#include <stdexcept>
#include <string>
#include <string_view>

namespace margcover {

class Error : public std::runtime_error {
 public:
  Error(std::string_view kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  [[nodiscard]] std::string_view kind() const noexcept { return kind_; }

 private:
  std::string_view kind_;
};

/// Malformed input: broken invariants on a design, set, spec or file.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error("validation", what) {}
};

/// Parameters outside the domain an operation is defined on.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error("domain", what) {}
};

/// An enumeration or search would exceed its configured budget.
class BudgetError : public Error {
 public:
  explicit BudgetError(const std::string& what) : Error("budget", what) {}
};

/// A reducer-size budget cannot accommodate what is asked of it.
class InfeasibleError : public Error {
 public:
  explicit InfeasibleError(const std::string& what) : Error("infeasible", what) {}
};

/// A design leaves some marginal without a reducer.
class CoverageError : public Error {
 public:
  explicit CoverageError(const std::string& what) : Error("coverage", what) {}
};

class ArithmeticError : public Error {
 public:
  explicit ArithmeticError(const std::string& what) : Error("arithmetic", what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error("io", what) {}
};

}  // namespace margcover
