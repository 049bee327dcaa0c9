#pragma once

#include <stdexcept>
#include <string>

namespace ahmass {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid sizes, unknown keys, malformed tables: anything the user typed wrong.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Input outside the domain of an operation (non-unit vector, indefinite
/// metric, r beyond the collar, non-convex surface).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An iterative or quadrature-based solver failed to reach its target.
class SolverError : public Error {
 public:
  SolverError(const std::string& what, double last_residual)
      : Error(what), last_residual_(last_residual) {}
  explicit SolverError(const std::string& what) : SolverError(what, -1.0) {}

  double last_residual() const { return last_residual_; }

 private:
  double last_residual_;
};

/// A containment certificate (inscribed/circumscribed ball) did not hold.
class GeometryError : public Error {
 public:
  GeometryError(const std::string& what, std::size_t worst_node)
      : Error(what), worst_node_(worst_node) {}

  std::size_t worst_node() const { return worst_node_; }

 private:
  std::size_t worst_node_;
};

/// The O(3) gauge of a normalized embedding could not be fixed.
class NormalizationError : public Error {
 public:
  using Error::Error;
};

/// Wraps an error raised inside one stage of the mass pipeline.
class StageError : public Error {
 public:
  StageError(std::string stage, const std::string& what, bool solver_failure)
      : Error("[" + stage + "] " + what),
        stage_(std::move(stage)),
        solver_failure_(solver_failure) {}

  const std::string& stage() const { return stage_; }
  /// True when the wrapped error came from a solver or certificate failure
  /// rather than invalid input.
  bool solver_failure() const { return solver_failure_; }

 private:
  std::string stage_;
  bool solver_failure_;
};

}  // namespace ahmass
