#pragma once

#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace annulus {

enum class ErrorKind {
  InvalidGrid,
  ConfigError,
  SingularMode,
  NonPeriodicData,
  FluxMismatch,
  NonPositiveThroughflow,
  NonMonotoneDiffeo,
  ThroughflowSignChange,
  NoConvergence,
  CurlDefect,
  SeamMismatch,
  CompatibilityMismatch,
};

std::string_view to_string(ErrorKind kind);

// Process exit code the CLI uses for an error of this kind.
int exit_code(ErrorKind kind);

// Every failure raised by the solvers. `value` carries the offending number
// (flux defect, theta location, last update norm, ...) and `iteration` the
// iteration count for NoConvergence; both are NaN / -1 when not applicable.
class SolverError : public std::runtime_error {
 public:
  SolverError(ErrorKind kind, const std::string& message,
              double value = std::numeric_limits<double>::quiet_NaN(),
              int iteration = -1);

  ErrorKind kind() const noexcept { return kind_; }
  double value() const noexcept { return value_; }
  int iteration() const noexcept { return iteration_; }

 private:
  ErrorKind kind_;
  double value_;
  int iteration_;
};

// NoConvergence with the update history that led to it.
class ConvergenceFailure : public SolverError {
 public:
  ConvergenceFailure(const std::string& message, int iteration, double last_update,
                     std::vector<double> trace)
      : SolverError(ErrorKind::NoConvergence, message, last_update, iteration),
        trace_(std::move(trace)) {}

  const std::vector<double>& trace() const noexcept { return trace_; }

 private:
  std::vector<double> trace_;
};

}  // namespace annulus
