#include "annulus/errors.hpp"

namespace annulus {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidGrid: return "InvalidGrid";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::SingularMode: return "SingularMode";
    case ErrorKind::NonPeriodicData: return "NonPeriodicData";
    case ErrorKind::FluxMismatch: return "FluxMismatch";
    case ErrorKind::NonPositiveThroughflow: return "NonPositiveThroughflow";
    case ErrorKind::NonMonotoneDiffeo: return "NonMonotoneDiffeo";
    case ErrorKind::ThroughflowSignChange: return "ThroughflowSignChange";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::CurlDefect: return "CurlDefect";
    case ErrorKind::SeamMismatch: return "SeamMismatch";
    case ErrorKind::CompatibilityMismatch: return "Mismatch";
  }
  return "Unknown";
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidGrid:
    case ErrorKind::ConfigError:
      return 2;
    case ErrorKind::NoConvergence:
      return 3;
    case ErrorKind::CompatibilityMismatch:
      return 4;
    case ErrorKind::FluxMismatch:
    case ErrorKind::NonPositiveThroughflow:
    case ErrorKind::NonMonotoneDiffeo:
    case ErrorKind::ThroughflowSignChange:
    case ErrorKind::NonPeriodicData:
    case ErrorKind::SingularMode:
    case ErrorKind::CurlDefect:
    case ErrorKind::SeamMismatch:
      return 5;
  }
  return 1;
}

SolverError::SolverError(ErrorKind kind, const std::string& message,
                         double value, int iteration)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message),
      kind_(kind),
      value_(value),
      iteration_(iteration) {}

}  // namespace annulus
