#pragma once

#include <stdexcept>
#include <string>

namespace mrsc {

/// Thrown when an iterative solver exhausts its iteration budget. Carries the
/// best residual (or optimality gap) reached so callers can decide whether the
/// partial result is usable.
class SolverFailure : public std::runtime_error {
 public:
  SolverFailure(const std::string& what, double achieved_residual)
      : std::runtime_error(what), achieved_residual_(achieved_residual) {}

  double achieved_residual() const noexcept { return achieved_residual_; }

 private:
  double achieved_residual_;
};

/// File-level I/O failure; message always contains the offending path.
class IoError : public std::runtime_error {
 public:
  IoError(const std::string& what, const std::string& path)
      : std::runtime_error(what + ": " + path), path_(path) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace mrsc
