// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Core>

namespace sdrkdg {

enum class ErrorKind {
  invalid_argument,
  invalid_mesh,
  invalid_perturbation,
  invalid_speed,
  domain,
  unsupported_degree,
  unsupported_mesh,
  incompatible,
  projection_failure,
  no_convergence,
  cfl_too_large,
  blow_up,
  config,
};

const char* to_string(ErrorKind kind);

/// Base class of every error raised by the library. The kind tag lets callers
/// (and tests) branch on the failure without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Iterative norm estimate did not converge; carries the last iterate.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double estimate, Eigen::VectorXd last)
      : Error(ErrorKind::no_convergence, what),
        estimate_(estimate),
        last_iterate_(std::move(last)) {}
  double estimate() const noexcept { return estimate_; }
  const Eigen::VectorXd& last_iterate() const noexcept { return last_iterate_; }

 private:
  double estimate_;
  Eigen::VectorXd last_iterate_;
};

/// Non-finite or exploding state during time stepping.
class BlowUpError : public Error {
 public:
  BlowUpError(const std::string& what, std::size_t step)
      : Error(ErrorKind::blow_up, what), step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

/// Neumann iteration for the Runge-Kutta resolvent does not contract.
class CflTooLargeError : public Error {
 public:
  CflTooLargeError(const std::string& what, double contraction)
      : Error(ErrorKind::cfl_too_large, what), contraction_(contraction) {}
  double contraction() const noexcept { return contraction_; }

 private:
  double contraction_;
};

#define SDRKDG_REQUIRE(cond, kind, msg)          \
  do {                                           \
    if (!(cond)) throw ::sdrkdg::Error((kind), (msg)); \
  } while (false)

}  // namespace sdrkdg
