// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>

#include <Eigen/Core>

#include "sdrkdg/block_operator.hpp"
#include "sdrkdg/rk.hpp"
#include "sdrkdg/space.hpp"

namespace sdrkdg {

enum class ProjectionKind { gauss_radau_1d, lsz_2d, pi_star };

/// (L^i w)(x, y) for i >= 0, with L the exact operator -beta . grad.
using OperatorPowers = std::function<double(int i, double x, double y)>;

/// Per cell: moments against P^{k-1} and the value at the right endpoint
/// (taken from inside the cell) match those of w.
Eigen::VectorXd gauss_radau_1d(const DGSpace& space, const Field& w, int points);

/// Per cell: cell average and the beta-weighted derivative/trace condition
/// for every test mode of degree >= 1. Uniform 2D meshes only.
Eigen::VectorXd lsz_2d(const DGSpace& space, const Field& w, int points);

/// Gauss-Radau in 1D, Liu-Shu-Zhang in 2D.
Eigen::VectorXd special_projection(const DGSpace& space, const Field& w, int points);

/// Residuals of the LSZ conditions (per cell, per test mode), for checks.
Eigen::VectorXd lsz_residuals(const DGSpace& space, const Eigen::VectorXd& p, const Field& w, int points);

struct PiStarOptions {
  double residual_tol = 1e-12;
  int max_iter = 200;
  int points = 12;
};

/// Time-step-aware approximation operator
///   P(tau Lhat)^{-1} [ Pi_G sum_{i=1}^q (tau L)^{i-1}/i! w
///                      + tau^q sum_{i=q+1}^s alpha_i (tau Lhat)^{i-1-q} Pi_G L^q w ]
/// with P(z) = sum_{i=1}^s alpha_i z^{i-1}. Lhat is L_tilde for sdA schemes
/// and L_h otherwise. The resolvent is solved by Neumann iteration; a
/// non-contracting iteration throws CflTooLargeError.
Eigen::VectorXd pi_star(const DGSpace& space, const OperatorPowers& Lw, const SchemeSpec& scheme,
                        const BlockOperator& Lhat, double tau, int q, const PiStarOptions& options = {});

/// Solves P(tau Lhat) y = rhs by Neumann iteration.
Eigen::VectorXd resolvent_solve(const SchemeSpec& scheme, const BlockOperator& Lhat, double tau,
                                const Eigen::VectorXd& rhs, const PiStarOptions& options = {});

}  // namespace sdrkdg
