// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include <Eigen/Core>

#include "sdrkdg/block_operator.hpp"
#include "sdrkdg/space.hpp"

namespace sdrkdg {

/// Upwind DG discretisation L_h of -beta . grad on V_h^k.
BlockOperator assemble_upwind(const DGSpace& space);

/// Same weak form, but only tested against modes of total degree <=
/// test_degree; the remaining rows stay zero. With test_degree = k-1 this is
/// the reduced operator assembled directly rather than by masking.
BlockOperator assemble_upwind_tested(const DGSpace& space, int test_degree);

/// Reduced operator (I - Pi_perp) L_h: rows of top-degree modes zeroed.
BlockOperator reduce(const BlockOperator& L, const DGSpace& space);

enum class ProjectionTarget { full, k_minus_1, perp };

/// Mask of the modes kept by a projection target.
std::vector<bool> projection_mask(const DGSpace& space, ProjectionTarget target);
/// L2 projection of a member of V_h^k onto V_h^k, V_h^{k-1} or V_h^perp.
Eigen::VectorXd project(const DGSpace& space, const Eigen::VectorXd& v, ProjectionTarget target);
DGCoeffs project(const DGCoeffs& v, ProjectionTarget target);
/// L2 projection of a field, then restricted to the target space.
DGCoeffs project(std::shared_ptr<const DGSpace> space, const Field& f, ProjectionTarget target, int points);

/// Jump and trace quantities on the mesh skeleton.
struct JumpForms {
  double inner = 0.0;          // <<w, v>>
  double jump_seminorm = 0.0;  // |v|_jump = <<v, v>>^{1/2}
  double trace_norm = 0.0;     // ||v||_Gamma
};

JumpForms jump_forms(const DGCoeffs& w, const DGCoeffs& v);
/// <<w, v>> = sum over interfaces of beta-weighted [w][v].
double jump_inner(const DGSpace& space, const Eigen::VectorXd& w, const Eigen::VectorXd& v);
double jump_seminorm(const DGSpace& space, const Eigen::VectorXd& v);
double trace_norm(const DGSpace& space, const Eigen::VectorXd& v);

/// L^{i_1} Pi_perp L^{i_2} Pi_perp ... L^{i_n} w, applied right to left.
Eigen::VectorXd compose_mixed(const std::vector<int>& indices, const BlockOperator& L, const DGSpace& space,
                              const Eigen::VectorXd& w);
DGCoeffs compose_mixed(const std::vector<int>& indices, const BlockOperator& L, const DGCoeffs& w);

/// Square linear map given by its action and the action of its transpose.
struct LinearMap {
  using Action = std::function<void(const Eigen::MatrixXd&, Eigen::MatrixXd&)>;
  std::size_t size = 0;
  Action apply;
  Action apply_transpose;
};

LinearMap as_map(const BlockOperator& op);
LinearMap identity_map(std::size_t n);

/// Dense matrix of map^power, built by applying the map to the identity.
Eigen::MatrixXd dense_matrix(const LinearMap& map, int power = 1);

enum class NormMethod { dense_svd, power_iteration };

struct NormOptions {
  NormMethod method = NormMethod::dense_svd;
  int power = 1;
  std::size_t dense_cap = 4096;
  double rel_tol = 1e-10;
  int max_iter = 10000;
  std::uint64_t seed = 0;
};

/// ||map^power||_2. Power iteration works on (A^m)^T A^m matrix-free and
/// throws ConvergenceError carrying the last iterate when it stalls.
double operator_norm(const LinearMap& map, const NormOptions& options = {});
double operator_norm(const BlockOperator& op, const NormOptions& options = {});

}  // namespace sdrkdg
