// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <variant>

#include <Eigen/Core>

#include "sdrkdg/basis.hpp"
#include "sdrkdg/mesh.hpp"

namespace sdrkdg {

/// Scalar field on the domain; 1D fields ignore y.
using Field = std::function<double(double x, double y)>;

struct CellBox {
  double x0 = 0.0, x1 = 0.0;
  double y0 = 0.0, y1 = 0.0;
  double hx() const { return x1 - x0; }
  double hy() const { return y1 - y0; }
};

/// The broken polynomial space V_h^k on a periodic mesh, with an
/// L2-orthonormal modal basis on every cell. Coefficient vectors are laid out
/// cell-major: entry cell * n_modes + mode.
class DGSpace {
 public:
  DGSpace(Mesh1D mesh, int degree);
  DGSpace(Mesh2D mesh, int degree);

  int dim() const { return basis_.dim(); }
  int degree() const { return basis_.degree(); }
  const PolyBasis& basis() const { return basis_; }
  std::size_t n_cells() const;
  int n_modes() const { return basis_.n_modes(); }
  std::size_t size() const { return n_cells() * static_cast<std::size_t>(n_modes()); }

  const Mesh1D& mesh_1d() const { return std::get<Mesh1D>(mesh_); }
  const Mesh2D& mesh_2d() const { return std::get<Mesh2D>(mesh_); }
  CellBox cell(std::size_t c) const;
  /// Largest cell size h.
  double h() const;
  bool uniform() const;

  /// Physical value of a coefficient vector at reference point (xi, eta) of a cell.
  double evaluate(const Eigen::VectorXd& coeffs, std::size_t c, double xi, double eta = 0.0) const;
  /// Physical value at a point in the domain.
  double evaluate_at(const Eigen::VectorXd& coeffs, double x, double y = 0.0) const;

  /// Cellwise L2 projection of f onto V_h^k using `points` Gauss points per direction.
  Eigen::VectorXd project(const Field& f, int points) const;
  /// sqrt(sum_K int_K (u_h - f)^2) with `points` Gauss points per direction.
  double l2_distance(const Eigen::VectorXd& coeffs, const Field& f, int points) const;

  /// Coefficient vector of the constant function 1.
  Eigen::VectorXd constant(double value = 1.0) const;

  friend bool same_discretization(const DGSpace& a, const DGSpace& b);

 private:
  std::variant<Mesh1D, Mesh2D> mesh_;
  PolyBasis basis_;
};

/// A member of V_h^k: coefficient vector bound to its space.
struct DGCoeffs {
  std::shared_ptr<const DGSpace> space;
  Eigen::VectorXd values;

  DGCoeffs() = default;
  DGCoeffs(std::shared_ptr<const DGSpace> s, Eigen::VectorXd v) : space(std::move(s)), values(std::move(v)) {}
  explicit DGCoeffs(std::shared_ptr<const DGSpace> s)
      : space(std::move(s)), values(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(space->size()))) {}

  /// Coefficient 2-norm, equal to the L2(Omega) norm of the function.
  double norm() const { return values.norm(); }
  auto block(std::size_t c) { return values.segment(static_cast<Eigen::Index>(c) * space->n_modes(), space->n_modes()); }
  auto block(std::size_t c) const {
    return values.segment(static_cast<Eigen::Index>(c) * space->n_modes(), space->n_modes());
  }
};

/// Throws incompatible-error unless both coefficient sets live on the same space.
void require_compatible(const DGCoeffs& a, const DGCoeffs& b);

}  // namespace sdrkdg
