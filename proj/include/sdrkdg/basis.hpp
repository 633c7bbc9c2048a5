// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <vector>

namespace sdrkdg {

/// Values and d/dx of the Legendre polynomials scaled to unit L2 norm on
/// [-1,1], i.e. sqrt((2a+1)/2) P_a(x) for a = 0..k.
struct ModeValues {
  std::vector<double> value;
  std::vector<double> derivative;
};

ModeValues legendre_modes(int k, double x_ref);

/// Gauss-Legendre rule on [-1,1].
struct Quadrature {
  std::vector<double> nodes;
  std::vector<double> weights;
  int size() const { return static_cast<int>(nodes.size()); }
};

Quadrature gauss_quadrature(int n_points);

struct ModeIndex {
  int a = 0;  // degree in x
  int b = 0;  // degree in y
  int degree() const { return a + b; }
  friend bool operator==(const ModeIndex&, const ModeIndex&) = default;
};

/// Total-degree <= k exponents in graded order: by total degree, then by
/// decreasing x-degree. k=1 gives (0,0),(1,0),(0,1).
std::vector<ModeIndex> basis_2d_index(int k);

/// Orthonormal modal basis of P^k on the reference cell [-1,1]^dim.
/// Physical modes are the reference modes times sqrt(2/h) per direction,
/// which gives unit L2 norm on every cell.
class PolyBasis {
 public:
  PolyBasis(int dim, int degree);

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  int n_modes() const { return static_cast<int>(modes_.size()); }
  const std::vector<ModeIndex>& modes() const { return modes_; }
  /// True for the modes of total degree exactly k (the span of V_h^perp).
  bool is_top(int m) const { return modes_[m].degree() == degree_; }

  /// Reference values at (xi, eta); eta is ignored for dim = 1.
  void eval(double xi, double eta, double* out) const;
  /// Reference partial derivatives d/dxi and d/deta.
  void eval_grad(double xi, double eta, double* dxi, double* deta) const;

 private:
  int dim_;
  int degree_;
  std::vector<ModeIndex> modes_;
};

}  // namespace sdrkdg
