// SPDX-License-Identifier: Apache-2.0
#include "sdrkdg/basis.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "sdrkdg/error.hpp"

namespace sdrkdg {

ModeValues legendre_modes(int k, double x) {
  SDRKDG_REQUIRE(k >= 0, ErrorKind::invalid_argument, "degree must be non-negative");
  SDRKDG_REQUIRE(std::abs(x) <= 1.0, ErrorKind::domain, "reference coordinate outside [-1,1]");
  ModeValues out;
  out.value.resize(k + 1);
  out.derivative.resize(k + 1);
  // Three-term recurrence for P_n and P_n'.
  double p_prev = 0.0, p = 1.0, dp_prev = 0.0, dp = 0.0;
  for (int n = 0; n <= k; ++n) {
    const double scale = std::sqrt((2.0 * n + 1.0) / 2.0);
    out.value[n] = scale * p;
    out.derivative[n] = scale * dp;
    const double p_next = ((2.0 * n + 1.0) * x * p - n * p_prev) / (n + 1.0);
    const double dp_next = dp_prev + (2.0 * n + 1.0) * p;
    p_prev = p;
    p = p_next;
    dp_prev = dp;
    dp = dp_next;
  }
  return out;
}

namespace {

// P_n(x) and P_n'(x) by the three-term recurrence.
void legendre_with_derivative(int n, double x, double& p, double& dp) {
  double p0 = 1.0, p1 = x;
  for (int j = 2; j <= n; ++j) {
    const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
    p0 = p1;
    p1 = p2;
  }
  p = p1;
  dp = n * (x * p1 - p0) / (x * x - 1.0);
}

}  // namespace

Quadrature gauss_quadrature(int n) {
  SDRKDG_REQUIRE(n >= 1, ErrorKind::invalid_argument, "quadrature needs at least one point");
  Quadrature q;
  if (n == 1) {
    q.nodes = {0.0};
    q.weights = {2.0};
    return q;
  }
  q.nodes.resize(n);
  q.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double p = 0.0, dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      legendre_with_derivative(n, x, p, dp);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) <= 1e-16) break;
    }
    legendre_with_derivative(n, x, p, dp);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    q.nodes[i] = -x;
    q.nodes[n - 1 - i] = x;
    q.weights[i] = w;
    q.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) q.nodes[n / 2] = 0.0;
  return q;
}

std::vector<ModeIndex> basis_2d_index(int k) {
  std::vector<ModeIndex> out;
  out.reserve(static_cast<std::size_t>((k + 1) * (k + 2) / 2));
  for (int d = 0; d <= k; ++d)
    for (int b = 0; b <= d; ++b) out.push_back({d - b, b});
  return out;
}

PolyBasis::PolyBasis(int dim, int degree) : dim_(dim), degree_(degree) {
  SDRKDG_REQUIRE(dim == 1 || dim == 2, ErrorKind::invalid_argument, "dimension must be 1 or 2");
  SDRKDG_REQUIRE(degree >= 0, ErrorKind::invalid_argument, "degree must be non-negative");
  if (dim == 1) {
    for (int a = 0; a <= degree; ++a) modes_.push_back({a, 0});
  } else {
    modes_ = basis_2d_index(degree);
  }
}

void PolyBasis::eval(double xi, double eta, double* out) const {
  const ModeValues px = legendre_modes(degree_, xi);
  if (dim_ == 1) {
    for (int m = 0; m <= degree_; ++m) out[m] = px.value[m];
    return;
  }
  const ModeValues py = legendre_modes(degree_, eta);
  for (std::size_t m = 0; m < modes_.size(); ++m) out[m] = px.value[modes_[m].a] * py.value[modes_[m].b];
}

void PolyBasis::eval_grad(double xi, double eta, double* dxi, double* deta) const {
  const ModeValues px = legendre_modes(degree_, xi);
  if (dim_ == 1) {
    for (int m = 0; m <= degree_; ++m) {
      dxi[m] = px.derivative[m];
      if (deta) deta[m] = 0.0;
    }
    return;
  }
  const ModeValues py = legendre_modes(degree_, eta);
  for (std::size_t m = 0; m < modes_.size(); ++m) {
    dxi[m] = px.derivative[modes_[m].a] * py.value[modes_[m].b];
    deta[m] = px.value[modes_[m].a] * py.derivative[modes_[m].b];
  }
}

}  // namespace sdrkdg
