// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "sdrkdg/dg_core.hpp"
#include "sdrkdg/rk.hpp"

namespace sdrkdg {

/// One-step evolution map K = I + E of a scheme, in compact form. L and
/// L_tilde are captured by reference and must outlive the map.
LinearMap evolution_map(const SchemeSpec& scheme, const BlockOperator& L, const BlockOperator& L_tilde, double tau);

/// E = K - I applied to the columns of x, without forming I + E.
void evolution_increment(const SchemeSpec& scheme, const BlockOperator& L, const BlockOperator& L_tilde, double tau,
                         const Eigen::MatrixXd& x, Eigen::MatrixXd& out);

struct StabilityPoint {
  std::string scheme;  // "RK3DG2"
  Variant variant = Variant::standard;
  int dim = 1;
  std::size_t N = 0;
  int m = 1;
  double cfl = 0.0;
  double delta = 1e-16;
  bool failed = false;
  std::string note;
};

struct DeltaOptions {
  std::size_t dense_cap = 4096;
  double rel_tol = 1e-10;
  int max_iter = 10000;
  std::uint64_t seed = 0;
};

constexpr double kDeltaFloor = 1e-16;

/// delta = max(||K^m||^2 - 1, 1e-16) with tau = cfl / (dim * N) on a uniform mesh.
StabilityPoint delta(const SchemeSpec& scheme, const DGSpace& space, double cfl, int m,
                     const DeltaOptions& options = {});

/// Cartesian sweep over N and cfl; rows ordered by N, then grid order. Per-point
/// failures become flagged rows. Uses the shared worker pool.
std::vector<StabilityPoint> cfl_sweep(const SchemeSpec& scheme, int k, int dim, const std::vector<std::size_t>& N_list,
                                      int m, const std::vector<double>& cfl_grid, const DeltaOptions& options = {});

/// Symbol of h L_h / beta on a uniform 1D mesh: A + B e^{-i theta}.
struct FourierSymbol {
  int degree = 0;
  Eigen::MatrixXd A;
  Eigen::MatrixXd B;
  Eigen::MatrixXcd at(double theta) const;
};

FourierSymbol fourier_symbol(int k);

struct CflResult {
  double cfl = 0.0;
  bool weakly_stable = false;  // no stable c found in (0, 2]
};

struct FourierOptions {
  int n_theta = 2048;
  double radius_tol = 1e-6;
  double bisection_tol = 5e-4;
};

/// Largest c in (0, 2] for which the amplification matrix has spectral
/// radius <= 1 + radius_tol on the sampled theta grid.
CflResult fourier_cfl(Variant variant, int r, int k, const FourierOptions& options = {});

/// Max spectral radius over the theta grid at a given c.
double max_amplification(Variant variant, const std::vector<double>& alpha, int k, double c, int n_theta = 2048);

}  // namespace sdrkdg
