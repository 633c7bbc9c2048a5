// SPDX-License-Identifier: Apache-2.0
#include "sdrkdg/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "sdrkdg/error.hpp"

namespace sdrkdg {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid-argument";
    case ErrorKind::invalid_mesh: return "invalid-mesh";
    case ErrorKind::invalid_perturbation: return "invalid-perturbation";
    case ErrorKind::invalid_speed: return "invalid-speed";
    case ErrorKind::domain: return "domain";
    case ErrorKind::unsupported_degree: return "unsupported-degree";
    case ErrorKind::unsupported_mesh: return "unsupported-mesh";
    case ErrorKind::incompatible: return "incompatible";
    case ErrorKind::projection_failure: return "projection-failure";
    case ErrorKind::no_convergence: return "no-convergence";
    case ErrorKind::cfl_too_large: return "cfl-too-large";
    case ErrorKind::blow_up: return "blow-up";
    case ErrorKind::config: return "config";
  }
  return "unknown";
}

Mesh1D::Mesh1D(std::vector<double> nodes, double beta) : nodes_(std::move(nodes)), beta_(beta) {
  SDRKDG_REQUIRE(nodes_.size() >= 3, ErrorKind::invalid_mesh, "a periodic mesh needs at least 2 cells");
  sizes_.resize(nodes_.size() - 1);
  for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) {
    sizes_[i] = nodes_[i + 1] - nodes_[i];
    SDRKDG_REQUIRE(sizes_[i] > 0.0, ErrorKind::invalid_mesh, "mesh nodes must be strictly increasing");
  }
  h_max_ = *std::max_element(sizes_.begin(), sizes_.end());
  h_min_ = *std::min_element(sizes_.begin(), sizes_.end());
  uniform_ = (h_max_ - h_min_) <= 1e-14 * h_max_;
}

Mesh2D::Mesh2D(std::size_t nx, std::size_t ny, double beta_x, double beta_y)
    : nx_(nx), ny_(ny), beta_x_(beta_x), beta_y_(beta_y) {
  SDRKDG_REQUIRE(nx >= 2 && ny >= 2, ErrorKind::invalid_mesh, "2D mesh needs at least 2 cells per direction");
  SDRKDG_REQUIRE(beta_x > 0.0 && beta_y > 0.0, ErrorKind::invalid_speed,
                 "advection speeds must be strictly positive");
}

std::size_t Mesh2D::left_neighbor(std::size_t c) const {
  const std::size_t i = ix(c), j = iy(c);
  return index(i == 0 ? nx_ - 1 : i - 1, j);
}

std::size_t Mesh2D::bottom_neighbor(std::size_t c) const {
  const std::size_t i = ix(c), j = iy(c);
  return index(i, j == 0 ? ny_ - 1 : j - 1);
}

Mesh1D build_mesh_1d(std::size_t n, double perturb_fraction, std::uint64_t seed, double beta) {
  SDRKDG_REQUIRE(n >= 2, ErrorKind::invalid_mesh, "n must be at least 2, got " + std::to_string(n));
  SDRKDG_REQUIRE(perturb_fraction >= 0.0 && perturb_fraction < 0.5, ErrorKind::invalid_perturbation,
                 "perturb_fraction must lie in [0, 0.5)");
  std::vector<double> nodes(n + 1);
  const double dn = static_cast<double>(n);
  std::mt19937_64 gen(seed);
  nodes[0] = 0.0;
  nodes[n] = 1.0;
  for (std::size_t i = 1; i < n; ++i) {
    const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;  // [0,1)
    const double shift = perturb_fraction > 0.0 ? (2.0 * u - 1.0) * perturb_fraction / dn : 0.0;
    nodes[i] = static_cast<double>(i) / dn + shift;
  }
  return Mesh1D(std::move(nodes), beta);
}

Mesh2D build_mesh_2d(std::size_t nx, std::size_t ny, double beta_x, double beta_y) {
  return Mesh2D(nx, ny, beta_x, beta_y);
}

}  // namespace sdrkdg
