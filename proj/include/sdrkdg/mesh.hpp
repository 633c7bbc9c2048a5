// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace sdrkdg {

/// Periodic partition of [0,1]. Cell i spans (nodes[i], nodes[i+1]).
class Mesh1D {
 public:
  Mesh1D(std::vector<double> nodes, double beta);

  std::size_t n_cells() const { return sizes_.size(); }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& cell_sizes() const { return sizes_; }
  double h(std::size_t i) const { return sizes_[i]; }
  double h_max() const { return h_max_; }
  double h_min() const { return h_min_; }
  /// max h_i / min h_i
  double quasi_uniformity() const { return h_max_ / h_min_; }
  double beta() const { return beta_; }
  bool uniform() const { return uniform_; }
  std::size_t left_neighbor(std::size_t i) const { return i == 0 ? n_cells() - 1 : i - 1; }

 private:
  std::vector<double> nodes_;
  std::vector<double> sizes_;
  double h_max_ = 0.0;
  double h_min_ = 0.0;
  double beta_ = 1.0;
  bool uniform_ = true;
};

/// Uniform periodic Cartesian grid of [0,1]^2. Cell (i,j) has linear index
/// i + nx * j, with i counting in x.
class Mesh2D {
 public:
  Mesh2D(std::size_t nx, std::size_t ny, double beta_x, double beta_y);

  std::size_t nx() const { return nx_; }
  std::size_t ny() const { return ny_; }
  std::size_t n_cells() const { return nx_ * ny_; }
  double hx() const { return 1.0 / static_cast<double>(nx_); }
  double hy() const { return 1.0 / static_cast<double>(ny_); }
  double h_max() const { return hx() > hy() ? hx() : hy(); }
  double beta_x() const { return beta_x_; }
  double beta_y() const { return beta_y_; }

  std::size_t index(std::size_t i, std::size_t j) const { return i + nx_ * j; }
  std::size_t ix(std::size_t c) const { return c % nx_; }
  std::size_t iy(std::size_t c) const { return c / nx_; }
  std::size_t left_neighbor(std::size_t c) const;
  std::size_t bottom_neighbor(std::size_t c) const;

 private:
  std::size_t nx_;
  std::size_t ny_;
  double beta_x_;
  double beta_y_;
};

/// Interior nodes are shifted by independent uniform draws from
/// [-perturb_fraction/n, +perturb_fraction/n]; endpoints stay at 0 and 1.
/// The draws use std::mt19937_64 seeded with `seed`, mapped to [0,1) by taking
/// the top 53 bits, so the node sequence is identical on every platform.
Mesh1D build_mesh_1d(std::size_t n, double perturb_fraction, std::uint64_t seed, double beta = 1.0);

Mesh2D build_mesh_2d(std::size_t nx, std::size_t ny, double beta_x = 1.0, double beta_y = 1.0);

}  // namespace sdrkdg
