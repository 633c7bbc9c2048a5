// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Core>

namespace sdrkdg {

/// Periodic block-sparse operator on cell-major coefficient vectors.
///
/// Row block c receives sum over links s of  B[s](c) * x[source_s(c)], where
/// link 0 is the cell itself and the remaining links point at upwind
/// neighbours. Blocks are stored in a pool and referenced per cell, so uniform
/// meshes keep one block per link regardless of the cell count.
class BlockOperator {
 public:
  struct Link {
    /// Offset label of the neighbour: {0} self, {-1} left, {0,-1} bottom ...
    int dx = 0;
    int dy = 0;
    std::vector<std::size_t> source;  // per cell
    std::vector<std::size_t> block;   // per cell, index into pool
  };

  BlockOperator() = default;
  BlockOperator(std::size_t n_cells, int block_size);

  std::size_t n_cells() const { return n_cells_; }
  int block_size() const { return block_size_; }
  std::size_t size() const { return n_cells_ * static_cast<std::size_t>(block_size_); }
  const std::vector<Link>& links() const { return links_; }
  const std::vector<Eigen::MatrixXd>& pool() const { return pool_; }

  std::size_t add_block(Eigen::MatrixXd b);
  void add_link(Link link);

  /// y = A x (x may hold several columns).
  void apply(const Eigen::MatrixXd& x, Eigen::MatrixXd& y) const;
  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
  /// y = A^T x
  void apply_transpose(const Eigen::MatrixXd& x, Eigen::MatrixXd& y) const;
  Eigen::VectorXd apply_transpose(const Eigen::VectorXd& x) const;

  /// Copy with the rows flagged in `mask` (per mode) set to zero in every block.
  BlockOperator with_zero_rows(const std::vector<bool>& mask) const;

  Eigen::MatrixXd to_dense() const;

 private:
  std::size_t n_cells_ = 0;
  int block_size_ = 0;
  std::vector<Link> links_;
  std::vector<Eigen::MatrixXd> pool_;
};

}  // namespace sdrkdg
