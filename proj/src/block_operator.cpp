// SPDX-License-Identifier: Apache-2.0
#include "sdrkdg/block_operator.hpp"

#include "sdrkdg/error.hpp"

namespace sdrkdg {

BlockOperator::BlockOperator(std::size_t n_cells, int block_size) : n_cells_(n_cells), block_size_(block_size) {}

std::size_t BlockOperator::add_block(Eigen::MatrixXd b) {
  SDRKDG_REQUIRE(b.rows() == block_size_ && b.cols() == block_size_, ErrorKind::invalid_argument,
                 "block has the wrong shape");
  pool_.push_back(std::move(b));
  return pool_.size() - 1;
}

void BlockOperator::add_link(Link link) {
  SDRKDG_REQUIRE(link.source.size() == n_cells_ && link.block.size() == n_cells_, ErrorKind::invalid_argument,
                 "link tables must cover every cell");
  links_.push_back(std::move(link));
}

void BlockOperator::apply(const Eigen::MatrixXd& x, Eigen::MatrixXd& y) const {
  const Eigen::Index n = block_size_;
  y.setZero(x.rows(), x.cols());
  for (const Link& link : links_) {
    for (std::size_t c = 0; c < n_cells_; ++c) {
      y.middleRows(static_cast<Eigen::Index>(c) * n, n).noalias() +=
          pool_[link.block[c]] * x.middleRows(static_cast<Eigen::Index>(link.source[c]) * n, n);
    }
  }
}

Eigen::VectorXd BlockOperator::apply(const Eigen::VectorXd& x) const {
  const Eigen::Index n = block_size_;
  Eigen::VectorXd y = Eigen::VectorXd::Zero(x.size());
  for (const Link& link : links_) {
    for (std::size_t c = 0; c < n_cells_; ++c) {
      y.segment(static_cast<Eigen::Index>(c) * n, n).noalias() +=
          pool_[link.block[c]] * x.segment(static_cast<Eigen::Index>(link.source[c]) * n, n);
    }
  }
  return y;
}

void BlockOperator::apply_transpose(const Eigen::MatrixXd& x, Eigen::MatrixXd& y) const {
  const Eigen::Index n = block_size_;
  y.setZero(x.rows(), x.cols());
  for (const Link& link : links_) {
    for (std::size_t c = 0; c < n_cells_; ++c) {
      y.middleRows(static_cast<Eigen::Index>(link.source[c]) * n, n).noalias() +=
          pool_[link.block[c]].transpose() * x.middleRows(static_cast<Eigen::Index>(c) * n, n);
    }
  }
}

Eigen::VectorXd BlockOperator::apply_transpose(const Eigen::VectorXd& x) const {
  const Eigen::Index n = block_size_;
  Eigen::VectorXd y = Eigen::VectorXd::Zero(x.size());
  for (const Link& link : links_) {
    for (std::size_t c = 0; c < n_cells_; ++c) {
      y.segment(static_cast<Eigen::Index>(link.source[c]) * n, n).noalias() +=
          pool_[link.block[c]].transpose() * x.segment(static_cast<Eigen::Index>(c) * n, n);
    }
  }
  return y;
}

BlockOperator BlockOperator::with_zero_rows(const std::vector<bool>& mask) const {
  SDRKDG_REQUIRE(static_cast<int>(mask.size()) == block_size_, ErrorKind::invalid_argument,
                 "row mask must have one entry per mode");
  BlockOperator out = *this;
  for (Eigen::MatrixXd& b : out.pool_)
    for (int r = 0; r < block_size_; ++r)
      if (mask[r]) b.row(r).setZero();
  return out;
}

Eigen::MatrixXd BlockOperator::to_dense() const {
  const Eigen::Index n = block_size_;
  const Eigen::Index total = static_cast<Eigen::Index>(size());
  Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(total, total);
  for (const Link& link : links_)
    for (std::size_t c = 0; c < n_cells_; ++c)
      dense.block(static_cast<Eigen::Index>(c) * n, static_cast<Eigen::Index>(link.source[c]) * n, n, n) +=
          pool_[link.block[c]];
  return dense;
}

}  // namespace sdrkdg
