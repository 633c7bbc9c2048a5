// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include <Eigen/Core>

namespace sdrkdg {

/// Text format: first line "rows cols", then one value per line in
/// column-major order, printed with 17 significant digits.
void write_matrix_text(const std::string& path, const Eigen::MatrixXd& m);
Eigen::MatrixXd read_matrix_text(const std::string& path);

/// Binary format, little-endian: 8-byte magic "SDRKMAT1", uint32 rows,
/// uint32 cols, then rows*cols float64 values in column-major order.
void write_matrix_binary(const std::string& path, const Eigen::MatrixXd& m);
Eigen::MatrixXd read_matrix_binary(const std::string& path);

}  // namespace sdrkdg
