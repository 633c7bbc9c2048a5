// SPDX-License-Identifier: Apache-2.0
#include "sdrkdg/matrix_io.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <limits>

#include "sdrkdg/error.hpp"

namespace sdrkdg {

namespace {

constexpr std::array<char, 8> kMagic = {'S', 'D', 'R', 'K', 'M', 'A', 'T', '1'};

static_assert(std::endian::native == std::endian::little, "binary matrix format assumes a little-endian host");

void require_stream(bool ok, const std::string& path, const char* what) {
  SDRKDG_REQUIRE(ok, ErrorKind::invalid_argument, std::string(what) + " '" + path + "'");
}

}  // namespace

void write_matrix_text(const std::string& path, const Eigen::MatrixXd& m) {
  std::ofstream out(path);
  require_stream(out.good(), path, "cannot open for writing");
  out << m.rows() << ' ' << m.cols() << '\n' << std::setprecision(17);
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) out << m(i, j) << '\n';
  require_stream(out.good(), path, "write failed for");
}

Eigen::MatrixXd read_matrix_text(const std::string& path) {
  std::ifstream in(path);
  require_stream(in.good(), path, "cannot open");
  Eigen::Index rows = 0, cols = 0;
  in >> rows >> cols;
  require_stream(in.good() && rows >= 0 && cols >= 0, path, "bad matrix header in");
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) {
      in >> m(i, j);
      require_stream(!in.fail(), path, "truncated matrix data in");
    }
  return m;
}

void write_matrix_binary(const std::string& path, const Eigen::MatrixXd& m) {
  SDRKDG_REQUIRE(m.rows() <= std::numeric_limits<std::uint32_t>::max() &&
                     m.cols() <= std::numeric_limits<std::uint32_t>::max(),
                 ErrorKind::invalid_argument, "matrix too large for the binary format");
  std::ofstream out(path, std::ios::binary);
  require_stream(out.good(), path, "cannot open for writing");
  const auto rows = static_cast<std::uint32_t>(m.rows());
  const auto cols = static_cast<std::uint32_t>(m.cols());
  out.write(kMagic.data(), kMagic.size());
  out.write(reinterpret_cast<const char*>(&rows), 4);
  out.write(reinterpret_cast<const char*>(&cols), 4);
  // Eigen's default storage is already column-major.
  out.write(reinterpret_cast<const char*>(m.data()), static_cast<std::streamsize>(m.size() * sizeof(double)));
  require_stream(out.good(), path, "write failed for");
}

Eigen::MatrixXd read_matrix_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require_stream(in.good(), path, "cannot open");
  std::array<char, 8> magic{};
  std::uint32_t rows = 0, cols = 0;
  in.read(magic.data(), magic.size());
  in.read(reinterpret_cast<char*>(&rows), 4);
  in.read(reinterpret_cast<char*>(&cols), 4);
  require_stream(in.good() && magic == kMagic, path, "not a binary matrix file:");
  Eigen::MatrixXd m(rows, cols);
  in.read(reinterpret_cast<char*>(m.data()), static_cast<std::streamsize>(m.size() * sizeof(double)));
  require_stream(!in.fail(), path, "truncated matrix data in");
  return m;
}

}  // namespace sdrkdg
