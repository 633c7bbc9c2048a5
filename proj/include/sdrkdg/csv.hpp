// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sdrkdg {

/// Comment lines "# key: value", one header line, then data rows. Fields are
/// plain tokens without commas or quotes.
struct CsvTable {
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Column index by name; throws if absent.
  std::size_t column(const std::string& name) const;
  const std::string& at(std::size_t row, const std::string& name) const;
  std::optional<std::string> meta_value(const std::string& key) const;
};

std::string to_csv(const CsvTable& table);
CsvTable parse_csv(std::istream& in);
CsvTable parse_csv_text(const std::string& text);

/// 3 significant digits, e.g. 6.90e-03.
std::string format_error(double x);
/// 6 significant digits (delta, cfl).
std::string format_sig6(double x);
/// Two decimals; empty when absent.
std::string format_eoc(const std::optional<double>& x);
/// Round-trippable full precision.
std::string format_raw(double x);

}  // namespace sdrkdg
