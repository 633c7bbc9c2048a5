// SPDX-License-Identifier: Apache-2.0
#include "sdrkdg/csv.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "sdrkdg/error.hpp"

namespace sdrkdg {

namespace {

std::string printf_double(const char* fmt, double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, x);
  return buf;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  throw Error(ErrorKind::invalid_argument, "no CSV column '" + name + "'");
}

const std::string& CsvTable::at(std::size_t row, const std::string& name) const {
  return rows.at(row).at(column(name));
}

std::optional<std::string> CsvTable::meta_value(const std::string& key) const {
  for (const auto& [k, v] : meta)
    if (k == key) return v;
  return std::nullopt;
}

std::string to_csv(const CsvTable& t) {
  std::ostringstream os;
  for (const auto& [k, v] : t.meta) os << "# " << k << ": " << v << '\n';
  auto line = [&](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      SDRKDG_REQUIRE(fields[i].find_first_of(",\n\"") == std::string::npos, ErrorKind::invalid_argument,
                     "CSV field contains a separator: '" + fields[i] + "'");
      os << (i ? "," : "") << fields[i];
    }
    os << '\n';
  };
  line(t.header);
  for (const auto& r : t.rows) {
    SDRKDG_REQUIRE(r.size() == t.header.size(), ErrorKind::invalid_argument, "CSV row width differs from header");
    line(r);
  }
  return os.str();
}

CsvTable parse_csv(std::istream& in) {
  CsvTable t;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const std::string body = line.substr(line.size() > 1 && line[1] == ' ' ? 2 : 1);
      const auto colon = body.find(": ");
      if (colon == std::string::npos) t.meta.emplace_back(body, "");
      else t.meta.emplace_back(body.substr(0, colon), body.substr(colon + 2));
      continue;
    }
    auto fields = split_fields(line);
    if (!have_header) {
      t.header = std::move(fields);
      have_header = true;
    } else {
      SDRKDG_REQUIRE(fields.size() == t.header.size(), ErrorKind::invalid_argument,
                     "CSV row has " + std::to_string(fields.size()) + " fields, header has " +
                         std::to_string(t.header.size()));
      t.rows.push_back(std::move(fields));
    }
  }
  SDRKDG_REQUIRE(have_header, ErrorKind::invalid_argument, "CSV without header line");
  return t;
}

CsvTable parse_csv_text(const std::string& text) {
  std::istringstream in(text);
  return parse_csv(in);
}

std::string format_error(double x) { return printf_double("%.2e", x); }
std::string format_sig6(double x) { return printf_double("%.6g", x); }
std::string format_eoc(const std::optional<double>& x) { return x ? printf_double("%.2f", *x) : std::string(); }
std::string format_raw(double x) { return printf_double("%.17g", x); }

}  // namespace sdrkdg
