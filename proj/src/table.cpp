#include "asymtls/table.hpp"

#include <fstream>
#include <stdexcept>

#include <fmt/core.h>

namespace asymtls {

Table& Table::column(std::string name, std::string unit) {
  header_.push_back(fmt::format("{}[{}]", name, unit));
  return *this;
}

void Table::add_row(std::vector<std::string> cells) {
  if (cells.size() != header_.size())
    throw std::invalid_argument(fmt::format("row has {} cells, table has {} columns", cells.size(), header_.size()));
  rows_.push_back(std::move(cells));
}

std::string Table::num(double v) { return fmt::format("{:.16e}", v); }
std::string Table::num(long long v) { return fmt::format("{}", v); }

void Table::write(std::ostream& out) const {
  out << '#';
  for (const auto& h : header_) out << ' ' << h;
  out << '\n';
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ' ';
      out << row[i];
    }
    out << '\n';
  }
}

void Table::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", path.string()));
  write(out);
  if (!out) throw std::runtime_error(fmt::format("write to '{}' failed", path.string()));
}

Table Table::numeric(const std::vector<std::pair<std::string, std::string>>& header,
                     const std::vector<std::span<const double>>& columns) {
  if (header.size() != columns.size()) throw std::invalid_argument("header and column counts differ");
  Table t;
  for (const auto& [name, unit] : header) t.column(name, unit);
  const std::size_t n = columns.empty() ? 0 : columns.front().size();
  for (const auto& c : columns)
    if (c.size() != n) throw std::invalid_argument("columns differ in length");
  t.rows_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::string> row;
    row.reserve(columns.size());
    for (const auto& c : columns) row.push_back(num(c[i]));
    t.rows_.push_back(std::move(row));
  }
  return t;
}

}  // namespace asymtls
