#pragma once

#include <filesystem>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace asymtls {

/// Plain columnar text: one header line "# name[unit] ...", then one row per
/// line. Numbers use a fixed 17-significant-digit format so output is
/// byte-identical across runs.
class Table {
 public:
  Table& column(std::string name, std::string unit);
  void add_row(std::vector<std::string> cells);

  [[nodiscard]] std::size_t rows() const { return rows_.size(); }
  void write(std::ostream& out) const;
  /// Throws std::runtime_error if the file cannot be written.
  void save(const std::filesystem::path& path) const;

  static std::string num(double v);
  static std::string num(long long v);

  /// Table of equally long numeric columns.
  static Table numeric(const std::vector<std::pair<std::string, std::string>>& header,
                       const std::vector<std::span<const double>>& columns);

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace asymtls
