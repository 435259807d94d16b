#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace htc {

using Cell = std::variant<double, std::int64_t, std::string>;

/// Rectangular table. Doubles are written in shortest round-trip form with a
/// '.' decimal separator; rows are newline-terminated.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;

  void append(std::vector<Cell> row);
};

std::string format_cell(const Cell& cell);

/// Serializes the table; every row must match the header width.
std::string to_csv(const Table& table);

/// Writes atomically (temp file + rename).
void write_csv(const Table& table, const std::string& path);

/// Minimal reader: splits on commas, no quoting. Returns header + string rows.
struct RawCsv {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};
RawCsv read_csv(const std::string& path);

}  // namespace htc
