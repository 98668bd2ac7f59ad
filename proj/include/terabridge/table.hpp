#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace terabridge {

using Cell = std::variant<double, std::string>;

/// Shortest decimal text that parses back to the same double. Locale
/// independent.
std::string format_double(double v);

/// Column-named result table. Rows are written in insertion order.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  std::size_t column(const std::string& name) const;  ///< throws std::out_of_range
  bool has_column(const std::string& name) const;
  double number(std::size_t row, const std::string& name) const;
  const std::string& text(std::size_t row, const std::string& name) const;

  void write_csv(std::ostream& out) const;
  /// One JSON object per row, keys in column order.
  void write_jsonl(std::ostream& out) const;

  /// Cells that parse completely as numbers become doubles, others text.
  static Table read_csv(std::istream& in);
  static Table read_jsonl(std::istream& in);
};

}  // namespace terabridge
