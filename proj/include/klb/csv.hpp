#pragma once

#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace klb::csv {

/// Formats a double with 17 significant digits ("%.17g"), which round-trips
/// every finite IEEE-754 double. Non-finite values print as "nan", "inf", "-inf".
std::string format_number(double value);

/// Writes comma-separated rows terminated by '\n'. No quoting: callers only
/// emit identifiers and numbers.
class Writer {
public:
  explicit Writer(std::ostream& out) : out_(out) {}

  void header(const std::vector<std::string>& names);
  void row(std::span<const double> values);
  /// Row with a leading text cell, e.g. a basis name or a status flag.
  void row(std::string_view label, std::span<const double> values);
  void row_cells(const std::vector<std::string>& cells);

private:
  std::ostream& out_;
};

}  // namespace klb::csv
