#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cavcal/mat3.hpp"

namespace cavcal {

/// Matrix text format: 9 whitespace- or comma-separated decimals, row-major;
/// lines starting with '#' are comments. Throws DegenerateArgument on
/// malformed or non-finite input.
Mat3 parse_mat3(const std::string& text);
Mat3 read_mat3(std::istream& in);

std::string format_mat3(const Mat3& a);

/// Fixed numeric text format used by all emitters: 8 significant digits,
/// '.' decimal separator, locale independent.
std::string format_real(real x);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<real>> rows;

  std::string to_string() const;
};

/// Reads a two-or-more column CSV with a header row; returns (col0, col1)
/// pairs. Throws DegenerateArgument on malformed input.
std::vector<std::pair<real, real>> read_csv_pairs(std::istream& in);

}  // namespace cavcal
