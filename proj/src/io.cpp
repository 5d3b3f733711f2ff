#include "cavcal/io.hpp"

#include <cstdio>
#include <istream>
#include <sstream>

namespace cavcal {

namespace {

// Strip '#' comment lines and turn commas into spaces.
std::string normalize(const std::string& text) {
  std::string out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first != std::string::npos && line[first] == '#') continue;
    for (char& ch : line)
      if (ch == ',') ch = ' ';
    out += line;
    out += ' ';
  }
  return out;
}

}  // namespace

Mat3 parse_mat3(const std::string& text) {
  std::istringstream in(normalize(text));
  Mat3 a;
  for (int i = 0; i < 9; ++i) {
    double v;
    if (!(in >> v))
      throw DegenerateArgument("matrix text: expected 9 numbers");
    a.e[i] = v;
  }
  double extra;
  if (in >> extra)
    throw DegenerateArgument("matrix text: more than 9 numbers");
  if (!is_finite(a))
    throw DegenerateArgument("matrix text: non-finite entry");
  return a;
}

Mat3 read_mat3(std::istream& in) {
  std::ostringstream all;
  all << in.rdbuf();
  return parse_mat3(all.str());
}

std::string format_real(real x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.8g", double(x));
  return buf;
}

std::string format_mat3(const Mat3& a) {
  std::string out;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      out += format_real(a(r, c));
      out += (c == 2 ? '\n' : ' ');
    }
  }
  return out;
}

std::string CsvTable::to_string() const {
  std::string out;
  for (size_t i = 0; i < header.size(); ++i) {
    out += header[i];
    out += (i + 1 == header.size() ? '\n' : ',');
  }
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      out += format_real(row[i]);
      out += (i + 1 == row.size() ? '\n' : ',');
    }
  }
  return out;
}

std::vector<std::pair<real, real>> read_csv_pairs(std::istream& in) {
  std::vector<std::pair<real, real>> out;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    for (char& ch : line)
      if (ch == ',') ch = ' ';
    std::istringstream ls(line);
    double a, b;
    if (!(ls >> a >> b)) {
      if (first) {  // header row
        first = false;
        continue;
      }
      throw DegenerateArgument("csv: malformed row: " + line);
    }
    first = false;
    out.emplace_back(a, b);
  }
  return out;
}

}  // namespace cavcal
