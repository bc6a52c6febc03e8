#include "netspace/csv.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "netspace/error.hpp"

namespace netspace {

namespace {

[[noreturn]] void parse_fail(std::size_t line, const std::string& what) {
  fail(Errc::parse, "line " + std::to_string(line) + ": " + what);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view token, std::size_t line) {
  token = trim(token);
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() || token.empty())
    parse_fail(line, "malformed number '" + std::string(token) + "'");
  return value;
}

std::size_t parse_count(std::string_view token, std::size_t line) {
  token = trim(token);
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() || token.empty())
    parse_fail(line, "malformed count '" + std::string(token) + "'");
  return value;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  for (;;) {
    const auto pos = s.find(sep);
    parts.push_back(s.substr(0, pos));
    if (pos == std::string_view::npos) break;
    s.remove_prefix(pos + 1);
  }
  return parts;
}

// Parses "key=a,b" into two values.
std::array<std::string_view, 2> pair_field(std::string_view header, std::string_view key,
                                           std::size_t line) {
  const std::string needle = std::string(key) + "=";
  const auto pos = header.find(needle);
  if (pos == std::string_view::npos) parse_fail(line, "header is missing '" + needle + "'");
  auto rest = header.substr(pos + needle.size());
  rest = rest.substr(0, rest.find(' '));
  const auto parts = split(rest, ',');
  if (parts.size() != 2) parse_fail(line, "header field '" + std::string(key) + "' needs two values");
  return {parts[0], parts[1]};
}

}  // namespace

std::string format_double(double value) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

Grid2D read_grid_csv(std::istream& in) {
  std::string text;
  std::size_t line_no = 0;
  if (!std::getline(in, text)) parse_fail(1, "empty input, expected grid header");
  ++line_no;
  std::string_view header = trim(text);
  if (header.empty() || header.front() != '#') parse_fail(line_no, "expected '# origin=... cells=... dims=...'");
  header.remove_prefix(1);

  const auto origin = pair_field(header, "origin", line_no);
  const auto cells = pair_field(header, "cells", line_no);
  const auto dims = pair_field(header, "dims", line_no);
  const std::array<double, 2> o{parse_number(origin[0], line_no), parse_number(origin[1], line_no)};
  const std::array<double, 2> h{parse_number(cells[0], line_no), parse_number(cells[1], line_no)};
  const std::size_t n1 = parse_count(dims[0], line_no), n2 = parse_count(dims[1], line_no);
  if (n1 == 0 || n2 == 0) parse_fail(line_no, "dims must be positive");
  if (!(h[0] > 0.0) || !(h[1] > 0.0)) parse_fail(line_no, "cells must be positive");

  std::vector<double> values;
  values.reserve(n1 * n2);
  std::size_t rows = 0;
  while (std::getline(in, text)) {
    ++line_no;
    const auto row = trim(text);
    if (row.empty()) continue;
    if (row.front() == '#') {
      if (rows == 0) continue;
      parse_fail(line_no, "comment lines are only allowed before the data rows");
    }
    if (rows == n1) parse_fail(line_no, "more than " + std::to_string(n1) + " data rows");
    const auto fields = split(row, ',');
    if (fields.size() != n2)
      parse_fail(line_no, "expected " + std::to_string(n2) + " values, found " +
                              std::to_string(fields.size()));
    for (auto field : fields) values.push_back(parse_number(field, line_no));
    ++rows;
  }
  if (rows != n1)
    parse_fail(line_no, "expected " + std::to_string(n1) + " data rows, found " + std::to_string(rows));
  try {
    return Grid2D(o, h, n1, n2, std::move(values));
  } catch (const Error& e) {
    parse_fail(line_no, e.what());
  }
}

Grid2D load_grid_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::io, "cannot open '" + path.string() + "'");
  return read_grid_csv(in);
}

void write_grid_csv(std::ostream& out, const Grid2D& grid, std::string_view provenance) {
  out << "# origin=" << format_double(grid.origin(0)) << ',' << format_double(grid.origin(1))
      << " cells=" << format_double(grid.cell(0)) << ',' << format_double(grid.cell(1))
      << " dims=" << grid.n1() << ',' << grid.n2() << '\n';
  if (!provenance.empty()) out << "# " << provenance << '\n';
  for (std::size_t i = 0; i < grid.n1(); ++i) {
    for (std::size_t j = 0; j < grid.n2(); ++j) {
      if (j) out << ',';
      out << format_double(grid(i, j));
    }
    out << '\n';
  }
}

void save_grid_csv(const std::filesystem::path& path, const Grid2D& grid,
                   std::string_view provenance) {
  std::ofstream out(path);
  if (!out) fail(Errc::io, "cannot write '" + path.string() + "'");
  write_grid_csv(out, grid, provenance);
  if (!out) fail(Errc::io, "write to '" + path.string() + "' failed");
}

}  // namespace netspace
