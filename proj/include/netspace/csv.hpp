#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "netspace/grid.hpp"

namespace netspace {

/// Grid CSV format:
///
///     # origin=<o1>,<o2> cells=<h1>,<h2> dims=<n1>,<n2>
///     v00,v01,...            (n1 lines of n2 values, row i = x1 index)
///
/// Further lines starting with '#' directly after the header (provenance
/// records) are ignored on load. Values are written in shortest round-trip
/// form, so save/load is bit-exact.
Grid2D read_grid_csv(std::istream& in);
Grid2D load_grid_csv(const std::filesystem::path& path);

/// `provenance`, when non-empty, is written as a second comment line.
void write_grid_csv(std::ostream& out, const Grid2D& grid, std::string_view provenance = {});
void save_grid_csv(const std::filesystem::path& path, const Grid2D& grid,
                   std::string_view provenance = {});

/// Shortest decimal form that parses back to the same double.
std::string format_double(double value);

}  // namespace netspace
