#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "netspace/decomp.hpp"
#include "netspace/grid.hpp"

namespace netspace::cli {

/// "a,b" -> {a, b}; a single value is used for both axes. Accepts "inf".
std::array<double, 2> parse_pair(std::string_view text, std::string_view what);

/// "0-99", "1,5,9" or a mix such as "0-3,10".
std::vector<std::uint64_t> parse_seeds(std::string_view text);

std::vector<std::size_t> parse_counts(std::string_view text, std::string_view what);

/// "2x2,3x5" -> tau cell counts.
std::vector<Tau> parse_taus(std::string_view text);

std::vector<Family> parse_families(std::string_view text);

/// Dyadic thresholds h * 2^k from h * 2^-below up to the first value >= extent * 2^above.
std::vector<double> dyadic_lattice(double h, double extent, int below, int above);

/// "# netspace <version> <command> key=value ..." (no trailing newline).
std::string provenance(std::string_view command,
                       const std::vector<std::pair<std::string, std::string>>& fields);

std::string hex64(std::uint64_t value);

}  // namespace netspace::cli
