#include "cli_support.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

#include "netspace/error.hpp"

namespace netspace::cli {

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  for (;;) {
    const auto pos = s.find(sep);
    out.push_back(s.substr(0, pos));
    if (pos == std::string_view::npos) return out;
    s.remove_prefix(pos + 1);
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return s;
}

template <class T>
T parse_number(std::string_view text, std::string_view what) {
  text = trim(text);
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size())
    fail(Errc::invalid_argument, "malformed " + std::string(what) + " '" + std::string(text) + "'");
  return value;
}

}  // namespace

std::array<double, 2> parse_pair(std::string_view text, std::string_view what) {
  const auto parts = split(text, ',');
  if (parts.size() == 1) {
    const double v = parse_number<double>(parts[0], what);
    return {v, v};
  }
  if (parts.size() != 2) fail(Errc::invalid_argument, std::string(what) + " needs one or two values");
  return {parse_number<double>(parts[0], what), parse_number<double>(parts[1], what)};
}

std::vector<std::uint64_t> parse_seeds(std::string_view text) {
  std::vector<std::uint64_t> out;
  for (auto item : split(text, ',')) {
    const auto dash = item.find('-');
    if (dash == std::string_view::npos) {
      out.push_back(parse_number<std::uint64_t>(item, "seed"));
      continue;
    }
    const auto lo = parse_number<std::uint64_t>(item.substr(0, dash), "seed");
    const auto hi = parse_number<std::uint64_t>(item.substr(dash + 1), "seed");
    if (hi < lo) fail(Errc::invalid_argument, "seed range '" + std::string(item) + "' is empty");
    for (auto s = lo; s <= hi; ++s) out.push_back(s);
  }
  return out;
}

std::vector<std::size_t> parse_counts(std::string_view text, std::string_view what) {
  std::vector<std::size_t> out;
  for (auto item : split(text, ',')) out.push_back(parse_number<std::size_t>(item, what));
  return out;
}

std::vector<Tau> parse_taus(std::string_view text) {
  std::vector<Tau> out;
  for (auto item : split(text, ',')) {
    const auto x = item.find('x');
    if (x == std::string_view::npos)
      fail(Errc::invalid_argument, "tau choice '" + std::string(item) + "' must look like 3x5");
    const Tau t{parse_number<std::size_t>(item.substr(0, x), "tau cells"),
                parse_number<std::size_t>(item.substr(x + 1), "tau cells")};
    if (t.c1 == 0 || t.c2 == 0) fail(Errc::invalid_argument, "tau cell counts must be positive");
    out.push_back(t);
  }
  return out;
}

std::vector<Family> parse_families(std::string_view text) {
  std::vector<Family> out;
  for (auto item : split(text, ',')) out.push_back(parse_family(trim(item)));
  return out;
}

std::vector<double> dyadic_lattice(double h, double extent, int below, int above) {
  std::vector<double> out;
  const double stop = std::ldexp(extent, above);
  for (int k = -below;; ++k) {
    const double t = std::ldexp(h, k);
    out.push_back(t);
    if (t >= stop || k > 4096) break;
  }
  return out;
}

std::string provenance(std::string_view command,
                       const std::vector<std::pair<std::string, std::string>>& fields) {
  std::string out = "# netspace " NETSPACE_VERSION " ";
  out += command;
  for (const auto& [key, value] : fields) {
    out += ' ';
    out += key;
    out += '=';
    out += value;
  }
  return out;
}

std::string hex64(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

}  // namespace netspace::cli
