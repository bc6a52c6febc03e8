#include "netspace/grid.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <string>

#include "netspace/compensated.hpp"
#include "netspace/error.hpp"

namespace netspace {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_argument: return "invalid-argument";
    case Errc::parse: return "parse-error";
    case Errc::io: return "io-error";
    case Errc::unsupported_exponent: return "unsupported-exponent";
    case Errc::divergence: return "divergence";
    case Errc::undefined_ratio: return "undefined-ratio";
  }
  return "unknown";
}

namespace {

void require_finite(std::span<const double> values) {
  for (double v : values)
    if (!std::isfinite(v)) fail(Errc::invalid_argument, "grid values must be finite");
}

void require_cell(double h, const char* what) {
  if (!(h > 0.0) || !std::isfinite(h))
    fail(Errc::invalid_argument, std::string(what) + " must be positive and finite");
}

// Uniform double in [0,1) from the top 53 bits; independent of the
// standard library's distribution implementations.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

Grid1D::Grid1D(double origin, double cell, std::vector<double> values)
    : origin_(origin), cell_(cell), values_(std::move(values)) {
  require_cell(cell_, "cell width");
  if (!std::isfinite(origin_)) fail(Errc::invalid_argument, "origin must be finite");
  if (values_.empty()) fail(Errc::invalid_argument, "grid needs at least one cell");
  require_finite(values_);
}

Grid2D::Grid2D(std::array<double, 2> origin, std::array<double, 2> cells, std::size_t n1,
               std::size_t n2, std::vector<double> values)
    : origin_(origin), cells_(cells), n1_(n1), n2_(n2), values_(std::move(values)) {
  require_cell(cells_[0], "cell size h1");
  require_cell(cells_[1], "cell size h2");
  if (!std::isfinite(origin_[0]) || !std::isfinite(origin_[1]))
    fail(Errc::invalid_argument, "origin must be finite");
  if (n1_ == 0 || n2_ == 0) fail(Errc::invalid_argument, "grid dimensions must be at least 1");
  if (values_.size() != n1_ * n2_)
    fail(Errc::invalid_argument, "value count " + std::to_string(values_.size()) +
                                     " does not match dims " + std::to_string(n1_) + "x" +
                                     std::to_string(n2_));
  require_finite(values_);
}

Grid2D Grid2D::with_values(std::vector<double> values) const {
  return Grid2D(origin_, cells_, n1_, n2_, std::move(values));
}

Grid2D Grid2D::padded(std::size_t n1, std::size_t n2) const {
  if (n1 < n1_ || n2 < n2_) fail(Errc::invalid_argument, "padding cannot shrink a grid");
  std::vector<double> out(n1 * n2, 0.0);
  for (std::size_t i = 0; i < n1_; ++i)
    std::copy_n(values_.begin() + static_cast<std::ptrdiff_t>(i * n2_), n2_,
                out.begin() + static_cast<std::ptrdiff_t>(i * n2));
  return Grid2D(origin_, cells_, n1, n2, std::move(out));
}

Grid2D Grid2D::scaled(double alpha) const {
  std::vector<double> out(values_);
  for (double& v : out) v *= alpha;
  return with_values(std::move(out));
}

Grid2D Grid2D::abs() const {
  std::vector<double> out(values_);
  for (double& v : out) v = std::abs(v);
  return with_values(std::move(out));
}

Grid2D Grid2D::shifted(long cells1, long cells2) const {
  return Grid2D({origin_[0] + static_cast<double>(cells1) * cells_[0],
                 origin_[1] + static_cast<double>(cells2) * cells_[1]},
                cells_, n1_, n2_, values_);
}

Grid2D Grid2D::refined(std::size_t factor) const {
  if (factor == 0) fail(Errc::invalid_argument, "refinement factor must be positive");
  const std::size_t m1 = n1_ * factor, m2 = n2_ * factor;
  std::vector<double> out(m1 * m2);
  for (std::size_t i = 0; i < m1; ++i)
    for (std::size_t j = 0; j < m2; ++j) out[i * m2 + j] = (*this)(i / factor, j / factor);
  const double f = static_cast<double>(factor);
  return Grid2D(origin_, {cells_[0] / f, cells_[1] / f}, m1, m2, std::move(out));
}

double Grid2D::max_abs() const noexcept {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

bool Grid2D::is_zero() const noexcept {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
}

bool same_metadata(const Grid2D& f, const Grid2D& g) noexcept {
  return f.n1() == g.n1() && f.n2() == g.n2() && f.cells() == g.cells() &&
         f.origins() == g.origins();
}

Grid2D combine(double alpha, const Grid2D& f, double beta, const Grid2D& g) {
  if (!same_metadata(f, g)) fail(Errc::invalid_argument, "grids do not share metadata");
  std::vector<double> out(f.values().size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = alpha * f.values()[k] + beta * g.values()[k];
  return f.with_values(std::move(out));
}

std::uint64_t checksum(const Grid2D& f) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](std::uint64_t word) {
    for (int b = 0; b < 8; ++b) {
      h ^= (word >> (8 * b)) & 0xffu;
      h *= 0x100000001b3ULL;
    }
  };
  feed(f.n1());
  feed(f.n2());
  for (int axis = 0; axis < 2; ++axis) {
    feed(std::bit_cast<std::uint64_t>(f.origin(axis)));
    feed(std::bit_cast<std::uint64_t>(f.cell(axis)));
  }
  for (double v : f.values()) feed(std::bit_cast<std::uint64_t>(v));
  return h;
}

Family parse_family(std::string_view name) {
  if (name == "uniform") return Family::uniform;
  if (name == "signed") return Family::signed_values;
  if (name == "block-constant") return Family::block_constant;
  if (name == "additive") return Family::additive;
  if (name == "zero") return Family::zero;
  fail(Errc::invalid_argument, "unknown grid family '" + std::string(name) + "'");
}

std::string_view to_string(Family family) noexcept {
  switch (family) {
    case Family::uniform: return "uniform";
    case Family::signed_values: return "signed";
    case Family::block_constant: return "block-constant";
    case Family::additive: return "additive";
    case Family::zero: return "zero";
  }
  return "unknown";
}

Grid2D make_indicator_2d(double a, double b, std::size_t n1, std::size_t n2) {
  if (!(a > 0.0) || !(b > 0.0)) fail(Errc::invalid_argument, "indicator extents must be positive");
  if (n1 == 0 || n2 == 0) fail(Errc::invalid_argument, "indicator needs at least one cell per axis");
  return Grid2D({0.0, 0.0}, {a / static_cast<double>(n1), b / static_cast<double>(n2)}, n1, n2,
                std::vector<double>(n1 * n2, 1.0));
}

Grid1D make_indicator_1d(double a, std::size_t n) {
  if (!(a > 0.0)) fail(Errc::invalid_argument, "indicator extent must be positive");
  if (n == 0) fail(Errc::invalid_argument, "indicator needs at least one cell");
  return Grid1D(0.0, a / static_cast<double>(n), std::vector<double>(n, 1.0));
}

Grid2D tensor(const Grid1D& g, const Grid1D& h) {
  std::vector<double> out(g.size() * h.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < h.size(); ++j) out[i * h.size() + j] = g[i] * h[j];
  return Grid2D({g.origin(), h.origin()}, {g.cell(), h.cell()}, g.size(), h.size(), std::move(out));
}

Grid2D random_grid(std::uint64_t seed, std::size_t n1, std::size_t n2, std::array<double, 2> cells,
                   Family family) {
  if (n1 == 0 || n2 == 0) fail(Errc::invalid_argument, "grid dimensions must be at least 1");
  std::mt19937_64 rng(mix(seed ^ mix(n1 * 0x10001ULL + n2) ^ mix(static_cast<std::uint64_t>(family))));
  std::vector<double> v(n1 * n2, 0.0);
  switch (family) {
    case Family::uniform:
      for (double& x : v) x = unit(rng);
      break;
    case Family::signed_values:
      for (double& x : v) x = 2.0 * unit(rng) - 1.0;
      break;
    case Family::block_constant: {
      const std::size_t b1 = 1 + rng() % std::max<std::size_t>(1, n1 / 4);
      const std::size_t b2 = 1 + rng() % std::max<std::size_t>(1, n2 / 4);
      const std::size_t m1 = (n1 + b1 - 1) / b1, m2 = (n2 + b2 - 1) / b2;
      std::vector<double> blocks(m1 * m2);
      for (double& x : blocks) x = 2.0 * unit(rng) - 1.0;
      for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n2; ++j) v[i * n2 + j] = blocks[(i / b1) * m2 + j / b2];
      break;
    }
    case Family::additive: {
      std::vector<double> a(n1), b(n2);
      for (double& x : a) x = unit(rng) - 0.5;
      for (double& x : b) x = unit(rng) - 0.5;
      for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n2; ++j) v[i * n2 + j] = a[i] + b[j];
      break;
    }
    case Family::zero:
      break;
  }
  return Grid2D({0.0, 0.0}, cells, n1, n2, std::move(v));
}

Grid1D random_step_1d(std::uint64_t seed, std::size_t n, double cell, double origin) {
  if (n == 0) fail(Errc::invalid_argument, "step function needs at least one cell");
  std::mt19937_64 rng(mix(seed ^ 0x5eedULL) ^ mix(n));
  std::vector<double> v(n);
  for (double& x : v) {
    const double u = unit(rng);
    x = u < 0.25 ? 0.0 : unit(rng);
  }
  return Grid1D(origin, cell, std::move(v));
}

SummedAreaTable::SummedAreaTable(const Grid2D& f)
    : origin_(f.origins()), cells_(f.cells()), n1_(f.n1()), n2_(f.n2()),
      sums_((f.n1() + 1) * (f.n2() + 1), 0.0) {
  const double area = cells_[0] * cells_[1];
  std::vector<CompensatedSum> columns(n2_ + 1);
  for (std::size_t i = 1; i <= n1_; ++i) {
    CompensatedSum row;
    for (std::size_t j = 1; j <= n2_; ++j) {
      row += f(i - 1, j - 1);
      columns[j] += row.value();
      sums_[i * (n2_ + 1) + j] = area * columns[j].value();
    }
  }
}

}  // namespace netspace
