#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace netspace {

/// Piecewise-constant function on a uniform 1D grid.
///
/// The represented function equals values[k] on
/// [origin + k*cell, origin + (k+1)*cell) and vanishes outside the support.
class Grid1D {
 public:
  Grid1D(double origin, double cell, std::vector<double> values);

  double origin() const noexcept { return origin_; }
  double cell() const noexcept { return cell_; }
  std::size_t size() const noexcept { return values_.size(); }
  double extent() const noexcept { return cell_ * static_cast<double>(values_.size()); }
  double operator[](std::size_t k) const noexcept { return values_[k]; }
  std::span<const double> values() const noexcept { return values_; }

 private:
  double origin_;
  double cell_;
  std::vector<double> values_;
};

/// Piecewise-constant, compactly supported function on a uniform n1 x n2 grid.
///
/// Values are stored row-major with the x1 index outermost: value(i, j) is
/// the function value on cell i along x1 and cell j along x2. Instances are
/// immutable; transformations return new grids.
class Grid2D {
 public:
  Grid2D(std::array<double, 2> origin, std::array<double, 2> cells, std::size_t n1, std::size_t n2,
         std::vector<double> values);

  std::size_t n1() const noexcept { return n1_; }
  std::size_t n2() const noexcept { return n2_; }
  std::size_t dim(int axis) const noexcept { return axis == 0 ? n1_ : n2_; }
  double origin(int axis) const noexcept { return origin_[static_cast<std::size_t>(axis)]; }
  double cell(int axis) const noexcept { return cells_[static_cast<std::size_t>(axis)]; }
  double extent(int axis) const noexcept { return cell(axis) * static_cast<double>(dim(axis)); }
  std::array<double, 2> origins() const noexcept { return origin_; }
  std::array<double, 2> cells() const noexcept { return cells_; }

  double operator()(std::size_t i, std::size_t j) const noexcept { return values_[i * n2_ + j]; }
  std::span<const double> values() const noexcept { return values_; }

  /// Same metadata, new values (size must be n1*n2).
  Grid2D with_values(std::vector<double> values) const;
  /// Same metadata and origin, values zero-padded to the given dimensions.
  Grid2D padded(std::size_t n1, std::size_t n2) const;
  Grid2D scaled(double alpha) const;
  Grid2D abs() const;
  /// Origin moved by whole cells along each axis.
  Grid2D shifted(long cells1, long cells2) const;
  /// Every cell split into `factor` equal cells per axis, values copied.
  Grid2D refined(std::size_t factor) const;

  double max_abs() const noexcept;
  bool is_zero() const noexcept;

 private:
  std::array<double, 2> origin_;
  std::array<double, 2> cells_;
  std::size_t n1_;
  std::size_t n2_;
  std::vector<double> values_;
};

/// Pointwise alpha*f + beta*g for grids with identical metadata.
Grid2D combine(double alpha, const Grid2D& f, double beta, const Grid2D& g);

bool same_metadata(const Grid2D& f, const Grid2D& g) noexcept;

/// FNV-1a over the grid metadata and value bit patterns.
std::uint64_t checksum(const Grid2D& f) noexcept;

enum class Family { uniform, signed_values, block_constant, additive, zero };

/// Accepts "uniform", "signed", "block-constant", "additive", "zero".
Family parse_family(std::string_view name);
std::string_view to_string(Family family) noexcept;

/// Indicator of [0,a] x [0,b] sampled with n1 x n2 cells of size (a/n1, b/n2).
Grid2D make_indicator_2d(double a, double b, std::size_t n1, std::size_t n2);
/// Indicator of [0,a] with n cells.
Grid1D make_indicator_1d(double a, std::size_t n);

/// Outer product g(x1) * h(x2).
Grid2D tensor(const Grid1D& g, const Grid1D& h);

/// Deterministic random grid with origin (0,0).
///
/// Families:
///  - uniform: iid values in [0,1)
///  - signed: iid values in [-1,1)
///  - block-constant: the grid is tiled by b1 x b2 blocks (b_i drawn from
///    1..max(1, n_i/4)), each block carries one value in [-1,1)
///  - additive: v_ij = a_i + b_j with a_i, b_j iid in [-1/2,1/2)
///  - zero: all values 0
Grid2D random_grid(std::uint64_t seed, std::size_t n1, std::size_t n2, std::array<double, 2> cells,
                   Family family);

/// Random nonnegative step function on [origin, origin + n*cell) with values in
/// [0,1); roughly a quarter of the cells are zero.
Grid1D random_step_1d(std::uint64_t seed, std::size_t n, double cell, double origin);

/// 2D prefix integrals of a grid function.
///
/// at(i, j) is the integral of f over
/// [origin1, origin1 + i*h1] x [origin2, origin2 + j*h2]; row 0 and column 0
/// are zero. Sums are accumulated in row-major order with Neumaier
/// compensation so the table does not depend on how it is later queried.
class SummedAreaTable {
 public:
  explicit SummedAreaTable(const Grid2D& f);

  std::size_t n1() const noexcept { return n1_; }
  std::size_t n2() const noexcept { return n2_; }
  std::array<double, 2> cells() const noexcept { return cells_; }
  std::array<double, 2> origins() const noexcept { return origin_; }

  double at(std::size_t i, std::size_t j) const noexcept { return sums_[i * (n2_ + 1) + j]; }
  /// Integral over cells [i0, i1) x [j0, j1).
  double rect(std::size_t i0, std::size_t i1, std::size_t j0, std::size_t j1) const noexcept {
    return at(i1, j1) - at(i0, j1) - at(i1, j0) + at(i0, j0);
  }
  /// Row of prefix integrals at x1 node i (length n2 + 1).
  std::span<const double> row(std::size_t i) const noexcept {
    return std::span<const double>(sums_).subspan(i * (n2_ + 1), n2_ + 1);
  }

 private:
  std::array<double, 2> origin_;
  std::array<double, 2> cells_;
  std::size_t n1_;
  std::size_t n2_;
  std::vector<double> sums_;
};

inline SummedAreaTable build_sat(const Grid2D& f) { return SummedAreaTable(f); }

}  // namespace netspace
