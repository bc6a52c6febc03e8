#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>

#include "netspace/grid.hpp"

namespace netspace {

/// Block size of the partition G_tau in cells per axis.
///
/// A count of Tau::unbounded stands for an infinitely long block along that
/// axis; averages along such an axis vanish for compactly supported f.
struct Tau {
  static constexpr std::size_t unbounded = std::numeric_limits<std::size_t>::max();

  std::size_t c1 = 1;
  std::size_t c2 = 1;

  std::size_t cells(int axis) const noexcept { return axis == 0 ? c1 : c2; }
  bool bounded(int axis) const noexcept { return cells(axis) != unbounded; }

  /// tau_i = c_i * h_i (infinity for unbounded axes).
  double length(int axis, double h) const noexcept;

  /// Converts lengths to cell counts; throws invalid-argument unless each
  /// length is a positive whole multiple of the cell size.
  static Tau from_lengths(double tau1, double tau2, std::array<double, 2> cells);

  friend bool operator==(const Tau&, const Tau&) = default;
};

/// f = f00 + f01 + f10 + f11 on the block-padded support.
struct Decomposition {
  Grid2D f00;
  Grid2D f01;
  Grid2D f10;
  Grid2D f11;
  Tau tau;
  std::uint64_t source_checksum = 0;

  const Grid2D& component(int index) const;
};

/// Block means (f11), per-direction block averages minus the block mean
/// (f01 averages over x2, f10 over x1) and the residual f00. The grid is
/// zero-padded to whole blocks on bounded axes.
Decomposition decompose(const Grid2D& f, const Tau& tau, unsigned workers = 1);

/// Max |integral| of each component over the block strips it must annihilate.
struct ZeroMeanReport {
  double f00_x1 = 0.0;  ///< integrals of f00 over I_k^1 at every x2 cell
  double f01_x1 = 0.0;  ///< integrals of f01 over I_k^1
  double f00_x2 = 0.0;  ///< integrals of f00 over I_m^2 at every x1 cell
  double f10_x2 = 0.0;  ///< integrals of f10 over I_m^2
  double max() const noexcept;
};

ZeroMeanReport check_zero_means(const Decomposition& d);

/// Max over cells of |f00 + f01 + f10 + f11 - f_padded|.
double reconstruction_error(const Grid2D& f, const Decomposition& d);

}  // namespace netspace
