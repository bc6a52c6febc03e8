#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "netspace/grid.hpp"

namespace netspace {

// Net-averaging functions over the net of node-aligned rectangles.
//
// A rectangle belongs to the net when its endpoints lie on grid nodes
// (anywhere on the infinite node lattice, not only inside the support).
// A threshold t is snapped up to the next multiple of the cell size, so a
// query never admits a rectangle shorter than t. Windows longer than the
// support extent are described analytically: their intersection with the
// support is a prefix, a suffix or the whole support, so the average is
// that integral divided by the window length.

/// Number of cells k >= 1 with k*h >= t (t within 1e-9 of a node counts as the node).
std::size_t snap_cells(double t, double h);

/// Sup of |integral| / window length over anchored windows, stored as the
/// witness pair so tails can be evaluated with a single division.
struct TailEntry {
  double integral = 0.0;  ///< |integral| of the witness rectangle
  double length = 1.0;    ///< side length of the witness along the bounded axis
  double ratio() const noexcept { return integral / length; }
};

struct TailModel {
  /// Max |integral| over rectangles whose per-axis range is a prefix, a
  /// suffix or the full support (B_corner).
  double corner = 0.0;
  /// Indexed by w2 - 1; used for t1 > L1: f(t1, t2) = along1[w2-1].integral / (t1 * length).
  std::vector<TailEntry> along1;
  /// Indexed by w1 - 1; used for t2 > L2.
  std::vector<TailEntry> along2;
};

/// Precomputed net-averaging function of a 2D grid.
class NetAverageTable {
 public:
  NetAverageTable(std::size_t n1, std::size_t n2, std::array<double, 2> cells,
                  std::vector<double> best, std::vector<double> suffix, TailModel tail);

  /// f(t1, t2; M) for t1, t2 > 0.
  double query(double t1, double t2) const;

  /// Max over rectangles of exactly w1 x w2 cells of |integral| / area (1-based).
  double best(std::size_t w1, std::size_t w2) const { return best_[(w1 - 1) * n2_ + (w2 - 1)]; }
  /// Max of best over w1' >= w1, w2' >= w2.
  double suffix(std::size_t w1, std::size_t w2) const { return suffix_[(w1 - 1) * n2_ + (w2 - 1)]; }

  const TailModel& tail() const noexcept { return tail_; }
  std::size_t n1() const noexcept { return n1_; }
  std::size_t n2() const noexcept { return n2_; }
  std::size_t dim(int axis) const noexcept { return axis == 0 ? n1_ : n2_; }
  double cell(int axis) const noexcept { return cells_[static_cast<std::size_t>(axis)]; }
  double extent(int axis) const noexcept { return cell(axis) * static_cast<double>(dim(axis)); }
  bool is_zero() const noexcept { return tail_.corner == 0.0 && suffix_.front() == 0.0; }

 private:
  std::size_t n1_;
  std::size_t n2_;
  std::array<double, 2> cells_;
  std::vector<double> best_;
  std::vector<double> suffix_;
  TailModel tail_;
};

/// Builds the table from all node-aligned rectangles in O(n1^2 n2^2) SAT
/// lookups; strata of x1 intervals are distributed over `workers` threads.
NetAverageTable build_net_average_table(const Grid2D& f, unsigned workers = 1);

/// Throws invalid-argument for non-positive thresholds.
double net_average_query(const NetAverageTable& table, double t1, double t2);

/// Same as the table query with |f| inside the integral.
double morrey_average(const Grid2D& f, double t1, double t2);

/// Net-averaging function of a 1D grid, f(t) for all t > 0.
class NetAverageProfile {
 public:
  explicit NetAverageProfile(const Grid1D& g);

  double query(double t) const;
  std::size_t size() const noexcept { return suffix_.size(); }
  double cell() const noexcept { return cell_; }
  double extent() const noexcept { return cell_ * static_cast<double>(suffix_.size()); }
  /// Max |integral| over prefixes, suffixes and the full support.
  double corner() const noexcept { return corner_; }

 private:
  double cell_;
  std::vector<double> suffix_;
  double corner_ = 0.0;
};

double net_average_1d(const Grid1D& g, double t);

}  // namespace netspace
