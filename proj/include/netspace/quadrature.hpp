#pragma once

#include <limits>
#include <span>
#include <vector>

namespace netspace {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Controls the logarithmic quadrature used for every dt/t integral.
struct QuadratureSpec {
  int points_per_octave = 8;
  /// Numerical integration starts at t_min_cells cells; below that the
  /// integrand is a pure power law (must be in (0, 1]).
  double t_min_cells = 1.0;
  /// Numerical integration stops at t_max_factor * extent; beyond that the
  /// integrand is a pure power law (must be >= 1).
  double t_max_factor = 4.0;

  /// Throws invalid-argument on out-of-range fields.
  void validate() const;
};

/// Pieces of an integral over (0, inf) in the measure dt/t.
///
/// For finite q, head/body/tail hold the contributions to the q-th power
/// and value = (head + body + tail)^(1/q). For q = inf, head and tail hold
/// the sup of the analytic pieces, body the sup over the sampled nodes and
/// value the overall sup.
struct LogIntegral {
  double head = 0.0;
  double body = 0.0;
  double tail = 0.0;
  double value = 0.0;
};

/// Geometric nodes from a to b (inclusive), at least points_per_octave per
/// factor of two, evenly spaced in log t.
std::vector<double> log_nodes(double a, double b, int points_per_octave);

/// Integrates phi(t)^q dt/t over (0, inf) given samples of phi at `nodes`.
///
/// Below nodes.front() phi is taken as phi(front) * (t/front)^head_exponent,
/// above nodes.back() as phi(back) * (t/back)^tail_exponent; both pieces
/// are integrated in closed form. The body uses the trapezoid rule in log t
/// with compensated accumulation in ascending t. For q = inf the result is
/// the sup over the samples (the analytic pieces peak at the ends).
///
/// Throws divergence when a nonzero end piece is not integrable
/// (head_exponent <= 0 or tail_exponent >= 0).
LogIntegral integrate_log(std::span<const double> nodes, std::span<const double> phi,
                          double head_exponent, double tail_exponent, double q);

}  // namespace netspace
