#pragma once

#include <array>

#include "netspace/grid.hpp"
#include "netspace/netavg.hpp"
#include "netspace/quadrature.hpp"

namespace netspace {

/// Exponents of N_{p,q}: 1 < p < inf, 1 <= q <= inf (q may be kInfinity).
struct Exponents1D {
  double p = 2.0;
  double q = 1.0;

  /// Throws unsupported-exponent outside the admissible range.
  void validate() const;
};

struct Exponents2D {
  std::array<double, 2> p{2.0, 2.0};
  std::array<double, 2> q{1.0, 1.0};

  void validate() const;
  Exponents1D axis(int k) const { return {p[static_cast<std::size_t>(k)], q[static_cast<std::size_t>(k)]}; }
};

/// Norm value with the head/body/tail split of the outermost integral.
struct NormBreakdown {
  double value = 0.0;
  double head = 0.0;
  double body = 0.0;
  double tail = 0.0;
};

/// (int_0^inf (t^(1/p) f(t))^q dt/t)^(1/q) for the net average of g.
double net_norm_1d(const Grid1D& g, const Exponents1D& e, const QuadratureSpec& spec = {});
NormBreakdown net_norm_1d_detailed(const Grid1D& g, const Exponents1D& e,
                                   const QuadratureSpec& spec = {});
NormBreakdown norm_from_profile(const NetAverageProfile& profile, const Exponents1D& e,
                                const QuadratureSpec& spec = {});

/// Anisotropic norm: inner integral over t1 with q1, outer over t2 with q2.
double net_norm_2d(const Grid2D& f, const Exponents2D& e, const QuadratureSpec& spec = {},
                   unsigned workers = 1);
double norm_from_table(const NetAverageTable& table, const Exponents2D& e,
                       const QuadratureSpec& spec = {});
NormBreakdown norm_from_table_detailed(const NetAverageTable& table, const Exponents2D& e,
                                       const QuadratureSpec& spec = {});

/// Quadrature nodes used for one axis of extent n*h. For q = inf the node
/// set also contains every k*h, k = 1..n, where the integrand peaks.
std::vector<double> norm_nodes(double h, std::size_t n, double q, const QuadratureSpec& spec);

}  // namespace netspace
