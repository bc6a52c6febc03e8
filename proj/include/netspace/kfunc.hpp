#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "netspace/decomp.hpp"
#include "netspace/norms.hpp"

namespace netspace {

/// Parameters of the couple (N_{p0,q0}, N_{p1,q1})_{theta,q}.
struct InterpParams {
  std::array<double, 2> p0{2.0, 2.0};
  std::array<double, 2> p1{4.0, 4.0};
  std::array<double, 2> theta{0.5, 0.5};
  std::array<double, 2> q{1.0, 1.0};

  /// Throws unsupported-exponent or invalid-argument when out of range.
  void validate() const;

  /// 1/p = (1 - theta)/p0 + theta/p1.
  std::array<double, 2> p() const noexcept;
  /// Exponents (p, q) of the target space.
  Exponents2D target() const noexcept { return {p(), q}; }
  /// 1 / (1/p0_k - 1/p1_k): tau_k = t_k^exponent.
  double tau_exponent(int axis) const noexcept;
};

/// The substitution tau = t^(1/(1/p0 - 1/p1)) on one axis.
double tau_of_t(double t, const InterpParams& params, int axis);

/// Nearest whole number of cells (ties toward fewer, at least one).
/// Returns Tau::unbounded once tau reaches twice the extent n*h.
std::size_t snap_tau(double tau, double h, std::size_t n);

/// Norms of the four components, each in the space the K estimate pairs it with:
/// f00 in N_{(p1^0,p2^0),(1,1)}, f10 in N_{(p1^1,p2^0),(1,1)},
/// f01 in N_{(p1^0,p2^1),(1,1)}, f11 in N_{(p1^1,p2^1),(1,1)}.
struct ComponentNorms {
  double n00 = 0.0;
  double n10 = 0.0;
  double n01 = 0.0;
  double n11 = 0.0;
};

ComponentNorms component_norms(const Decomposition& d, const InterpParams& params,
                               const QuadratureSpec& spec = {});

/// n00 + t1 n10 + t2 n01 + t1 t2 n11.
double combine_k(const ComponentNorms& norms, double t1, double t2) noexcept;

/// Constructive upper bound for K(t1, t2, f) from the decomposition at tau(t).
double k_upper(const Grid2D& f, double t1, double t2, const InterpParams& params,
               const QuadratureSpec& spec = {});

/// K sampled on a tensor lattice; k[i * t2.size() + j] belongs to (t1[i], t2[j]).
struct KCurve {
  InterpParams params;
  std::vector<double> t1;
  std::vector<double> t2;
  std::vector<std::size_t> c1;  ///< snapped tau cells per t1 node
  std::vector<std::size_t> c2;
  std::vector<double> k;
  int widenings = 0;

  double at(std::size_t i, std::size_t j) const { return k[i * t2.size() + j]; }
};

/// Samples K over t nodes whose tau(t) runs from h/4 * 2^-extra to
/// 16 L * 2^extra per axis.
KCurve sample_k_curve(const Grid2D& f, const InterpParams& params, const QuadratureSpec& spec,
                      int extra_octaves = 0, unsigned workers = 1);

/// Samples K, widening the lattice one tau-octave per side until F(K)
/// changes by at most 1%; throws divergence if that never happens.
KCurve build_k_curve(const Grid2D& f, const InterpParams& params, const QuadratureSpec& spec = {},
                     unsigned workers = 1);

/// F(K) = (int (int (t1^-theta1 t2^-theta2 K)^q1 dt1/t1)^(q2/q1) dt2/t2)^(1/q2).
/// The end pieces follow power laws fitted to the two outermost samples;
/// throws divergence when they are not integrable.
double interpolation_functional(const KCurve& curve);

struct EmbeddingResult {
  double functional = 0.0;  ///< F(K)
  double norm = 0.0;        ///< ||f|| in N_{p,q}
  double ratio = 0.0;
  KCurve curve;
};

/// F(K) / ||f||_{N_{p,q}}; throws undefined-ratio for f = 0.
EmbeddingResult embedding(const Grid2D& f, const InterpParams& params, const QuadratureSpec& spec = {},
                          unsigned workers = 1);
double embedding_ratio(const Grid2D& f, const InterpParams& params, const QuadratureSpec& spec = {},
                       unsigned workers = 1);

}  // namespace netspace
