#include "netspace/norms.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "netspace/error.hpp"

namespace netspace {

namespace {

void check_pq(double p, double q) {
  if (!(p > 1.0) || !std::isfinite(p))
    fail(Errc::unsupported_exponent, "p must satisfy 1 < p < inf (got " + std::to_string(p) + ")");
  if (!(q >= 1.0))
    fail(Errc::unsupported_exponent, "q must satisfy q >= 1 (got " + std::to_string(q) + ")");
}

NormBreakdown to_breakdown(const LogIntegral& r) { return {r.value, r.head, r.body, r.tail}; }

}  // namespace

void Exponents1D::validate() const { check_pq(p, q); }

void Exponents2D::validate() const {
  check_pq(p[0], q[0]);
  check_pq(p[1], q[1]);
}

std::vector<double> norm_nodes(double h, std::size_t n, double q, const QuadratureSpec& spec) {
  const double extent = h * static_cast<double>(n);
  auto nodes = log_nodes(h * spec.t_min_cells, spec.t_max_factor * extent, spec.points_per_octave);
  if (std::isinf(q)) {
    for (std::size_t k = 1; k <= n; ++k) nodes.push_back(h * static_cast<double>(k));
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  }
  return nodes;
}

NormBreakdown norm_from_profile(const NetAverageProfile& profile, const Exponents1D& e,
                                const QuadratureSpec& spec) {
  e.validate();
  spec.validate();
  const auto nodes = norm_nodes(profile.cell(), profile.size(), e.q, spec);
  std::vector<double> phi(nodes.size());
  const double s = 1.0 / e.p;
  for (std::size_t k = 0; k < nodes.size(); ++k) phi[k] = std::pow(nodes[k], s) * profile.query(nodes[k]);
  return to_breakdown(integrate_log(nodes, phi, s, s - 1.0, e.q));
}

NormBreakdown net_norm_1d_detailed(const Grid1D& g, const Exponents1D& e, const QuadratureSpec& spec) {
  e.validate();
  return norm_from_profile(NetAverageProfile(g), e, spec);
}

double net_norm_1d(const Grid1D& g, const Exponents1D& e, const QuadratureSpec& spec) {
  return net_norm_1d_detailed(g, e, spec).value;
}

NormBreakdown norm_from_table_detailed(const NetAverageTable& table, const Exponents2D& e,
                                       const QuadratureSpec& spec) {
  e.validate();
  spec.validate();
  const auto nodes1 = norm_nodes(table.cell(0), table.n1(), e.q[0], spec);
  const auto nodes2 = norm_nodes(table.cell(1), table.n2(), e.q[1], spec);
  const double s1 = 1.0 / e.p[0], s2 = 1.0 / e.p[1];

  std::vector<double> w1(nodes1.size());
  for (std::size_t i = 0; i < nodes1.size(); ++i) w1[i] = std::pow(nodes1[i], s1);

  std::vector<double> inner(nodes1.size()), outer(nodes2.size());
  for (std::size_t j = 0; j < nodes2.size(); ++j) {
    for (std::size_t i = 0; i < nodes1.size(); ++i) inner[i] = w1[i] * table.query(nodes1[i], nodes2[j]);
    const double n1 = integrate_log(nodes1, inner, s1, s1 - 1.0, e.q[0]).value;
    outer[j] = std::pow(nodes2[j], s2) * n1;
  }
  return to_breakdown(integrate_log(nodes2, outer, s2, s2 - 1.0, e.q[1]));
}

double norm_from_table(const NetAverageTable& table, const Exponents2D& e, const QuadratureSpec& spec) {
  return norm_from_table_detailed(table, e, spec).value;
}

double net_norm_2d(const Grid2D& f, const Exponents2D& e, const QuadratureSpec& spec, unsigned workers) {
  e.validate();
  spec.validate();
  return norm_from_table(build_net_average_table(f, workers), e, spec);
}

}  // namespace netspace
