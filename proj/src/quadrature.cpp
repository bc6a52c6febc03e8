#include "netspace/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "netspace/compensated.hpp"
#include "netspace/error.hpp"

namespace netspace {

void QuadratureSpec::validate() const {
  if (points_per_octave < 2) fail(Errc::invalid_argument, "points_per_octave must be at least 2");
  if (!(t_min_cells > 0.0) || t_min_cells > 1.0)
    fail(Errc::invalid_argument, "t_min_cells must lie in (0, 1]");
  if (!(t_max_factor >= 1.0) || !std::isfinite(t_max_factor))
    fail(Errc::invalid_argument, "t_max_factor must be at least 1");
}

std::vector<double> log_nodes(double a, double b, int points_per_octave) {
  if (!(a > 0.0) || !(b >= a)) fail(Errc::invalid_argument, "log_nodes needs 0 < a <= b");
  if (b == a) return {a};
  const double span = std::log2(b / a);
  const auto intervals = static_cast<std::size_t>(std::max(1.0, std::ceil(span * points_per_octave - 1e-9)));
  std::vector<double> nodes(intervals + 1);
  const double step = std::log(b / a) / static_cast<double>(intervals);
  nodes.front() = a;
  for (std::size_t k = 1; k < intervals; ++k) nodes[k] = a * std::exp(step * static_cast<double>(k));
  nodes.back() = b;
  return nodes;
}

LogIntegral integrate_log(std::span<const double> nodes, std::span<const double> phi,
                          double head_exponent, double tail_exponent, double q) {
  if (nodes.empty() || nodes.size() != phi.size())
    fail(Errc::invalid_argument, "integrate_log needs matching non-empty node and sample arrays");
  const double first = phi.front(), last = phi.back();
  if (first != 0.0 && !(head_exponent > 0.0))
    fail(Errc::divergence, "integrand does not vanish as t -> 0 (local exponent " +
                               std::to_string(head_exponent) + ")");
  if (last != 0.0 && !(tail_exponent < 0.0))
    fail(Errc::divergence, "integrand does not decay as t -> inf (local exponent " +
                               std::to_string(tail_exponent) + ")");

  LogIntegral out;
  if (std::isinf(q)) {
    out.head = first;
    out.tail = last;
    out.body = *std::max_element(phi.begin(), phi.end());
    out.value = out.body;
    return out;
  }

  if (first != 0.0) out.head = std::pow(first, q) / (head_exponent * q);
  if (last != 0.0) out.tail = std::pow(last, q) / (-tail_exponent * q);
  CompensatedSum body;
  for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
    const double du = std::log(nodes[k + 1] / nodes[k]);
    body += 0.5 * du * (std::pow(phi[k], q) + std::pow(phi[k + 1], q));
  }
  out.body = body.value();
  out.value = std::pow(out.head + out.body + out.tail, 1.0 / q);
  return out;
}

}  // namespace netspace
