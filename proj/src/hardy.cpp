#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss.hpp>

#include "netspace/compensated.hpp"
#include "netspace/error.hpp"
#include "netspace/verify.hpp"

namespace netspace {

namespace {

using Gauss = boost::math::quadrature::gauss<double, 20>;

// Integral of g(t) dt/t over [a, b] (0 < a < b), panels of equal width in
// log t with `per_octave` panels per factor of two.
template <class G>
double log_panels(G&& g, double a, double b, int per_octave) {
  const double span = std::log(b / a);
  const auto panels = static_cast<int>(std::max(1.0, std::ceil(span / std::log(2.0) * per_octave)));
  const double du = span / panels;
  const double ua = std::log(a);
  CompensatedSum sum;
  for (int k = 0; k < panels; ++k) {
    const double lo = ua + du * k;
    sum += Gauss::integrate([&](double u) { return g(std::exp(u)); }, lo, lo + du);
  }
  return sum.value();
}

// Integral of (t^beta v)^q dt/t over [a, b].
double power_cell(double v, double beta, double q, double a, double b) {
  if (v == 0.0) return 0.0;
  const double s = beta * q;
  if (a == 0.0) return s > 0.0 ? std::pow(v, q) * std::pow(b, s) / s : kInfinity;
  if (s == 0.0) return std::pow(v, q) * std::log(b / a);
  return std::pow(v, q) * (std::pow(b, s) - std::pow(a, s)) / s;
}

// Compensated sum that saturates at +inf.
class Accumulator {
 public:
  void add(double x) {
    if (std::isinf(x)) divergent_ = true;
    else sum_ += x;
  }
  double root(double q) const { return divergent_ ? kInfinity : std::pow(sum_.value(), 1.0 / q); }

 private:
  CompensatedSum sum_;
  bool divergent_ = false;
};

}  // namespace

double HardyResult::ratio_outer() const noexcept { return std::isinf(rhs_outer) ? 0.0 : bound_ratio(lhs_outer, rhs_outer); }
double HardyResult::ratio_inner() const noexcept { return std::isinf(rhs_inner) ? 0.0 : bound_ratio(lhs_inner, rhs_inner); }

HardyResult verify_hardy(double alpha, double q, const Grid1D& phi, const QuadratureSpec& spec) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) fail(Errc::invalid_argument, "alpha must be positive");
  if (!(q >= 1.0) || !std::isfinite(q)) fail(Errc::invalid_argument, "Hardy checks need 1 <= q < inf");
  if (phi.origin() < 0.0) fail(Errc::invalid_argument, "phi must be supported in [0, inf)");
  for (double v : phi.values())
    if (v < 0.0) fail(Errc::invalid_argument, "phi must be nonnegative");
  spec.validate();

  const std::size_t n = phi.size();
  const double o = phi.origin(), h = phi.cell(), end = o + phi.extent();
  auto edge = [&](std::size_t k) { return o + h * static_cast<double>(k); };

  // Prefix integrals at the cell edges.
  std::vector<double> below(n + 1, 0.0);
  {
    CompensatedSum acc;
    for (std::size_t k = 0; k < n; ++k) {
      acc += h * phi[k];
      below[k + 1] = acc.value();
    }
  }
  const double total = below[n];

  HardyResult r;
  Accumulator rhs_o, rhs_i, lhs_o, lhs_i;
  for (std::size_t k = 0; k < n; ++k) {
    rhs_o.add(power_cell(phi[k], 1.0 + alpha, q, edge(k), edge(k + 1)));
    rhs_i.add(power_cell(phi[k], 1.0 - alpha, q, edge(k), edge(k + 1)));
  }

  if (total > 0.0) {
    const double aq = alpha * q;
    // Below the support int_t^inf phi is the total; above it int_0^t phi is.
    if (o > 0.0) lhs_o.add(std::pow(total, q) * std::pow(o, aq) / aq);
    lhs_i.add(std::pow(total, q) * std::pow(end, -aq) / aq);

    for (std::size_t k = 0; k < n; ++k) {
      const double a = edge(k), b = edge(k + 1), v = phi[k];
      auto outer = [&](double t) { return std::pow(std::pow(t, alpha) * std::max(0.0, total - below[k] - v * (t - a)), q); };
      auto inner = [&](double t) { return std::pow(std::pow(t, -alpha) * (below[k] + v * (t - a)), q); };
      double lo = a;
      if (a == 0.0) {
        // Geometric panels toward the origin until t^(alpha q) is negligible.
        lo = b * std::pow(2.0, -std::ceil(60.0 / std::min(1.0, aq)));
        lhs_o.add(std::pow(total, q) * std::pow(lo, aq) / aq);
        if (v > 0.0) {
          const double s = (1.0 - alpha) * q;
          lhs_i.add(s > 0.0 ? std::pow(v, q) * std::pow(lo, s) / s : kInfinity);
        }
      }
      lhs_o.add(log_panels(outer, lo, b, spec.points_per_octave));
      lhs_i.add(log_panels(inner, lo, b, spec.points_per_octave));
    }
  }

  r.lhs_outer = lhs_o.root(q);
  r.lhs_inner = lhs_i.root(q);
  r.rhs_outer = rhs_o.root(q) / alpha;
  r.rhs_inner = rhs_i.root(q) / alpha;
  return r;
}

}  // namespace netspace
