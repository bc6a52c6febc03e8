#include "netspace/kfunc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <utility>

#include "netspace/error.hpp"
#include "netspace/parallel.hpp"

namespace netspace {

namespace {

using TauKey = std::pair<std::size_t, std::size_t>;

// Component norms keyed by snapped tau; filled in parallel per batch.
class NormCache {
 public:
  NormCache(const Grid2D& f, const InterpParams& params, const QuadratureSpec& spec)
      : f_(f), params_(params), spec_(spec) {}

  void fill(const std::vector<TauKey>& wanted, unsigned workers) {
    std::vector<TauKey> missing;
    for (const auto& key : wanted)
      if (!cache_.count(key)) missing.push_back(key);
    std::sort(missing.begin(), missing.end());
    missing.erase(std::unique(missing.begin(), missing.end()), missing.end());
    std::vector<ComponentNorms> out(missing.size());
    parallel_for(missing.size(), workers, [&](std::size_t k) {
      out[k] = component_norms(decompose(f_, {missing[k].first, missing[k].second}), params_, spec_);
    });
    for (std::size_t k = 0; k < missing.size(); ++k) cache_.emplace(missing[k], out[k]);
  }

  const ComponentNorms& get(const TauKey& key) const { return cache_.at(key); }

 private:
  const Grid2D& f_;
  InterpParams params_;
  QuadratureSpec spec_;
  std::map<TauKey, ComponentNorms> cache_;
};

// t nodes for one axis such that tau(t) spans [h/4, 16 L], widened by
// `extra` octaves of tau on both sides. Nodes sit on the fixed lattice
// 2^(k/ppo), so widening only appends nodes at the ends.
std::vector<double> t_nodes(const InterpParams& params, int axis, double h, std::size_t n,
                            const QuadratureSpec& spec, int extra) {
  const double e = params.tau_exponent(axis);
  const double tau_lo = std::ldexp(h / 4.0, -extra);
  const double tau_hi = std::ldexp(16.0 * h * static_cast<double>(n), extra);
  const int ppo = spec.points_per_octave;
  const auto k_lo = static_cast<long>(std::floor(std::log2(tau_lo) / e * ppo + 1e-9));
  const auto k_hi = static_cast<long>(std::ceil(std::log2(tau_hi) / e * ppo - 1e-9));
  std::vector<double> nodes;
  for (long k = k_lo; k <= k_hi; ++k) nodes.push_back(std::exp2(static_cast<double>(k) / ppo));
  return nodes;
}

KCurve sample_with(NormCache& cache, const Grid2D& f, const InterpParams& params,
                   const QuadratureSpec& spec, int extra, unsigned workers) {
  KCurve curve;
  curve.params = params;
  curve.widenings = extra;
  curve.t1 = t_nodes(params, 0, f.cell(0), f.n1(), spec, extra);
  curve.t2 = t_nodes(params, 1, f.cell(1), f.n2(), spec, extra);
  for (double t : curve.t1) curve.c1.push_back(snap_tau(tau_of_t(t, params, 0), f.cell(0), f.n1()));
  for (double t : curve.t2) curve.c2.push_back(snap_tau(tau_of_t(t, params, 1), f.cell(1), f.n2()));

  std::vector<TauKey> wanted;
  for (auto a : curve.c1)
    for (auto b : curve.c2) wanted.emplace_back(a, b);
  cache.fill(wanted, workers);

  curve.k.resize(curve.t1.size() * curve.t2.size());
  for (std::size_t i = 0; i < curve.t1.size(); ++i)
    for (std::size_t j = 0; j < curve.t2.size(); ++j)
      curve.k[i * curve.t2.size() + j] = combine_k(cache.get({curve.c1[i], curve.c2[j]}), curve.t1[i], curve.t2[j]);
  return curve;
}

double fitted_exponent(double ta, double pa, double tb, double pb) {
  if (pa == 0.0 || pb == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return std::log(pb / pa) / std::log(tb / ta);
}

LogIntegral integrate_fitted(const std::vector<double>& t, const std::vector<double>& phi, double q) {
  const std::size_t m = t.size();
  const double head = m > 1 ? fitted_exponent(t[0], phi[0], t[1], phi[1]) : 0.0;
  const double tail = m > 1 ? fitted_exponent(t[m - 2], phi[m - 2], t[m - 1], phi[m - 1]) : 0.0;
  return integrate_log(t, phi, head, tail, q);
}

}  // namespace

void InterpParams::validate() const {
  for (int k = 0; k < 2; ++k) {
    const auto i = static_cast<std::size_t>(k);
    if (!(p0[i] > 1.0) || !(p1[i] > p0[i]) || !std::isfinite(p1[i]))
      fail(Errc::unsupported_exponent, "need 1 < p0 < p1 < inf on every axis");
    if (!(theta[i] > 0.0) || !(theta[i] < 1.0))
      fail(Errc::invalid_argument, "theta must lie in (0, 1) on every axis");
    if (!(q[i] >= 1.0)) fail(Errc::unsupported_exponent, "q must be at least 1 on every axis");
  }
}

std::array<double, 2> InterpParams::p() const noexcept {
  std::array<double, 2> out{};
  for (std::size_t i = 0; i < 2; ++i) out[i] = 1.0 / ((1.0 - theta[i]) / p0[i] + theta[i] / p1[i]);
  return out;
}

double InterpParams::tau_exponent(int axis) const noexcept {
  const auto i = static_cast<std::size_t>(axis);
  return 1.0 / (1.0 / p0[i] - 1.0 / p1[i]);
}

double tau_of_t(double t, const InterpParams& params, int axis) {
  if (!(t > 0.0)) fail(Errc::invalid_argument, "t must be positive");
  return std::pow(t, params.tau_exponent(axis));
}

std::size_t snap_tau(double tau, double h, std::size_t n) {
  if (!(tau > 0.0)) fail(Errc::invalid_argument, "tau must be positive");
  if (tau >= 2.0 * h * static_cast<double>(n)) return Tau::unbounded;
  const double r = tau / h;
  const double lo = std::floor(r);
  const double pick = (r - lo > 0.5 + 1e-12) ? lo + 1.0 : lo;
  return static_cast<std::size_t>(std::max(1.0, pick));
}

ComponentNorms component_norms(const Decomposition& d, const InterpParams& params,
                               const QuadratureSpec& spec) {
  params.validate();
  const std::array<double, 2> q{1.0, 1.0};
  auto norm = [&](const Grid2D& g, double pa, double pb) {
    return g.is_zero() ? 0.0 : net_norm_2d(g, Exponents2D{{pa, pb}, q}, spec);
  };
  return {norm(d.f00, params.p0[0], params.p0[1]), norm(d.f10, params.p1[0], params.p0[1]),
          norm(d.f01, params.p0[0], params.p1[1]), norm(d.f11, params.p1[0], params.p1[1])};
}

double combine_k(const ComponentNorms& n, double t1, double t2) noexcept {
  return n.n00 + t1 * n.n10 + t2 * n.n01 + t1 * t2 * n.n11;
}

double k_upper(const Grid2D& f, double t1, double t2, const InterpParams& params,
               const QuadratureSpec& spec) {
  params.validate();
  const Tau tau{snap_tau(tau_of_t(t1, params, 0), f.cell(0), f.n1()),
                snap_tau(tau_of_t(t2, params, 1), f.cell(1), f.n2())};
  return combine_k(component_norms(decompose(f, tau), params, spec), t1, t2);
}

KCurve sample_k_curve(const Grid2D& f, const InterpParams& params, const QuadratureSpec& spec,
                      int extra_octaves, unsigned workers) {
  params.validate();
  spec.validate();
  NormCache cache(f, params, spec);
  return sample_with(cache, f, params, spec, extra_octaves, workers);
}

KCurve build_k_curve(const Grid2D& f, const InterpParams& params, const QuadratureSpec& spec,
                     unsigned workers) {
  params.validate();
  spec.validate();
  constexpr int kMaxWidenings = 10;
  NormCache cache(f, params, spec);
  KCurve curve = sample_with(cache, f, params, spec, 0, workers);
  double value = interpolation_functional(curve);
  for (int extra = 1; extra <= kMaxWidenings; ++extra) {
    KCurve wider = sample_with(cache, f, params, spec, extra, workers);
    const double next = interpolation_functional(wider);
    const bool stable = std::abs(next - value) <= 0.01 * std::abs(next);
    curve = std::move(wider);
    if (stable) return curve;
    value = next;
  }
  fail(Errc::divergence, "F(K) did not stabilize after " + std::to_string(kMaxWidenings) +
                             " lattice widenings");
}

double interpolation_functional(const KCurve& curve) {
  const std::size_t m1 = curve.t1.size(), m2 = curve.t2.size();
  if (m1 == 0 || m2 == 0 || curve.k.size() != m1 * m2)
    fail(Errc::invalid_argument, "K curve is empty or inconsistent");
  const auto& th = curve.params.theta;
  const auto& q = curve.params.q;

  std::vector<double> w1(m1);
  for (std::size_t i = 0; i < m1; ++i) w1[i] = std::pow(curve.t1[i], -th[0]);
  std::vector<double> inner(m1), outer(m2);
  for (std::size_t j = 0; j < m2; ++j) {
    for (std::size_t i = 0; i < m1; ++i) inner[i] = w1[i] * curve.at(i, j);
    outer[j] = std::pow(curve.t2[j], -th[1]) * integrate_fitted(curve.t1, inner, q[0]).value;
  }
  return integrate_fitted(curve.t2, outer, q[1]).value;
}

EmbeddingResult embedding(const Grid2D& f, const InterpParams& params, const QuadratureSpec& spec,
                          unsigned workers) {
  params.validate();
  if (f.is_zero()) fail(Errc::undefined_ratio, "embedding ratio is undefined for f = 0");
  EmbeddingResult r;
  r.curve = build_k_curve(f, params, spec, workers);
  r.functional = interpolation_functional(r.curve);
  r.norm = net_norm_2d(f, params.target(), spec, workers);
  if (!(r.norm > 0.0)) fail(Errc::undefined_ratio, "norm of f vanished");
  r.ratio = r.functional / r.norm;
  return r;
}

double embedding_ratio(const Grid2D& f, const InterpParams& params, const QuadratureSpec& spec,
                       unsigned workers) {
  return embedding(f, params, spec, workers).ratio;
}

}  // namespace netspace
