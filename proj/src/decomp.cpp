#include "netspace/decomp.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "netspace/compensated.hpp"
#include "netspace/error.hpp"
#include "netspace/parallel.hpp"

namespace netspace {

namespace {

std::size_t padded_size(std::size_t n, std::size_t c) {
  if (c == Tau::unbounded) return n;
  return (n + c - 1) / c * c;
}

std::size_t count_for(double tau, double h, const char* name) {
  if (!(tau > 0.0) || !std::isfinite(tau))
    fail(Errc::invalid_argument, std::string(name) + " must be positive and finite");
  const double r = tau / h;
  const double k = std::nearbyint(r);
  if (k < 1.0 || std::abs(r - k) > 1e-9 * std::max(1.0, r))
    fail(Errc::invalid_argument, std::string(name) + " is not a whole multiple of the cell size");
  return static_cast<std::size_t>(k);
}

}  // namespace

double Tau::length(int axis, double h) const noexcept {
  return bounded(axis) ? static_cast<double>(cells(axis)) * h : std::numeric_limits<double>::infinity();
}

Tau Tau::from_lengths(double tau1, double tau2, std::array<double, 2> cells) {
  return {count_for(tau1, cells[0], "tau1"), count_for(tau2, cells[1], "tau2")};
}

const Grid2D& Decomposition::component(int index) const {
  switch (index) {
    case 0: return f00;
    case 1: return f01;
    case 2: return f10;
    case 3: return f11;
    default: fail(Errc::invalid_argument, "component index must be 0..3");
  }
}

Decomposition decompose(const Grid2D& f, const Tau& tau, unsigned workers) {
  if (tau.c1 == 0 || tau.c2 == 0) fail(Errc::invalid_argument, "tau must be at least one cell per axis");
  const std::size_t n1 = padded_size(f.n1(), tau.c1), n2 = padded_size(f.n2(), tau.c2);
  const Grid2D g = f.padded(n1, n2);
  const bool b1 = tau.bounded(0), b2 = tau.bounded(1);

  // a[i, j]: x2-average of row i over the x2 block containing j.
  // b[i, j]: x1-average of column j over the x1 block containing i.
  // c[i, j]: block mean.
  std::vector<double> a(n1 * n2, 0.0), b(n1 * n2, 0.0), c(n1 * n2, 0.0);
  if (b2) {
    const std::size_t blocks = n2 / tau.c2;
    parallel_for(n1, workers, [&](std::size_t i) {
      for (std::size_t m = 0; m < blocks; ++m) {
        CompensatedSum s;
        for (std::size_t j = m * tau.c2; j < (m + 1) * tau.c2; ++j) s += g(i, j);
        const double mean = s.value() / static_cast<double>(tau.c2);
        std::fill_n(&a[i * n2 + m * tau.c2], tau.c2, mean);
      }
    });
  }
  if (b1) {
    const std::size_t blocks = n1 / tau.c1;
    parallel_for(n2, workers, [&](std::size_t j) {
      for (std::size_t k = 0; k < blocks; ++k) {
        CompensatedSum s;
        for (std::size_t i = k * tau.c1; i < (k + 1) * tau.c1; ++i) s += g(i, j);
        const double mean = s.value() / static_cast<double>(tau.c1);
        for (std::size_t i = k * tau.c1; i < (k + 1) * tau.c1; ++i) b[i * n2 + j] = mean;
      }
    });
  }
  if (b1 && b2) {
    const std::size_t blocks1 = n1 / tau.c1, blocks2 = n2 / tau.c2;
    const double cells = static_cast<double>(tau.c1) * static_cast<double>(tau.c2);
    parallel_for(blocks1, workers, [&](std::size_t k) {
      for (std::size_t m = 0; m < blocks2; ++m) {
        CompensatedSum s;
        for (std::size_t i = k * tau.c1; i < (k + 1) * tau.c1; ++i)
          for (std::size_t j = m * tau.c2; j < (m + 1) * tau.c2; ++j) s += g(i, j);
        const double mean = s.value() / cells;
        for (std::size_t i = k * tau.c1; i < (k + 1) * tau.c1; ++i)
          std::fill_n(&c[i * n2 + m * tau.c2], tau.c2, mean);
      }
    });
  }

  std::vector<double> v00(n1 * n2), v01(n1 * n2), v10(n1 * n2);
  const auto values = g.values();
  for (std::size_t k = 0; k < n1 * n2; ++k) {
    v01[k] = a[k] - c[k];
    v10[k] = b[k] - c[k];
    v00[k] = ((values[k] - a[k]) - b[k]) + c[k];
  }
  return Decomposition{g.with_values(std::move(v00)), g.with_values(std::move(v01)),
                       g.with_values(std::move(v10)), g.with_values(std::move(c)), tau, checksum(f)};
}

double ZeroMeanReport::max() const noexcept { return std::max({f00_x1, f01_x1, f00_x2, f10_x2}); }

ZeroMeanReport check_zero_means(const Decomposition& d) {
  ZeroMeanReport r;
  const std::size_t n1 = d.f00.n1(), n2 = d.f00.n2();
  const double h1 = d.f00.cell(0), h2 = d.f00.cell(1);
  if (d.tau.bounded(0)) {
    for (std::size_t k = 0; k < n1 / d.tau.c1; ++k)
      for (std::size_t j = 0; j < n2; ++j) {
        CompensatedSum s00, s01;
        for (std::size_t i = k * d.tau.c1; i < (k + 1) * d.tau.c1; ++i) {
          s00 += d.f00(i, j);
          s01 += d.f01(i, j);
        }
        r.f00_x1 = std::max(r.f00_x1, std::abs(h1 * s00.value()));
        r.f01_x1 = std::max(r.f01_x1, std::abs(h1 * s01.value()));
      }
  }
  if (d.tau.bounded(1)) {
    for (std::size_t i = 0; i < n1; ++i)
      for (std::size_t m = 0; m < n2 / d.tau.c2; ++m) {
        CompensatedSum s00, s10;
        for (std::size_t j = m * d.tau.c2; j < (m + 1) * d.tau.c2; ++j) {
          s00 += d.f00(i, j);
          s10 += d.f10(i, j);
        }
        r.f00_x2 = std::max(r.f00_x2, std::abs(h2 * s00.value()));
        r.f10_x2 = std::max(r.f10_x2, std::abs(h2 * s10.value()));
      }
  }
  return r;
}

double reconstruction_error(const Grid2D& f, const Decomposition& d) {
  const Grid2D g = f.padded(d.f00.n1(), d.f00.n2());
  double worst = 0.0;
  for (std::size_t i = 0; i < g.n1(); ++i)
    for (std::size_t j = 0; j < g.n2(); ++j) {
      const double sum = d.f00(i, j) + d.f01(i, j) + d.f10(i, j) + d.f11(i, j);
      worst = std::max(worst, std::abs(sum - g(i, j)));
    }
  return worst;
}

}  // namespace netspace
