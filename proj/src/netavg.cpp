#include "netspace/netavg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "netspace/compensated.hpp"
#include "netspace/error.hpp"
#include "netspace/parallel.hpp"

namespace netspace {

namespace {

void require_positive(double t, const char* name) {
  if (!(t > 0.0) || std::isnan(t))
    fail(Errc::invalid_argument, std::string(name) + " must be positive");
}

// For every window width w in 1..n, the max over all window positions on the
// node lattice of |D[hi] - D[lo]|, where [lo, hi) is the window clipped to
// [0, n). D holds prefix integrals (size n + 1). Windows hanging over the
// left edge clip to prefixes, windows over the right edge to suffixes.
void scan_widths(std::span<const double> d, std::size_t n, double* out) {
  std::fill_n(out, n, 0.0);
  // Windows inside [0, n): one elementwise pass per left end vectorizes well.
  for (std::size_t a = 0; a < n; ++a) {
    const double base = d[a];
    const double* right = d.data() + a + 1;
    const std::size_t widths = n - a;
    for (std::size_t k = 0; k < widths; ++k) out[k] = std::max(out[k], std::abs(right[k] - base));
  }
  double prefix = 0.0, suffix = 0.0;
  for (std::size_t w = 2; w <= n; ++w) {
    prefix = std::max(prefix, std::abs(d[w - 1] - d[0]));
    suffix = std::max(suffix, std::abs(d[n] - d[n - (w - 1)]));
    out[w - 1] = std::max(out[w - 1], std::max(prefix, suffix));
  }
}

// Dense index of the interval [lo, hi), 0 <= lo < hi <= n.
std::size_t interval_index(std::size_t lo, std::size_t hi, std::size_t n) {
  return lo * (2 * n - lo + 1) / 2 + (hi - lo - 1);
}

template <class F>
void for_each_clipped(std::size_t w, std::size_t n, F&& visit) {
  for (std::size_t k = 1; k < w; ++k) visit(std::size_t{0}, k);
  for (std::size_t a = 0; a + w <= n; ++a) visit(a, a + w);
  for (std::size_t k = 1; k < w; ++k) visit(n - k, n);
}

template <class F>
void for_each_anchored(std::size_t n, F&& visit) {
  for (std::size_t k = 1; k <= n; ++k) visit(std::size_t{0}, k);
  for (std::size_t lo = 1; lo < n; ++lo) visit(lo, n);
}

void suffix_by_ratio(std::vector<TailEntry>& entries) {
  for (std::size_t k = entries.size(); k-- > 1;)
    if (entries[k].ratio() > entries[k - 1].ratio()) entries[k - 1] = entries[k];
}

}  // namespace

std::size_t snap_cells(double t, double h) {
  const double r = t / h;
  const double k = std::nearbyint(r);
  double cells = (std::abs(r - k) <= 1e-9 * std::max(1.0, r)) ? k : std::ceil(r);
  if (cells < 1.0) cells = 1.0;
  if (cells > 1e15) return static_cast<std::size_t>(1e15);
  return static_cast<std::size_t>(cells);
}

NetAverageTable::NetAverageTable(std::size_t n1, std::size_t n2, std::array<double, 2> cells,
                                 std::vector<double> best, std::vector<double> suffix,
                                 TailModel tail)
    : n1_(n1), n2_(n2), cells_(cells), best_(std::move(best)), suffix_(std::move(suffix)),
      tail_(std::move(tail)) {}

double NetAverageTable::query(double t1, double t2) const {
  require_positive(t1, "t1");
  require_positive(t2, "t2");
  const std::size_t w1 = snap_cells(t1, cells_[0]);
  const std::size_t w2 = snap_cells(t2, cells_[1]);
  const bool inside1 = w1 <= n1_, inside2 = w2 <= n2_;
  if (inside1 && inside2) return suffix(w1, w2);
  if (inside2) {
    const TailEntry& e = tail_.along1[w2 - 1];
    return e.integral / (t1 * e.length);
  }
  if (inside1) {
    const TailEntry& e = tail_.along2[w1 - 1];
    return e.integral / (e.length * t2);
  }
  return tail_.corner / (t1 * t2);
}

NetAverageTable build_net_average_table(const Grid2D& f, unsigned workers) {
  const std::size_t n1 = f.n1(), n2 = f.n2();
  const double h1 = f.cell(0), h2 = f.cell(1);
  const SummedAreaTable sat(f);

  // rows[J1][w2 - 1]: max |integral| over J1 x (clipped windows of width w2).
  const std::size_t intervals = n1 * (n1 + 1) / 2;
  std::vector<double> rows(intervals * n2);
  parallel_for(n1, workers, [&](std::size_t lo) {
    std::vector<double> diff(n2 + 1);
    const auto base = sat.row(lo);
    for (std::size_t hi = lo + 1; hi <= n1; ++hi) {
      const auto top = sat.row(hi);
      for (std::size_t j = 0; j <= n2; ++j) diff[j] = top[j] - base[j];
      scan_widths(diff, n2, &rows[interval_index(lo, hi, n1) * n2]);
    }
  });

  std::vector<double> best(n1 * n2);
  parallel_for(n1, workers, [&](std::size_t w1m) {
    const std::size_t w1 = w1m + 1;
    double* out = &best[w1m * n2];
    std::fill_n(out, n2, 0.0);
    for_each_clipped(w1, n1, [&](std::size_t lo, std::size_t hi) {
      const double* r = &rows[interval_index(lo, hi, n1) * n2];
      for (std::size_t j = 0; j < n2; ++j) out[j] = std::max(out[j], r[j]);
    });
    const double len1 = static_cast<double>(w1) * h1;
    for (std::size_t j = 0; j < n2; ++j) out[j] = out[j] / (len1 * (static_cast<double>(j + 1) * h2));
  });

  std::vector<double> suffix(best);
  for (std::size_t w1 = n1; w1-- > 0;)
    for (std::size_t w2 = n2; w2-- > 0;) {
      double& s = suffix[w1 * n2 + w2];
      if (w1 + 1 < n1) s = std::max(s, suffix[(w1 + 1) * n2 + w2]);
      if (w2 + 1 < n2) s = std::max(s, suffix[w1 * n2 + w2 + 1]);
    }

  TailModel tail;
  tail.along1.resize(n2);
  for (std::size_t w2 = 1; w2 <= n2; ++w2) tail.along1[w2 - 1].length = static_cast<double>(w2) * h2;
  for_each_anchored(n1, [&](std::size_t lo, std::size_t hi) {
    const double* r = &rows[interval_index(lo, hi, n1) * n2];
    for (std::size_t j = 0; j < n2; ++j)
      tail.along1[j].integral = std::max(tail.along1[j].integral, r[j]);
    tail.corner = std::max(tail.corner, r[n2 - 1]);
  });

  tail.along2.resize(n1);
  for (std::size_t w1 = 1; w1 <= n1; ++w1) tail.along2[w1 - 1].length = static_cast<double>(w1) * h1;
  {
    std::vector<double> column(n1 + 1), scanned(n1);
    for_each_anchored(n2, [&](std::size_t lo, std::size_t hi) {
      for (std::size_t i = 0; i <= n1; ++i) column[i] = sat.at(i, hi) - sat.at(i, lo);
      scan_widths(column, n1, scanned.data());
      for (std::size_t i = 0; i < n1; ++i)
        tail.along2[i].integral = std::max(tail.along2[i].integral, scanned[i]);
    });
  }
  suffix_by_ratio(tail.along1);
  suffix_by_ratio(tail.along2);

  return NetAverageTable(n1, n2, f.cells(), std::move(best), std::move(suffix), std::move(tail));
}

double net_average_query(const NetAverageTable& table, double t1, double t2) {
  return table.query(t1, t2);
}

double morrey_average(const Grid2D& f, double t1, double t2) {
  require_positive(t1, "t1");
  require_positive(t2, "t2");
  return build_net_average_table(f.abs()).query(t1, t2);
}

NetAverageProfile::NetAverageProfile(const Grid1D& g) : cell_(g.cell()), suffix_(g.size()) {
  const std::size_t n = g.size();
  std::vector<double> prefix(n + 1, 0.0);
  CompensatedSum acc;
  for (std::size_t k = 0; k < n; ++k) {
    acc += g[k];
    prefix[k + 1] = cell_ * acc.value();
  }
  std::vector<double> widest(n);
  scan_widths(prefix, n, widest.data());
  corner_ = widest[n - 1];
  for (std::size_t w = 1; w <= n; ++w) suffix_[w - 1] = widest[w - 1] / (static_cast<double>(w) * cell_);
  for (std::size_t k = n - 1; k-- > 0;) suffix_[k] = std::max(suffix_[k], suffix_[k + 1]);
}

double NetAverageProfile::query(double t) const {
  require_positive(t, "t");
  const std::size_t w = snap_cells(t, cell_);
  if (w <= suffix_.size()) return suffix_[w - 1];
  return corner_ / t;
}

double net_average_1d(const Grid1D& g, double t) {
  require_positive(t, "t");
  return NetAverageProfile(g).query(t);
}

}  // namespace netspace
