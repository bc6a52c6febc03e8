#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "netspace/decomp.hpp"
#include "netspace/grid.hpp"
#include "netspace/netavg.hpp"
#include "netspace/quadrature.hpp"

namespace netspace {

/// Query thresholds for lemma checks, in cells: the listed fractions of one
/// cell, every whole cell count up to the (padded) size, and the listed
/// multiples of that size.
struct TLattice {
  std::vector<double> fractions{0.25, 0.5, 0.75};
  std::vector<double> beyond{1.5, 2.0, 3.0};

  std::vector<double> nodes(double h, std::size_t n) const;
};

struct LemmaCheckConfig {
  std::vector<std::uint64_t> seeds;
  std::vector<std::size_t> resolutions{16, 32};
  std::vector<Tau> tau_choices{{2, 2}, {3, 5}, {7, 4}};
  std::vector<Family> families{Family::uniform, Family::signed_values, Family::block_constant,
                               Family::additive};
  TLattice t_lattice;
  std::size_t max_resolution = 64;
  bool hardy = true;
  unsigned workers = 1;

  /// Seeds 0..99 with the defaults above.
  static LemmaCheckConfig defaults();
  void validate() const;
};

struct Witness {
  std::uint64_t seed = 0;
  std::string family;
  std::size_t resolution = 0;
  Tau tau;
  double t1 = 0.0;
  double t2 = 0.0;
  std::string note;
};

/// Worst observed ratio of one check in one regime.
struct CheckRecord {
  std::string check;
  std::string regime;
  double constant = 0.0;
  double worst_ratio = 0.0;
  Witness witness;
  std::uint64_t samples = 0;
  /// Fewest samples any single case contributed to this record.
  std::uint64_t min_case_samples = 0;
  bool has_witness = false;

  bool pass() const noexcept { return worst_ratio <= constant * (1.0 + 1e-9); }
  /// Folds one sample in; ties keep the earlier witness.
  void observe(double ratio, const Witness& w);
  /// Combines records of the same check and regime from different cases.
  void merge(const CheckRecord& other);
};

struct VerificationReport {
  std::vector<CheckRecord> records;

  bool all_pass() const noexcept;
  std::size_t failures() const noexcept;
  const CheckRecord* find(const std::string& check, const std::string& regime) const;
  /// Sorts records by check id, then regime.
  void canonicalize();
  /// Key-value text, one block per record.
  std::string to_text() const;
};

/// Regime label for the pair (t, tau); t_i <= tau_i counts as "below".
std::string regime_label(double t1, double t2, double tau1, double tau2);

/// LHS / RHS-without-constant; 0/0 gives 0, x/0 gives inf.
double bound_ratio(double lhs, double rhs) noexcept;

/// One case: a grid, its decomposition at tau and the net-average tables
/// of the grid and of every component.
struct LemmaCase {
  LemmaCase(const Grid2D& f, const Tau& tau, Witness where, TLattice lattice = {});

  Grid2D f;
  Decomposition d;
  NetAverageTable table;
  NetAverageTable t00;
  NetAverageTable t01;
  NetAverageTable t10;
  NetAverageTable t11;
  Witness where;
  TLattice lattice;
};

VerificationReport verify_lemma_f00(const LemmaCase& c);
VerificationReport verify_lemma_f01_f10(const LemmaCase& c);
VerificationReport verify_lemma_f11(const LemmaCase& c);

/// Lemma checks for every (seed, resolution, tau) in cfg.
VerificationReport verify_lemma_f00(const LemmaCheckConfig& cfg);
VerificationReport verify_lemma_f01_f10(const LemmaCheckConfig& cfg);
VerificationReport verify_lemma_f11(const LemmaCheckConfig& cfg);

struct HardyResult {
  double lhs_outer = 0.0;  ///< (int (t^a int_t^inf phi)^q dt/t)^(1/q)
  double rhs_outer = 0.0;  ///< a^-1 (int (t^(1+a) phi)^q dt/t)^(1/q)
  double lhs_inner = 0.0;  ///< (int (t^-a int_0^t phi)^q dt/t)^(1/q)
  double rhs_inner = 0.0;  ///< a^-1 (int (t^(1-a) phi)^q dt/t)^(1/q)
  double ratio_outer() const noexcept;
  double ratio_inner() const noexcept;
};

/// Both Hardy inequalities for a nonnegative step function with origin >= 0.
/// The right-hand sides are closed form per cell; the left-hand sides use
/// Gauss-Legendre panels in log t (spec.points_per_octave panels per
/// octave) with closed-form end pieces. A divergent right-hand side gives
/// rhs = inf and ratio 0.
HardyResult verify_hardy(double alpha, double q, const Grid1D& phi, const QuadratureSpec& spec = {});

/// Runs lemma checks, zero-mean and reconstruction checks and (optionally)
/// Hardy checks; the merged report is independent of cfg.workers.
VerificationReport run_campaign(const LemmaCheckConfig& cfg);

}  // namespace netspace
