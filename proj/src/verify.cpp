#include "netspace/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>
#include <tuple>
#include <utility>

#include "netspace/csv.hpp"
#include "netspace/error.hpp"
#include "netspace/parallel.hpp"

namespace netspace {

namespace {

constexpr const char* kRegimes[4] = {"t1>tau1,t2>tau2", "t1>tau1,t2<=tau2", "t1<=tau1,t2>tau2",
                                     "t1<=tau1,t2<=tau2"};

bool above(double t, double tau) { return t > tau * (1.0 + 1e-12); }

int regime_index(double t1, double t2, double tau1, double tau2) {
  const bool a1 = above(t1, tau1), a2 = above(t2, tau2);
  return a1 ? (a2 ? 0 : 1) : (a2 ? 2 : 3);
}

// Accumulates the records of one lemma for one case, one record per regime.
class RegimeRecords {
 public:
  RegimeRecords(std::string check, std::array<double, 4> constants) {
    for (int r = 0; r < 4; ++r) {
      records_[r].check = check;
      records_[r].regime = kRegimes[r];
      records_[r].constant = constants[static_cast<std::size_t>(r)];
    }
  }

  void observe(int regime, double lhs, double rhs, const Witness& w) {
    records_[regime].observe(bound_ratio(lhs, rhs), w);
  }

  void append_to(VerificationReport& report) {
    for (auto& r : records_) {
      r.min_case_samples = r.samples;
      report.records.push_back(std::move(r));
    }
  }

 private:
  CheckRecord records_[4];
};

// Visits every (t1, t2) of the case lattice with its regime.
template <class Visit>
void for_each_t(const LemmaCase& c, Visit&& visit) {
  const double h1 = c.f.cell(0), h2 = c.f.cell(1);
  const auto n1 = c.lattice.nodes(h1, c.d.f00.n1());
  const auto n2 = c.lattice.nodes(h2, c.d.f00.n2());
  const double tau1 = c.d.tau.length(0, h1), tau2 = c.d.tau.length(1, h2);
  for (double t1 : n1)
    for (double t2 : n2) visit(t1, t2, tau1, tau2, regime_index(t1, t2, tau1, tau2));
}

Witness at(const LemmaCase& c, double t1, double t2) {
  Witness w = c.where;
  w.t1 = t1;
  w.t2 = t2;
  return w;
}

void merge_into(std::map<std::pair<std::string, std::string>, CheckRecord>& acc,
                const VerificationReport& part) {
  for (const auto& r : part.records) {
    auto [it, inserted] = acc.try_emplace({r.check, r.regime}, r);
    if (!inserted) it->second.merge(r);
  }
}

VerificationReport collect(std::map<std::pair<std::string, std::string>, CheckRecord>& acc) {
  VerificationReport out;
  for (auto& [key, r] : acc) out.records.push_back(std::move(r));
  out.canonicalize();
  return out;
}

struct CaseSpec {
  std::uint64_t seed;
  std::size_t resolution;
  Tau tau;
  Family family;
};

std::vector<CaseSpec> enumerate_cases(const LemmaCheckConfig& cfg) {
  std::vector<CaseSpec> cases;
  for (auto seed : cfg.seeds)
    for (auto n : cfg.resolutions)
      for (const auto& tau : cfg.tau_choices)
        cases.push_back({seed, n, tau, cfg.families[seed % cfg.families.size()]});
  return cases;
}

LemmaCase build_case(const CaseSpec& s, const TLattice& lattice) {
  const double h = 1.0 / static_cast<double>(s.resolution);
  const Grid2D f = random_grid(s.seed, s.resolution, s.resolution, {h, h}, s.family);
  Witness w;
  w.seed = s.seed;
  w.family = std::string(to_string(s.family));
  w.resolution = s.resolution;
  w.tau = s.tau;
  return LemmaCase(f, s.tau, std::move(w), lattice);
}

// Runs `per_case` over every case of cfg in parallel and merges in case order.
VerificationReport over_cases(const LemmaCheckConfig& cfg,
                              const std::function<VerificationReport(const LemmaCase&)>& per_case) {
  cfg.validate();
  const auto cases = enumerate_cases(cfg);
  std::vector<VerificationReport> parts(cases.size());
  parallel_for(cases.size(), cfg.workers, [&](std::size_t k) {
    parts[k] = per_case(build_case(cases[k], cfg.t_lattice));
  });
  std::map<std::pair<std::string, std::string>, CheckRecord> acc;
  for (const auto& p : parts) merge_into(acc, p);
  return collect(acc);
}

VerificationReport structural_checks(const LemmaCase& c) {
  VerificationReport out;
  const double scale = c.f.max_abs();
  auto record = [&](const char* id, double violation) {
    CheckRecord r;
    r.check = id;
    r.regime = "all";
    r.constant = 1e-12;
    r.observe(scale == 0.0 ? (violation == 0.0 ? 0.0 : kInfinity) : violation / scale, c.where);
    r.min_case_samples = r.samples;
    out.records.push_back(std::move(r));
  };
  record("decomp.zero_means", check_zero_means(c.d).max());
  record("decomp.reconstruction", reconstruction_error(c.f, c.d));
  return out;
}

void hardy_checks(std::uint64_t seed, VerificationReport& out) {
  constexpr double kCell = 0.25;
  const Grid1D phi = random_step_1d(seed, 12, kCell, kCell * static_cast<double>(seed % 4));
  for (double q : {1.0, 2.0})
    for (double alpha : {0.5, 1.0, 2.0}) {
      const HardyResult h = verify_hardy(alpha, q, phi);
      const std::string regime = "q=" + format_double(q) + ",alpha=" + format_double(alpha);
      Witness w;
      w.seed = seed;
      w.family = "step";
      w.resolution = phi.size();
      w.note = "origin=" + format_double(phi.origin());
      for (int which = 0; which < 2; ++which) {
        CheckRecord r;
        r.check = which == 0 ? "hardy.outer" : "hardy.inner";
        r.regime = regime;
        r.constant = 1.0;
        r.observe(which == 0 ? h.ratio_outer() : h.ratio_inner(), w);
        r.min_case_samples = r.samples;
        out.records.push_back(std::move(r));
      }
    }
}

}  // namespace

std::vector<double> TLattice::nodes(double h, std::size_t n) const {
  std::vector<double> out;
  for (double f : fractions) out.push_back(f * h);
  for (std::size_t k = 1; k <= n; ++k) out.push_back(static_cast<double>(k) * h);
  for (double m : beyond) out.push_back(m * static_cast<double>(n) * h);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

LemmaCheckConfig LemmaCheckConfig::defaults() {
  LemmaCheckConfig cfg;
  for (std::uint64_t s = 0; s < 100; ++s) cfg.seeds.push_back(s);
  return cfg;
}

void LemmaCheckConfig::validate() const {
  if (seeds.empty() || resolutions.empty() || tau_choices.empty() || families.empty())
    fail(Errc::invalid_argument, "campaign needs non-empty seeds, resolutions, tau choices and families");
  for (auto n : resolutions)
    if (n == 0 || n > max_resolution)
      fail(Errc::invalid_argument, "resolution " + std::to_string(n) + " outside 1.." +
                                       std::to_string(max_resolution));
  for (const auto& t : tau_choices)
    if (t.c1 == 0 || t.c2 == 0 || !t.bounded(0) || !t.bounded(1))
      fail(Errc::invalid_argument, "tau choices must be finite positive cell counts");
}

void CheckRecord::observe(double ratio, const Witness& w) {
  ++samples;
  if (!has_witness || ratio > worst_ratio || (std::isnan(ratio) && !std::isnan(worst_ratio))) {
    worst_ratio = std::isnan(ratio) ? kInfinity : ratio;
    witness = w;
    has_witness = true;
  }
}

void CheckRecord::merge(const CheckRecord& other) {
  if (other.has_witness && (!has_witness || other.worst_ratio > worst_ratio)) {
    worst_ratio = other.worst_ratio;
    witness = other.witness;
    has_witness = true;
  }
  min_case_samples = std::min(min_case_samples, other.min_case_samples);
  samples += other.samples;
}

bool VerificationReport::all_pass() const noexcept { return failures() == 0; }

std::size_t VerificationReport::failures() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [](const CheckRecord& r) { return !r.pass(); }));
}

const CheckRecord* VerificationReport::find(const std::string& check, const std::string& regime) const {
  for (const auto& r : records)
    if (r.check == check && r.regime == regime) return &r;
  return nullptr;
}

void VerificationReport::canonicalize() {
  std::stable_sort(records.begin(), records.end(), [](const CheckRecord& a, const CheckRecord& b) {
    return std::tie(a.check, a.regime) < std::tie(b.check, b.regime);
  });
}

std::string VerificationReport::to_text() const {
  std::ostringstream out;
  out << "checks = " << records.size() << '\n'
      << "failures = " << failures() << '\n'
      << "status = " << (all_pass() ? "pass" : "fail") << '\n';
  for (const auto& r : records) {
    out << '\n'
        << "[check]\n"
        << "id = " << r.check << '\n'
        << "regime = " << r.regime << '\n'
        << "constant = " << format_double(r.constant) << '\n'
        << "worst_ratio = " << format_double(r.worst_ratio) << '\n'
        << "samples = " << r.samples << '\n'
        << "min_case_samples = " << r.min_case_samples << '\n';
    if (r.has_witness) {
      const Witness& w = r.witness;
      out << "witness_seed = " << w.seed << '\n'
          << "witness_family = " << w.family << '\n'
          << "witness_resolution = " << w.resolution << '\n';
      if (r.check.rfind("hardy.", 0) == 0) {
        out << "witness_note = " << w.note << '\n';
      } else {
        out << "witness_tau = " << w.tau.c1 << ',' << w.tau.c2 << '\n';
        if (r.regime != "all") out << "witness_t = " << format_double(w.t1) << ',' << format_double(w.t2) << '\n';
      }
    }
    out << "pass = " << (r.pass() ? "true" : "false") << '\n';
  }
  return out.str();
}

std::string regime_label(double t1, double t2, double tau1, double tau2) {
  return kRegimes[regime_index(t1, t2, tau1, tau2)];
}

double bound_ratio(double lhs, double rhs) noexcept {
  if (lhs == 0.0) return 0.0;
  if (rhs == 0.0) return kInfinity;
  return lhs / rhs;
}

LemmaCase::LemmaCase(const Grid2D& g, const Tau& tau, Witness w, TLattice lat)
    : f(g),
      d(decompose(g, tau)),
      table(build_net_average_table(g)),
      t00(build_net_average_table(d.f00)),
      t01(build_net_average_table(d.f01)),
      t10(build_net_average_table(d.f10)),
      t11(build_net_average_table(d.f11)),
      where(std::move(w)),
      lattice(std::move(lat)) {}

VerificationReport verify_lemma_f00(const LemmaCase& c) {
  RegimeRecords rec("bound.f00", {64.0, 64.0, 64.0, 64.0});
  const auto& F = c.table;
  for_each_t(c, [&](double t1, double t2, double s1, double s2, int regime) {
    const double lhs = c.t00.query(t1, t2);
    double rhs = 0.0;
    switch (regime) {
      case 0: rhs = (s1 / t1) * (s2 / t2) * F.query(s1, s2); break;
      case 1: rhs = (s1 / t1) * F.query(s1, t2); break;
      case 2: rhs = (s2 / t2) * F.query(t1, s2); break;
      default: rhs = F.query(t1, t2); break;
    }
    rec.observe(regime, lhs, rhs, at(c, t1, t2));
  });
  VerificationReport out;
  rec.append_to(out);
  return out;
}

VerificationReport verify_lemma_f01_f10(const LemmaCase& c) {
  RegimeRecords r01("bound.f01", {8.0, 56.0, 8.0, 56.0});
  RegimeRecords r10("bound.f10", {8.0, 8.0, 56.0, 56.0});
  const auto& F = c.table;
  for_each_t(c, [&](double t1, double t2, double s1, double s2, int regime) {
    const Witness w = at(c, t1, t2);
    double rhs01 = 0.0, rhs10 = 0.0;
    switch (regime) {
      case 0:
        rhs01 = (s1 / t1) * (3.0 * F.query(s1, t2) + 4.0 * (s2 / t2) * F.query(s1, s2));
        rhs10 = (s2 / t2) * (3.0 * F.query(t1, s2) + 4.0 * (s1 / t1) * F.query(s1, s2));
        break;
      case 1:
        rhs01 = (s1 / t1) * F.query(s1, s2);
        rhs10 = 3.0 * F.query(t1, t2) + 4.0 * (s1 / t1) * F.query(s1, t2);
        break;
      case 2:
        rhs01 = 3.0 * F.query(t1, t2) + 4.0 * (s2 / t2) * F.query(t1, s2);
        rhs10 = (s2 / t2) * F.query(s1, s2);
        break;
      default:
        rhs01 = F.query(t1, s2);
        rhs10 = F.query(s1, t2);
        break;
    }
    r01.observe(regime, c.t01.query(t1, t2), rhs01, w);
    r10.observe(regime, c.t10.query(t1, t2), rhs10, w);
  });
  VerificationReport out;
  r01.append_to(out);
  r10.append_to(out);
  return out;
}

VerificationReport verify_lemma_f11(const LemmaCase& c) {
  RegimeRecords rec("bound.f11", {4.0, 4.0, 4.0, 4.0});
  for_each_t(c, [&](double t1, double t2, double s1, double s2, int regime) {
    rec.observe(regime, c.t11.query(t1, t2), c.table.query(std::max(t1, s1), std::max(t2, s2)),
                at(c, t1, t2));
  });
  VerificationReport out;
  rec.append_to(out);
  return out;
}

VerificationReport verify_lemma_f00(const LemmaCheckConfig& cfg) {
  return over_cases(cfg, [](const LemmaCase& c) { return verify_lemma_f00(c); });
}

VerificationReport verify_lemma_f01_f10(const LemmaCheckConfig& cfg) {
  return over_cases(cfg, [](const LemmaCase& c) { return verify_lemma_f01_f10(c); });
}

VerificationReport verify_lemma_f11(const LemmaCheckConfig& cfg) {
  return over_cases(cfg, [](const LemmaCase& c) { return verify_lemma_f11(c); });
}

VerificationReport run_campaign(const LemmaCheckConfig& cfg) {
  VerificationReport report = over_cases(cfg, [](const LemmaCase& c) {
    VerificationReport part = structural_checks(c);
    for (const auto& more : {verify_lemma_f00(c), verify_lemma_f01_f10(c), verify_lemma_f11(c)})
      part.records.insert(part.records.end(), more.records.begin(), more.records.end());
    return part;
  });
  if (cfg.hardy) {
    std::vector<std::uint64_t> seeds(cfg.seeds);
    std::sort(seeds.begin(), seeds.end());
    seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
    std::vector<VerificationReport> parts(seeds.size());
    parallel_for(seeds.size(), cfg.workers, [&](std::size_t k) { hardy_checks(seeds[k], parts[k]); });
    std::map<std::pair<std::string, std::string>, CheckRecord> acc;
    for (const auto& r : report.records) acc.emplace(std::make_pair(r.check, r.regime), r);
    for (const auto& p : parts) merge_into(acc, p);
    report = collect(acc);
  }
  return report;
}

}  // namespace netspace
