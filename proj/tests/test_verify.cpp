#include <doctest.h>

#include <cmath>

#include "netspace/error.hpp"
#include "netspace/verify.hpp"

using namespace netspace;

namespace {

LemmaCheckConfig small_config() {
  LemmaCheckConfig cfg;
  cfg.seeds = {0, 1, 2, 3, 4, 5, 6, 7};
  cfg.resolutions = {8, 12};
  cfg.hardy = false;
  return cfg;
}

double worst(const VerificationReport& r, const std::string& prefix) {
  double m = 0.0;
  for (const auto& rec : r.records)
    if (rec.check.rfind(prefix, 0) == 0) m = std::max(m, rec.worst_ratio);
  return m;
}

}  // namespace

TEST_CASE("bound_ratio conventions") {
  CHECK(bound_ratio(0.0, 0.0) == 0.0);
  CHECK(bound_ratio(0.0, 2.0) == 0.0);
  CHECK(bound_ratio(1.0, 4.0) == 0.25);
  CHECK(std::isinf(bound_ratio(1.0, 0.0)));
}

TEST_CASE("regime labels treat equality as below") {
  CHECK(regime_label(2.0, 2.0, 1.0, 1.0) == "t1>tau1,t2>tau2");
  CHECK(regime_label(2.0, 1.0, 1.0, 1.0) == "t1>tau1,t2<=tau2");
  CHECK(regime_label(0.5, 3.0, 1.0, 1.0) == "t1<=tau1,t2>tau2");
  CHECK(regime_label(1.0, 1.0, 1.0, 1.0) == "t1<=tau1,t2<=tau2");
}

TEST_CASE("check record pass flag and merge") {
  CheckRecord a;
  a.constant = 4.0;
  Witness w1;
  w1.seed = 1;
  a.observe(3.0, w1);
  a.observe(2.0, w1);
  a.min_case_samples = a.samples;
  CHECK(a.pass());
  CheckRecord b = a;
  Witness w2;
  w2.seed = 2;
  b.samples = 0;
  b.worst_ratio = 0.0;
  b.observe(4.0 * (1.0 + 1e-10), w2);
  b.min_case_samples = b.samples;
  CHECK(b.pass());
  a.merge(b);
  CHECK(a.samples == 3);
  CHECK(a.min_case_samples == 1);
  CHECK(a.witness.seed == 2);
  CheckRecord c = a;
  c.observe(4.01, w1);
  CHECK_FALSE(c.pass());
}

TEST_CASE("Hardy equality cases") {
  const Grid1D phi(1.0, 1.0, {1.0});
  const HardyResult r = verify_hardy(1.0, 1.0, phi);
  CHECK(r.lhs_inner == doctest::Approx(std::log(2.0)).epsilon(1e-6));
  CHECK(r.rhs_inner == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(r.lhs_outer == doctest::Approx(1.5).epsilon(1e-6));
  CHECK(r.rhs_outer == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(r.ratio_inner() == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(r.ratio_outer() == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("Hardy on zero and invalid input") {
  const HardyResult z = verify_hardy(1.0, 2.0, Grid1D(0.0, 0.5, {0, 0, 0}));
  CHECK(z.lhs_outer == 0.0);
  CHECK(z.rhs_outer == 0.0);
  CHECK(z.ratio_outer() == 0.0);
  CHECK(z.ratio_inner() == 0.0);
  try {
    verify_hardy(1.0, 1.0, Grid1D(0.0, 1.0, {1.0, -0.5}));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::invalid_argument);
  }
  CHECK_THROWS_AS(verify_hardy(0.0, 1.0, Grid1D(0.0, 1.0, {1.0})), Error);
  CHECK_THROWS_AS(verify_hardy(1.0, 0.5, Grid1D(0.0, 1.0, {1.0})), Error);
  CHECK_THROWS_AS(verify_hardy(1.0, kInfinity, Grid1D(0.0, 1.0, {1.0})), Error);
}

TEST_CASE("Hardy inequalities hold on random steps") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const Grid1D phi = random_step_1d(seed, 10, 0.3, 0.25 * static_cast<double>(seed % 4));
    for (double q : {1.0, 1.5, 3.0})
      for (double alpha : {0.5, 1.0, 2.0}) {
        const HardyResult r = verify_hardy(alpha, q, phi);
        CHECK(r.ratio_outer() <= 1.0 + 1e-9);
        CHECK(r.ratio_inner() <= 1.0 + 1e-9);
      }
  }
}

TEST_CASE("Hardy rhs diverges when phi touches the origin and alpha >= 1") {
  const HardyResult r = verify_hardy(1.0, 1.0, Grid1D(0.0, 1.0, {1.0}));
  CHECK(std::isinf(r.rhs_inner));
  CHECK(r.ratio_inner() == 0.0);
  CHECK(r.ratio_outer() == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("zero family gives zero ratios everywhere") {
  LemmaCheckConfig cfg = small_config();
  cfg.families = {Family::zero};
  const VerificationReport r = run_campaign(cfg);
  CHECK(r.all_pass());
  CHECK_FALSE(r.records.empty());
  for (const auto& rec : r.records) CHECK(rec.worst_ratio == 0.0);
}

TEST_CASE("additive family leaves the f00 lemma with zero left side") {
  const Grid2D f = random_grid(3, 12, 12, {1.0 / 12, 1.0 / 12}, Family::additive);
  const LemmaCase c(f, {3, 4}, {});
  const VerificationReport r = verify_lemma_f00(c);
  REQUIRE(r.records.size() == 4);
  for (const auto& rec : r.records) {
    CHECK(rec.worst_ratio <= 1e-13);
    CHECK(rec.samples >= 10);
  }
}

TEST_CASE("block-constant inputs collapse the mixed components") {
  const Grid2D f = make_indicator_2d(1.0, 1.0, 12, 12).scaled(-2.0);
  const LemmaCase c(f, {4, 6}, {});
  for (const auto& rec : verify_lemma_f01_f10(c).records) CHECK(rec.worst_ratio == 0.0);
  for (const auto& rec : verify_lemma_f00(c).records) CHECK(rec.worst_ratio == 0.0);
  // f11 = f here, so both sides are net averages of f.
  for (const auto& rec : verify_lemma_f11(c).records) CHECK(rec.worst_ratio <= 1.0 + 1e-12);
}

TEST_CASE("each lemma sees every regime at least ten times per case") {
  const Grid2D f = random_grid(5, 16, 16, {1.0 / 16, 1.0 / 16}, Family::signed_values);
  for (const Tau& tau : {Tau{2, 2}, Tau{3, 5}, Tau{7, 4}}) {
    const LemmaCase c(f, tau, {});
    for (const auto& part : {verify_lemma_f00(c), verify_lemma_f01_f10(c), verify_lemma_f11(c)})
      for (const auto& rec : part.records) CHECK(rec.samples >= 10);
  }
}

TEST_CASE("small campaign respects every constant") {
  const VerificationReport r = run_campaign(small_config());
  CHECK(r.all_pass());
  CHECK(r.failures() == 0);
  CHECK(worst(r, "bound.f00") <= 64.0);
  CHECK(worst(r, "bound.f11") <= 4.0);
  CHECK(worst(r, "decomp.") <= 1e-12);
  for (const auto& regime : {"t1>tau1,t2>tau2", "t1>tau1,t2<=tau2", "t1<=tau1,t2>tau2", "t1<=tau1,t2<=tau2"}) {
    const CheckRecord* rec = r.find("bound.f01", regime);
    REQUIRE(rec != nullptr);
    CHECK(rec->min_case_samples >= 10);
    CHECK(rec->has_witness);
  }
  CHECK(r.find("bound.f01", "nowhere") == nullptr);
}

TEST_CASE("campaign reports are deterministic across worker counts") {
  LemmaCheckConfig cfg = small_config();
  cfg.seeds = {0, 1, 2, 3};
  cfg.hardy = true;
  cfg.workers = 1;
  const std::string a = run_campaign(cfg).to_text();
  cfg.workers = 3;
  const std::string b = run_campaign(cfg).to_text();
  CHECK(a == b);
  CHECK(a == run_campaign(cfg).to_text());
  CHECK(a.find("hardy.outer") != std::string::npos);
}

TEST_CASE("config validation") {
  LemmaCheckConfig cfg = small_config();
  cfg.seeds.clear();
  CHECK_THROWS_AS(run_campaign(cfg), Error);
  cfg = small_config();
  cfg.resolutions = {128};
  CHECK_THROWS_AS(run_campaign(cfg), Error);
  cfg = small_config();
  cfg.families.clear();
  CHECK_THROWS_AS(run_campaign(cfg), Error);
  cfg = small_config();
  cfg.tau_choices = {{0, 2}};
  CHECK_THROWS_AS(run_campaign(cfg), Error);
  const LemmaCheckConfig d = LemmaCheckConfig::defaults();
  CHECK(d.seeds.size() == 100);
  CHECK(d.max_resolution == 64);
}

TEST_CASE("report text carries every field") {
  const std::string text = run_campaign(small_config()).to_text();
  for (const char* key : {"id", "regime", "constant", "worst_ratio", "samples", "min_case_samples", "witness_seed",
                          "witness_family", "witness_resolution", "pass"})
    CHECK(text.find(std::string(key) + " = ") != std::string::npos);
}
