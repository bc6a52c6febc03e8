#include <doctest.h>

#include <sstream>

#include "netspace/csv.hpp"
#include "netspace/error.hpp"
#include "netspace/grid.hpp"
#include "oracles.hpp"

using namespace netspace;

namespace {

Grid2D sample_2x2() { return Grid2D({0.0, 0.0}, {1.0, 1.0}, 2, 2, {1, 3, 5, 7}); }

}  // namespace

TEST_CASE("make_indicator_2d samples the unit indicator") {
  const Grid2D g = make_indicator_2d(1.0, 1.0, 2, 2);
  CHECK(g.cell(0) == 0.5);
  CHECK(g.cell(1) == 0.5);
  for (double v : g.values()) CHECK(v == 1.0);

  const Grid2D one = make_indicator_2d(1.0, 2.0, 1, 1);
  CHECK(one.n1() == 1);
  CHECK(one.cell(0) == 1.0);
  CHECK(one.cell(1) == 2.0);
  CHECK(one(0, 0) == 1.0);

  const Grid2D h = make_indicator_2d(1.5, 2.5, 3, 5);
  CHECK(build_sat(h).at(3, 5) == doctest::Approx(1.5 * 2.5).epsilon(1e-15));
}

TEST_CASE("make_indicator_2d rejects degenerate sizes") {
  CHECK_THROWS_AS(make_indicator_2d(0.0, 1.0, 1, 1), Error);
  CHECK_THROWS_AS(make_indicator_2d(1.0, -1.0, 1, 1), Error);
  CHECK_THROWS_AS(make_indicator_2d(1.0, 1.0, 0, 1), Error);
  try {
    make_indicator_2d(1.0, 1.0, 1, 0);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::invalid_argument);
  }
}

TEST_CASE("grid constructors validate invariants") {
  CHECK_THROWS_AS(Grid2D({0, 0}, {0.0, 1.0}, 1, 1, {1.0}), Error);
  CHECK_THROWS_AS(Grid2D({0, 0}, {1.0, 1.0}, 2, 1, {1.0}), Error);
  CHECK_THROWS_AS(Grid2D({0, 0}, {1.0, 1.0}, 1, 1, {std::nan("")}), Error);
  CHECK_THROWS_AS(Grid1D(0.0, 1.0, {}), Error);
  CHECK_THROWS_AS(Grid1D(0.0, -1.0, {1.0}), Error);
}

TEST_CASE("tensor forms the outer product") {
  const Grid2D t = tensor(Grid1D(0.0, 1.0, {1, 2}), Grid1D(0.0, 1.0, {3}));
  CHECK(t.n1() == 2);
  CHECK(t.n2() == 1);
  CHECK(t(0, 0) == 3.0);
  CHECK(t(1, 0) == 6.0);

  CHECK(tensor(Grid1D(0.0, 1.0, {0, 0}), Grid1D(0.0, 1.0, {4, 5})).is_zero());

  const Grid2D sq = tensor(make_indicator_1d(1.0, 4), make_indicator_1d(1.0, 4));
  const Grid2D ind = make_indicator_2d(1.0, 1.0, 4, 4);
  CHECK(same_metadata(sq, ind));
  CHECK(checksum(sq) == checksum(ind));
}

TEST_CASE("random_grid is deterministic and respects family ranges") {
  for (Family fam : {Family::uniform, Family::signed_values, Family::block_constant, Family::additive}) {
    const Grid2D a = random_grid(42, 9, 7, {0.5, 0.25}, fam);
    const Grid2D b = random_grid(42, 9, 7, {0.5, 0.25}, fam);
    CHECK(checksum(a) == checksum(b));
    CHECK(checksum(a) != checksum(random_grid(43, 9, 7, {0.5, 0.25}, fam)));
  }
  const Grid2D u = random_grid(7, 16, 16, {1.0, 1.0}, Family::uniform);
  for (double v : u.values()) {
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
  const Grid2D s = random_grid(7, 16, 16, {1.0, 1.0}, Family::signed_values);
  for (double v : s.values()) {
    CHECK(v >= -1.0);
    CHECK(v <= 1.0);
  }
  CHECK(random_grid(3, 4, 4, {1.0, 1.0}, Family::zero).is_zero());
}

TEST_CASE("additive family has a vanishing mixed second difference") {
  const Grid2D a = random_grid(11, 6, 5, {1.0, 1.0}, Family::additive);
  for (std::size_t i = 1; i < 6; ++i)
    for (std::size_t j = 1; j < 5; ++j)
      CHECK(a(i, j) - a(i - 1, j) - a(i, j - 1) + a(i - 1, j - 1) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("family names parse and unknown names are rejected") {
  CHECK(parse_family("uniform") == Family::uniform);
  CHECK(parse_family("signed") == Family::signed_values);
  CHECK(parse_family("block-constant") == Family::block_constant);
  CHECK(parse_family("additive") == Family::additive);
  CHECK(parse_family("zero") == Family::zero);
  CHECK(to_string(Family::block_constant) == "block-constant");
  try {
    parse_family("gaussian");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::invalid_argument);
  }
}

TEST_CASE("summed area table examples") {
  const SummedAreaTable sat = build_sat(sample_2x2());
  CHECK(sat.at(2, 2) == 16.0);
  CHECK(sat.rect(1, 2, 1, 2) == 7.0);
  CHECK(sat.at(0, 2) == 0.0);
  CHECK(sat.at(2, 0) == 0.0);

  const SummedAreaTable zero = build_sat(random_grid(1, 5, 3, {1.0, 1.0}, Family::zero));
  for (std::size_t i = 0; i <= 5; ++i)
    for (std::size_t j = 0; j <= 3; ++j) CHECK(zero.at(i, j) == 0.0);
}

TEST_CASE("summed area table matches naive sums on every rectangle") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const std::size_t n1 = 3 + seed * 2 + (seed == 5 ? 3 : 0), n2 = 16 - seed;
    const Grid2D f = random_grid(seed, n1, n2, {0.3, 0.7}, Family::signed_values);
    const SummedAreaTable sat(f);
    double worst = 0.0;
    for (std::size_t i0 = 0; i0 < n1; ++i0)
      for (std::size_t i1 = i0 + 1; i1 <= n1; ++i1)
        for (std::size_t j0 = 0; j0 < n2; ++j0)
          for (std::size_t j1 = j0 + 1; j1 <= n2; ++j1) {
            const double naive = oracle::rect_integral(f, static_cast<long>(i0), static_cast<long>(i1),
                                                       static_cast<long>(j0), static_cast<long>(j1));
            const double scale = std::max(1.0, std::abs(naive));
            worst = std::max(worst, std::abs(sat.rect(i0, i1, j0, j1) - naive) / scale);
          }
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("summed area table is linear") {
  const Grid2D f = random_grid(5, 8, 6, {0.5, 0.5}, Family::signed_values);
  const Grid2D g = random_grid(6, 8, 6, {0.5, 0.5}, Family::uniform);
  const double alpha = 1.75, beta = -0.5;
  const SummedAreaTable sf(f), sg(g), sc(combine(alpha, f, beta, g));
  for (std::size_t i0 = 0; i0 < 8; ++i0)
    for (std::size_t i1 = i0 + 1; i1 <= 8; ++i1)
      for (std::size_t j0 = 0; j0 < 6; ++j0)
        for (std::size_t j1 = j0 + 1; j1 <= 6; ++j1)
          CHECK(sc.rect(i0, i1, j0, j1) ==
                doctest::Approx(alpha * sf.rect(i0, i1, j0, j1) + beta * sg.rect(i0, i1, j0, j1)).epsilon(1e-12));
}

TEST_CASE("grid transforms") {
  const Grid2D f = sample_2x2();
  const Grid2D p = f.padded(3, 4);
  CHECK(p(1, 1) == 7.0);
  CHECK(p(2, 3) == 0.0);
  CHECK_THROWS_AS(f.padded(1, 2), Error);

  const Grid2D r = f.refined(2);
  CHECK(r.n1() == 4);
  CHECK(r.cell(0) == 0.5);
  CHECK(r(3, 1) == 5.0);
  CHECK(build_sat(r).at(4, 4) == 16.0);

  const Grid2D s = f.shifted(-2, 3);
  CHECK(s.origin(0) == -2.0);
  CHECK(s.origin(1) == 3.0);
  CHECK(f.scaled(-2.0)(1, 0) == -10.0);
  CHECK(f.scaled(-2.0).abs()(1, 0) == 10.0);
  CHECK(f.max_abs() == 7.0);
}

TEST_CASE("csv round trip is bit-identical") {
  const Grid2D f = random_grid(99, 5, 4, {0.1, 1.0 / 3.0}, Family::signed_values).shifted(3, -1);
  std::stringstream buf;
  write_grid_csv(buf, f, "netspace test provenance");
  const Grid2D g = read_grid_csv(buf);
  CHECK(same_metadata(f, g));
  CHECK(checksum(f) == checksum(g));
}

TEST_CASE("csv reader reports malformed input with line numbers") {
  auto parse_error_line = [](const std::string& text) -> std::string {
    std::istringstream in(text);
    try {
      read_grid_csv(in);
    } catch (const Error& e) {
      CHECK(e.code() == Errc::parse);
      return e.what();
    }
    return "no error";
  };
  CHECK(parse_error_line("").find("line 1") != std::string::npos);
  CHECK(parse_error_line("1,2\n").find("line 1") != std::string::npos);
  CHECK(parse_error_line("# origin=0,0 cells=1,1 dims=2,2\n1,2\n3\n").find("line 3") != std::string::npos);
  CHECK(parse_error_line("# origin=0,0 cells=1,1 dims=2,2\n1,2\n3,x\n").find("line 3") != std::string::npos);
  CHECK(parse_error_line("# origin=0,0 cells=1,1 dims=2,2\n1,2\n").find("expected 2 data rows") != std::string::npos);
  CHECK(parse_error_line("# origin=0,0 cells=0,1 dims=1,1\n1\n") != "no error");
  CHECK(parse_error_line("# origin=0,0 dims=1,1\n1\n").find("cells") != std::string::npos);

  std::istringstream ok("# origin=0,0 cells=1,1 dims=1,2\n# provenance\n\n 1e-3 , -2 \n");
  const Grid2D g = read_grid_csv(ok);
  CHECK(g(0, 0) == 1e-3);
  CHECK(g(0, 1) == -2.0);
}

TEST_CASE("loading a missing file is an io error") {
  try {
    load_grid_csv("/nonexistent/grid.csv");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::io);
  }
}
