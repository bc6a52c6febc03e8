// netspace: net averages, anisotropic net-space norms, grid decompositions,
// K-functional curves and lemma verification campaigns from the shell.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "cli_support.hpp"
#include "netspace/csv.hpp"
#include "netspace/decomp.hpp"
#include "netspace/error.hpp"
#include "netspace/kfunc.hpp"
#include "netspace/netavg.hpp"
#include "netspace/norms.hpp"
#include "netspace/parallel.hpp"
#include "netspace/verify.hpp"

namespace fs = std::filesystem;
using namespace netspace;

namespace {

constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

const char* kFooter = R"(Exit status:
  0  success
  1  verification found a violated bound
  2  usage error (unknown flag, missing argument)
  3  invalid argument
  4  malformed input file (the message names the line)
  5  file could not be read or written
  6  unsupported exponent (need 1 < p < inf, q >= 1)
  7  divergent integral
  8  undefined ratio (zero function)
  9  internal error

Options may also come from --config FILE holding key = value lines; keys
are option names without dashes, subcommand options go under a [name]
section (for example [norm] then p = 2,2). Flags on the command line win.
The worker count defaults to NETSPACE_WORKERS or the number of cores.)";

struct Quad {
  int points_per_octave = 8;
  double t_min_cells = 1.0;
  double t_max_factor = 4.0;

  void add_to(CLI::App* app) {
    app->add_option("--points-per-octave", points_per_octave, "Quadrature nodes per factor of two")
        ->capture_default_str();
    app->add_option("--t-min-cells", t_min_cells, "Numerical integration start, in cells (0,1]")
        ->capture_default_str();
    app->add_option("--t-max-factor", t_max_factor, "Numerical integration end, in support extents")
        ->capture_default_str();
  }
  QuadratureSpec spec() const {
    QuadratureSpec s{points_per_octave, t_min_cells, t_max_factor};
    s.validate();
    return s;
  }
  void describe(std::vector<std::pair<std::string, std::string>>& f) const {
    f.emplace_back("points_per_octave", std::to_string(points_per_octave));
    f.emplace_back("t_min_cells", format_double(t_min_cells));
    f.emplace_back("t_max_factor", format_double(t_max_factor));
  }
};

std::string pair_text(std::array<double, 2> v) { return format_double(v[0]) + "," + format_double(v[1]); }

// Writes to the named file, or stdout for "-".
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (path != "-") {
      file_.open(path);
      if (!file_) fail(Errc::io, "cannot write '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }
  void close(const std::string& path) {
    if (file_.is_open()) {
      file_.close();
      if (!file_) fail(Errc::io, "write to '" + path + "' failed");
    }
  }

 private:
  std::ofstream file_;
};

std::pair<Grid2D, std::vector<std::pair<std::string, std::string>>> load_input(const std::string& path) {
  Grid2D f = load_grid_csv(path);
  return {f, {{"input", fs::path(path).filename().string()}, {"checksum", cli::hex64(checksum(f))}}};
}

int cmd_avg(const std::string& input, const std::string& out, int below, int above, bool morrey, unsigned workers) {
  auto [f, fields] = load_input(input);
  fields.emplace_back("octaves_below", std::to_string(below));
  fields.emplace_back("octaves_above", std::to_string(above));
  fields.emplace_back("average", morrey ? "morrey" : "net");
  const NetAverageTable table = build_net_average_table(morrey ? f.abs() : f, workers);
  const auto t1 = cli::dyadic_lattice(f.cell(0), f.extent(0), below, above);
  const auto t2 = cli::dyadic_lattice(f.cell(1), f.extent(1), below, above);

  Sink sink(out);
  auto& os = sink.stream();
  os << cli::provenance("avg", fields) << '\n' << "t1\\t2";
  for (double t : t2) os << ',' << format_double(t);
  os << '\n';
  for (double a : t1) {
    os << format_double(a);
    for (double b : t2) os << ',' << format_double(table.query(a, b));
    os << '\n';
  }
  sink.close(out);
  return 0;
}

int cmd_norm(const std::string& input, std::string_view p, std::string_view q, const Quad& quad, unsigned workers) {
  auto [f, fields] = load_input(input);
  const Exponents2D e{cli::parse_pair(p, "p"), cli::parse_pair(q, "q")};
  fields.emplace_back("p", pair_text(e.p));
  fields.emplace_back("q", pair_text(e.q));
  quad.describe(fields);
  const NormBreakdown r = norm_from_table_detailed(build_net_average_table(f, workers), e, quad.spec());
  std::cout << cli::provenance("norm", fields) << '\n'
            << "norm = " << format_double(r.value) << '\n'
            << "outer_head = " << format_double(r.head) << '\n'
            << "outer_body = " << format_double(r.body) << '\n'
            << "outer_tail = " << format_double(r.tail) << '\n';
  return 0;
}

int cmd_decompose(const std::string& input, std::string_view tau_text, const std::string& prefix, unsigned workers) {
  auto [f, fields] = load_input(input);
  const auto lengths = cli::parse_pair(tau_text, "tau");
  const Tau tau = Tau::from_lengths(lengths[0], lengths[1], f.cells());
  fields.emplace_back("tau", pair_text(lengths));
  const Decomposition d = decompose(f, tau, workers);
  const std::string header = cli::provenance("decompose", fields);
  const char* suffix[4] = {"_00", "_01", "_10", "_11"};
  for (int k = 0; k < 4; ++k) save_grid_csv(prefix + suffix[k] + ".csv", d.component(k), header.substr(2));
  const ZeroMeanReport z = check_zero_means(d);
  std::cout << header << '\n'
            << "tau_cells = " << tau.c1 << ',' << tau.c2 << '\n'
            << "padded_dims = " << d.f00.n1() << ',' << d.f00.n2() << '\n'
            << "zero_mean_f00_x1 = " << format_double(z.f00_x1) << '\n'
            << "zero_mean_f01_x1 = " << format_double(z.f01_x1) << '\n'
            << "zero_mean_f00_x2 = " << format_double(z.f00_x2) << '\n'
            << "zero_mean_f10_x2 = " << format_double(z.f10_x2) << '\n'
            << "reconstruction_error = " << format_double(reconstruction_error(f, d)) << '\n';
  return 0;
}

int cmd_kfunc(const std::string& input, const InterpParams& params, const Quad& quad, const std::string& out,
              unsigned workers) {
  auto [f, fields] = load_input(input);
  fields.emplace_back("p0", pair_text(params.p0));
  fields.emplace_back("p1", pair_text(params.p1));
  fields.emplace_back("theta", pair_text(params.theta));
  fields.emplace_back("q", pair_text(params.q));
  quad.describe(fields);
  const EmbeddingResult r = embedding(f, params, quad.spec(), workers);
  const std::string header = cli::provenance("kfunc", fields);
  if (!out.empty()) {
    Sink sink(out);
    auto& os = sink.stream();
    os << header << '\n' << "t1,t2,tau1_cells,tau2_cells,k\n";
    auto cells = [](std::size_t c) { return c == Tau::unbounded ? std::string("inf") : std::to_string(c); };
    for (std::size_t i = 0; i < r.curve.t1.size(); ++i)
      for (std::size_t j = 0; j < r.curve.t2.size(); ++j)
        os << format_double(r.curve.t1[i]) << ',' << format_double(r.curve.t2[j]) << ','
           << cells(r.curve.c1[i]) << ',' << cells(r.curve.c2[j]) << ',' << format_double(r.curve.at(i, j))
           << '\n';
    sink.close(out);
  }
  const auto p = params.p();
  std::cout << header << '\n'
            << "functional = " << format_double(r.functional) << '\n'
            << "target_p = " << pair_text(p) << '\n'
            << "norm = " << format_double(r.norm) << '\n'
            << "ratio = " << format_double(r.ratio) << '\n'
            << "lattice_widenings = " << r.curve.widenings << '\n';
  return 0;
}

int cmd_verify(const LemmaCheckConfig& cfg, const std::vector<std::pair<std::string, std::string>>& fields,
               const std::string& out) {
  const VerificationReport report = run_campaign(cfg);
  Sink sink(out);
  sink.stream() << cli::provenance("verify", fields) << '\n' << report.to_text();
  sink.close(out);
  if (out != "-")
    std::cerr << "verify: " << report.records.size() << " checks, " << report.failures() << " failed\n";
  return report.all_pass() ? 0 : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Net averages, anisotropic net-space norms and interpolation checks"};
  app.footer(kFooter);
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from a key = value file");
  unsigned workers = 0;
  app.add_option("--workers", workers, "Worker threads (default: NETSPACE_WORKERS or all cores)");

  std::string input, out = "-";

  auto* avg = app.add_subcommand("avg", "Net-average matrix over a dyadic (t1, t2) lattice as CSV");
  int below = 2, above = 2;
  bool morrey = false;
  avg->add_option("--input", input, "Grid CSV")->required()->check(CLI::ExistingFile);
  avg->add_option("--out", out, "Output CSV ('-' for stdout)")->capture_default_str();
  avg->add_option("--octaves-below", below, "Octaves below one cell")->capture_default_str()->check(CLI::Range(0, 64));
  avg->add_option("--octaves-above", above, "Octaves above the support extent")->capture_default_str()->check(CLI::Range(0, 64));
  avg->add_flag("--morrey", morrey, "Average |f| instead of f");

  auto* norm = app.add_subcommand("norm", "Anisotropic net-space norm of a grid");
  std::string p = "2,2", q = "1,1";
  Quad quad;
  norm->add_option("--input", input, "Grid CSV")->required()->check(CLI::ExistingFile);
  norm->add_option("--p", p, "p1,p2 with 1 < p < inf")->capture_default_str();
  norm->add_option("--q", q, "q1,q2 with q >= 1 or inf")->capture_default_str();
  quad.add_to(norm);

  auto* dec = app.add_subcommand("decompose", "Four-part decomposition into <prefix>_00/_01/_10/_11.csv");
  std::string tau, prefix;
  dec->add_option("--input", input, "Grid CSV")->required()->check(CLI::ExistingFile);
  dec->add_option("--tau", tau, "tau1,tau2 as lengths (whole multiples of the cell size)")->required();
  dec->add_option("--out-prefix", prefix, "Output path prefix")->required();

  auto* kf = app.add_subcommand("kfunc", "K-functional curve, F(K), target norm and their ratio");
  std::string p0 = "2,2", p1 = "4,4", theta = "0.5,0.5", kq = "1,1", curve_out;
  kf->add_option("--input", input, "Grid CSV")->required()->check(CLI::ExistingFile);
  kf->add_option("--p0", p0, "p1^0,p2^0")->capture_default_str();
  kf->add_option("--p1", p1, "p1^1,p2^1")->capture_default_str();
  kf->add_option("--theta", theta, "theta1,theta2 in (0,1)")->capture_default_str();
  kf->add_option("--q", kq, "q1,q2 of the interpolation functional")->capture_default_str();
  kf->add_option("--out", curve_out, "Write the K curve CSV here ('-' for stdout)");
  Quad kquad;
  kquad.add_to(kf);

  auto* ver = app.add_subcommand("verify", "Randomized lemma and Hardy verification campaign");
  std::string seeds = "0-99", resolutions = "16,32", families = "uniform,signed,block-constant,additive",
              taus = "2x2,3x5,7x4";
  std::size_t max_resolution = 64;
  bool no_hardy = false;
  ver->add_option("--seeds", seeds, "Seed list, e.g. 0-99 or 1,4,9")->capture_default_str();
  ver->add_option("--resolutions", resolutions, "Grid sizes n (n x n cells on the unit square)")->capture_default_str();
  ver->add_option("--families", families, "Generator families, cycled by seed")->capture_default_str();
  ver->add_option("--taus", taus, "Tau choices in cells, e.g. 2x2,3x5")->capture_default_str();
  ver->add_option("--max-resolution", max_resolution, "Largest admissible resolution")->capture_default_str();
  ver->add_flag("--no-hardy", no_hardy, "Skip the Hardy inequality checks");
  ver->add_option("--out", out, "Report path ('-' for stdout)")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  if (workers == 0) workers = default_workers();
  try {
    if (*avg) return cmd_avg(input, out, below, above, morrey, workers);
    if (*norm) return cmd_norm(input, p, q, quad, workers);
    if (*dec) return cmd_decompose(input, tau, prefix, workers);
    if (*kf) {
      InterpParams params{cli::parse_pair(p0, "p0"), cli::parse_pair(p1, "p1"), cli::parse_pair(theta, "theta"),
                          cli::parse_pair(kq, "q")};
      params.validate();
      return cmd_kfunc(input, params, kquad, curve_out, workers);
    }
    if (*ver) {
      LemmaCheckConfig cfg;
      cfg.seeds = cli::parse_seeds(seeds);
      cfg.resolutions = cli::parse_counts(resolutions, "resolution");
      cfg.families = cli::parse_families(families);
      cfg.tau_choices = cli::parse_taus(taus);
      cfg.max_resolution = max_resolution;
      cfg.hardy = !no_hardy;
      cfg.workers = workers;
      cfg.validate();
      const std::vector<std::pair<std::string, std::string>> fields{
          {"seeds", seeds}, {"resolutions", resolutions}, {"families", families},
          {"taus", taus},   {"hardy", no_hardy ? "off" : "on"}};
      return cmd_verify(cfg, fields, out);
    }
  } catch (const Error& e) {
    std::cerr << "netspace: " << to_string(e.code()) << ": " << e.what() << '\n';
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    std::cerr << "netspace: internal error: " << e.what() << '\n';
    return 9;
  }
  return kExitUsage;
}
