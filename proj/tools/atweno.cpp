// Command-line driver: run catalogue cases, convergence tables, CPU-ratio
// benchmarks and exact reference solutions.

#include "atweno/atweno.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitConfig = 2;
constexpr int kExitDiverged = 3;

struct Options {
  std::string case_name = "test1";
  std::string scheme = "FOW5C4";
  int cells = 0;
  double cfl = 0.0;
  double tfinal = 0.0;
  std::string out;
  std::string report;
  bool serial = true;
  int reps = 10;
  std::string reference;
  std::vector<int> meshes{50, 100, 200, 400};
  std::vector<std::string> schemes;
  int reference_factor = 20;
};

atweno::harness::RunOptions run_options(const Options& o) {
  atweno::harness::RunOptions r;
  if (o.cells > 0) r.cells = o.cells;
  if (o.cfl > 0.0) r.cfl = o.cfl;
  if (o.tfinal > 0.0) r.t_final = o.tfinal;
  r.reference_factor = o.reference_factor;
  return r;
}

std::string output_path(const std::string& name) {
  if (name.empty() || name.front() == '/') return name;
  if (const char* dir = std::getenv("ATWENO_OUTPUT_DIR")) return std::string(dir) + "/" + name;
  return name;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
  os << text;
}

int cmd_list() {
  using namespace atweno::harness;
  std::printf("%-8s %-10s %-10s %6s %-8s %8s  %s\n", "case", "model", "domain", "cells", "bc",
              "t_final", "description");
  auto row = [](const TestCase& c) {
    char domain[32];
    std::snprintf(domain, sizeof domain, "[%g,%g]", c.lower, c.upper);
    std::printf("%-8s %-10s %-10s %6d %-8s %8g  %s\n", c.name.c_str(), to_string(c.model), domain,
                c.cells, c.boundary == atweno::Boundary::periodic ? "periodic" : "outflow",
                c.t_final, c.description.c_str());
  };
  for (const auto& c : catalogue()) row(c);
  std::printf("\nauxiliary (convergence studies):\n");
  for (const auto& c : auxiliary_cases()) row(c);
  std::printf("\nscheme labels: %s\n", kLabelGrammar);
  std::printf("  W = WENO-JS, FOW = FOWENO (order 3 uses OWENO3)\n");
  std::printf("  R3 = SSPRK3, R4 = SSPRK(10,4), Cs = CAT of order s, Ls = LAT of degree s\n");
  return kExitOk;
}

int cmd_run(const Options& o) {
  using namespace atweno::harness;
  const TestCase& c = find_case(o.case_name);
  const RunReport r = run_case(c, o.scheme, run_options(o));
  if (!o.out.empty()) write_file(output_path(o.out), r.csv);
  const std::string json = r.to_json().dump(2);
  if (!o.report.empty()) write_file(output_path(o.report), json + "\n");
  std::cout << json << "\n";
  return r.status == atweno::RunStatus::completed ? kExitOk : kExitDiverged;
}

int cmd_eoc(const Options& o) {
  using namespace atweno::harness;
  const TestCase& c = find_case(o.case_name);
  const auto rows = eoc_table(c, o.scheme, o.meshes, run_options(o));
  std::cout << "# " << c.name << " " << o.scheme << "\n" << format_eoc(rows);
  return kExitOk;
}

int cmd_bench(const Options& o) {
  using namespace atweno::harness;
  const TestCase& c = find_case(o.case_name);
  std::vector<std::string> labels = o.schemes;
  if (labels.empty()) labels.push_back(o.scheme);
  const std::string ref = o.reference.empty() ? default_bench_reference(c) : o.reference;
  const BenchTable t = benchmark(c, labels, ref, o.reps, run_options(o));
  const std::string text = format_bench(t) + format_indicator_costs();
  if (!o.out.empty()) write_file(output_path(o.out), text);
  std::cout << text;
  return kExitOk;
}

int cmd_exact(const Options& o) {
  using namespace atweno;
  using namespace atweno::harness;
  const TestCase& c = find_case(o.case_name);
  const int n = o.cells > 0 ? o.cells : c.cells;
  const double t = o.tfinal > 0.0 ? o.tfinal : c.t_final;
  const Axis axis{c.lower, c.upper, n, 1};
  std::string csv;
  if (c.model == ModelKind::euler1d) {
    const auto sol = exact::solve_riemann(c.left, c.right, c.gamma);
    csv = "x,rho,u,p,e\n";
    char buf[160];
    for (int i = 0; i < n; ++i) {
      const double x = axis.center(i);
      const auto q = sol.sample((x - c.x_split) / t);
      const double e = q.rho > 0.0 ? q.p / ((c.gamma - 1.0) * q.rho) : 0.0;
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", x, q.rho, q.u, q.p, e);
      csv += buf;
    }
    std::fprintf(stderr, "p* = %.12g, u* = %.12g (%s / %s)\n", sol.p_star, sol.u_star,
                 exact::to_string(sol.left_wave), exact::to_string(sol.right_wave));
  } else if (c.model == ModelKind::advection ||
             (c.model == ModelKind::burgers && c.reference == ReferenceKind::exact)) {
    csv = "x,u\n";
    char buf[80];
    for (int i = 0; i < n; ++i) {
      const double x = axis.center(i);
      double v = 0.0;
      if (c.model == ModelKind::advection) {
        v = exact::advection_exact([&](double s) { return harness::detail::profile_value(c, s); }, c.speed,
                                   x, t, c.lower, c.upper);
      } else {
        const exact::BurgersCharacteristic b([&](double s) { return harness::detail::profile_value(c, s); },
                                             [&](double s) { return harness::detail::profile_slope(c, s); },
                                             c.lower, c.upper);
        v = b(x, t);
      }
      std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", x, v);
      csv += buf;
    }
  } else {
    throw std::invalid_argument("case " + c.name + " has no exact solution");
  }
  if (!o.out.empty())
    write_file(output_path(o.out), csv);
  else
    std::cout << csv;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Approximate Taylor methods with WENO/FOWENO reconstructions"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key=value file overriding defaults");

  Options o;
  app.add_option("--case", o.case_name, "test case (test1..test13, sine, burgers-smooth)");
  app.add_option("--scheme", o.scheme, std::string("scheme label ") + atweno::harness::kLabelGrammar);
  app.add_option("--cells", o.cells, "cells per axis (default: case value)");
  app.add_option("--cfl", o.cfl, "CFL number (default: case value for the order)");
  app.add_option("--tfinal", o.tfinal, "final time (default: case value)");
  app.add_option("--out", o.out, "output file (CSV or table)");
  app.add_option("--report", o.report, "JSON report file (run)");
  app.add_flag("--serial", o.serial, "deterministic serial execution (always on)");
  app.add_option("--reps", o.reps, "benchmark repetitions")->check(CLI::PositiveNumber);
  app.add_option("--reference", o.reference, "benchmark reference scheme");
  app.add_option("--meshes", o.meshes, "mesh sequence for eoc")->delimiter(',');
  app.add_option("--schemes", o.schemes, "scheme list for bench")->delimiter(',');
  app.add_option("--reference-factor", o.reference_factor,
                 "refinement factor of fine-grid references (0 disables)");

  auto* run = app.add_subcommand("run", "run one case with one scheme");
  auto* eoc = app.add_subcommand("eoc", "convergence table over a mesh sequence");
  auto* bench = app.add_subcommand("bench", "CPU time ratios against a reference scheme");
  auto* exact = app.add_subcommand("exact", "sample an exact reference solution");
  auto* list = app.add_subcommand("list", "list cases and the scheme grammar");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*list) return cmd_list();
    if (*run) return cmd_run(o);
    if (*eoc) return cmd_eoc(o);
    if (*bench) return cmd_bench(o);
    if (*exact) return cmd_exact(o);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitOk;
}
