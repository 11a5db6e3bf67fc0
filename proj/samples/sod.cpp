// Sod shock tube with FOWENO5 + CAT4; prints the density error against the
// exact solution and writes both profiles to sod.csv.

#include "atweno/atweno.hpp"

#include <cmath>
#include <cstdio>

int main() {
  using namespace atweno;
  const Euler1D gas{1.4};
  const EulerPrimitive1D left{1.0, 0.0, 1.0}, right{0.125, 0.0, 0.1};

  const auto scheme = SchemeConfig::cat(2, ReconstructionConfig::make(Family::foweno, 2), 0.5);
  const Axis axis{0.0, 1.0, 200, scheme.ghost_width()};
  Solver1D<Euler1D> solver(gas, scheme, axis, Boundary::outflow);
  auto u = init_riemann_1d(axis, gas, left, right);

  const auto result = solver.advance(u, 0.25);
  if (result.status != RunStatus::completed) {
    std::fprintf(stderr, "%s\n", result.message.c_str());
    return 1;
  }

  const auto exact_sol = exact::solve_riemann(left, right, gas.gamma);
  std::FILE* f = std::fopen("sod.csv", "w");
  if (f) std::fprintf(f, "x,rho,rho_exact\n");
  double l1 = 0.0;
  for (int i = 0; i < axis.cells; ++i) {
    const double x = axis.center(i);
    const double ref = exact_sol.sample((x - 0.5) / u.time).rho;
    l1 += std::abs(u[i][0] - ref) * axis.dx();
    if (f) std::fprintf(f, "%.17g,%.17g,%.17g\n", x, u[i][0], ref);
  }
  if (f) std::fclose(f);
  std::printf("steps %lld, fallbacks %lld, density L1 error %.6e\n", result.steps,
              solver.counters().fallbacks, l1);
  return 0;
}
