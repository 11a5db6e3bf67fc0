#include "atweno/solver2d.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

using namespace atweno;

namespace {

std::vector<SchemeConfig> schemes() {
  const auto o3 = ReconstructionConfig::make(Family::oweno3, 1);
  const auto f5 = ReconstructionConfig::make(Family::foweno, 2);
  const auto w5 = ReconstructionConfig::make(Family::weno_js, 2);
  return {SchemeConfig::ssprk3(o3, 0.4),   SchemeConfig::ssprk104(f5, 0.4),
          SchemeConfig::lat(3, o3, 0.4),   SchemeConfig::lat(5, w5, 0.4),
          SchemeConfig::cat(1, o3, 0.4),   SchemeConfig::cat(2, f5, 0.4)};
}

EulerPrimitive1D smooth_state(double x) {
  const double s = std::sin(2 * std::numbers::pi * x);
  return {1.0 + 0.2 * s, 0.3 + 0.1 * s, 1.0 + 0.2 * s};
}

}  // namespace

TEST(Solver2D, CflDt) {
  EXPECT_DOUBLE_EQ(cfl_dt_2d(1.0, 1.0, 0.1, 0.1, 0.5, 1.0), 0.025);
  EXPECT_DOUBLE_EQ(cfl_dt_2d(0.0, 0.0, 0.1, 0.1, 0.5, 0.3), 0.3);
}

TEST(Solver2D, ReducesToOneDimension) {
  for (const auto& s : schemes()) {
    const int g = s.ghost_width();
    const Axis ax{0.0, 1.0, 24, g}, ay{0.0, 1.0, 2 * g, g};
    Solver2D<Euler2D> s2(Euler2D{}, s, ax, ay, Boundary::periodic);
    Solver1D<Euler1D> s1(Euler1D{}, s, ax, Boundary::periodic);
    auto u2 = s2.make_field();
    auto u1 = s1.make_field();
    for (int i = 0; i < ax.cells; ++i) {
      const auto q = smooth_state(ax.center(i));
      u1[i] = Euler1D{}.to_conserved(q);
      for (int j = 0; j < ay.cells; ++j) u2(i, j) = Euler2D{}.to_conserved({q.rho, q.u, 0.0, q.p});
    }
    const double dt = 0.2 * ax.dx();
    for (int n = 0; n < 10; ++n) {
      s1.step(u1, dt);
      s2.step(u2, dt);
    }
    double err = 0.0;
    for (int j = 0; j < ay.cells; ++j)
      for (int i = 0; i < ax.cells; ++i) {
        err = std::max(err, std::abs(u2(i, j)[0] - u1[i][0]));
        err = std::max(err, std::abs(u2(i, j)[1] - u1[i][1]));
        err = std::max(err, std::abs(u2(i, j)[2]));
        err = std::max(err, std::abs(u2(i, j)[3] - u1[i][2]));
      }
    EXPECT_LE(err, 1e-12) << static_cast<int>(s.integrator);
  }
}

TEST(Solver2D, TransposeEquivariance) {
  for (const auto& s : schemes()) {
    const int g = s.ghost_width();
    const Axis a{0.0, 1.0, 24, g};
    Solver2D<Euler2D> solver(Euler2D{}, s, a, a, Boundary::periodic);
    auto u = solver.make_field();
    auto v = solver.make_field();
    const Euler2D e;
    const double pi = std::numbers::pi;
    for (int j = 0; j < a.cells; ++j)
      for (int i = 0; i < a.cells; ++i) {
        const double x = a.center(i), y = a.center(j);
        u(i, j) = e.to_conserved({1.0 + 0.2 * std::sin(2 * pi * x) * std::cos(2 * pi * y),
                                  0.3 * std::cos(2 * pi * y), -0.2 * std::sin(2 * pi * x),
                                  1.0 + 0.1 * std::sin(2 * pi * (x + 2 * y))});
      }
    for (int j = 0; j < a.cells; ++j)
      for (int i = 0; i < a.cells; ++i) v(i, j) = Euler2D::swap_momentum(u(j, i));
    for (int n = 0; n < 5; ++n) {
      const double dt = solver.stable_dt(u, 1.0);
      solver.step(u, dt);
      solver.step(v, dt);
    }
    double err = 0.0;
    for (int j = 0; j < a.cells; ++j)
      for (int i = 0; i < a.cells; ++i) {
        const auto w = Euler2D::swap_momentum(v(j, i));
        for (int c = 0; c < 4; ++c) err = std::max(err, std::abs(w[c] - u(i, j)[c]));
      }
    EXPECT_LE(err, 1e-12) << static_cast<int>(s.integrator);
  }
}

TEST(Solver2D, PeriodicConservation) {
  for (const auto& s : schemes()) {
    const int g = s.ghost_width();
    const Axis a{0.0, 1.0, 24, g};
    Solver2D<LinearAdvection2D> solver(LinearAdvection2D{1.0, -0.5}, s, a, a, Boundary::periodic);
    auto u = solver.make_field();
    for (int j = 0; j < a.cells; ++j)
      for (int i = 0; i < a.cells; ++i)
        u(i, j) = {a.center(i) < 0.5 && a.center(j) < 0.3 ? 1.0 : 0.1};
    auto mass = [&] {
      double m = 0.0;
      for (int j = 0; j < a.cells; ++j)
        for (int i = 0; i < a.cells; ++i) m += u(i, j)[0];
      return m;
    };
    const double m0 = mass();
    const auto r = solver.advance(u, 0.2);
    EXPECT_EQ(r.status, RunStatus::completed);
    EXPECT_NEAR(mass(), m0, 1e-11);
  }
}

TEST(Solver2D, RejectsCenteredFirstDerivative) {
  auto s = SchemeConfig::cat(1, ReconstructionConfig::make(Family::oweno3, 1), 0.4);
  s.first_derivative = FirstDerivative::centered;
  const Axis a{0.0, 1.0, 8, 3};
  EXPECT_THROW((Solver2D<Euler2D>(Euler2D{}, s, a, a, Boundary::periodic)), std::invalid_argument);
}
