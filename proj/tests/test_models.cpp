#include "atweno/models.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

using namespace atweno;

TEST(Models, ScalarFluxes) {
  const LinearAdvection a{2.0};
  EXPECT_EQ(a.flux({3.0})[0], 6.0);
  EXPECT_EQ(a.wave_speed({-7.0}), 2.0);
  const Burgers b;
  EXPECT_EQ(b.flux({2.0})[0], 2.0);
  EXPECT_EQ(b.flux({-2.0})[0], 2.0);
  EXPECT_EQ(b.wave_speed({-3.0}), 3.0);
  const LinearAdvection2D c{1.0, -0.5};
  EXPECT_EQ(c.flux({4.0}, 0)[0], 4.0);
  EXPECT_EQ(c.flux({4.0}, 1)[0], -2.0);
  EXPECT_EQ(c.wave_speed({4.0}, 1), 0.5);
}

TEST(Models, EulerFluxExample) {
  const Euler1D e;
  const auto w = e.to_conserved({1.0, 0.0, 1.0});
  EXPECT_DOUBLE_EQ(w[2], 2.5);
  const auto f = e.flux(w);
  EXPECT_DOUBLE_EQ(f[0], 0.0);
  EXPECT_DOUBLE_EQ(f[1], 1.0);
  EXPECT_DOUBLE_EQ(f[2], 0.0);
  EXPECT_NEAR(e.wave_speed(w), std::sqrt(1.4), 1e-15);

  const auto m = e.to_conserved({2.0, 3.0, 4.0});
  const auto g = e.flux(m);
  EXPECT_NEAR(g[0], 6.0, 1e-14);
  EXPECT_NEAR(g[1], 2.0 * 9.0 + 4.0, 1e-13);
  const double energy = 4.0 / 0.4 + 0.5 * 2.0 * 9.0;
  EXPECT_NEAR(g[2], 3.0 * (energy + 4.0), 1e-12);
  EXPECT_NEAR(e.internal_energy(m), 4.0 / (0.4 * 2.0), 1e-14);
}

TEST(Models, EulerPrimitiveRoundTrip) {
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> pos(0.01, 10.0), vel(-5.0, 5.0);
  const Euler1D e;
  const Euler2D e2;
  for (int i = 0; i < 200; ++i) {
    const EulerPrimitive1D q{pos(rng), vel(rng), pos(rng)};
    const auto r = e.to_primitive(e.to_conserved(q));
    EXPECT_NEAR(r.rho, q.rho, 1e-13 * q.rho);
    EXPECT_NEAR(r.u, q.u, 1e-12 * (1.0 + std::abs(q.u)));
    EXPECT_NEAR(r.p, q.p, 1e-11 * (1.0 + q.p + q.rho * q.u * q.u));
    const EulerPrimitive2D s{pos(rng), vel(rng), vel(rng), pos(rng)};
    const auto t = e2.to_primitive(e2.to_conserved(s));
    EXPECT_NEAR(t.v, s.v, 1e-12 * (1.0 + std::abs(s.v)));
    EXPECT_NEAR(t.p, s.p, 1e-11 * (1.0 + s.p + s.rho * (s.u * s.u + s.v * s.v)));
  }
}

TEST(Models, InadmissibleStatesThrow) {
  const Euler1D e;
  EXPECT_THROW(e.flux({-1.0, 0.0, 1.0}), AdmissibilityError);
  EXPECT_THROW(e.flux({1.0, 0.0, -1.0}), AdmissibilityError);
  EXPECT_THROW(e.to_conserved({1.0, 0.0, 0.0}), AdmissibilityError);
  try {
    e.wave_speed({1.0, 10.0, 1.0});
    FAIL();
  } catch (const AdmissibilityError& err) {
    EXPECT_EQ(err.state(), (std::vector<double>{1.0, 10.0, 1.0}));
  }
  EXPECT_FALSE(Euler2D{}.admissible({0.0, 0.0, 0.0, 1.0}));
}

TEST(Models, LaxFriedrichsSplit) {
  std::mt19937 rng(2);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  const Burgers b;
  for (int i = 0; i < 100; ++i) {
    const State<1> s{u(rng)};
    const double alpha = 3.0;
    const auto [plus, minus] = lax_friedrichs_split(s, b.flux(s), alpha);
    EXPECT_NEAR(plus[0] + minus[0], b.flux(s)[0], 1e-15);
    EXPECT_NEAR(plus[0] - minus[0], alpha * s[0], 1e-14);
  }
}

TEST(Models, Euler2DSwapSymmetry) {
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> pos(0.1, 5.0), vel(-2.0, 2.0);
  const Euler2D e;
  const Euler1D e1;
  for (int i = 0; i < 100; ++i) {
    const auto w = e.to_conserved({pos(rng), vel(rng), vel(rng), pos(rng)});
    const auto fy = e.flux(w, 1);
    const auto fx_swapped = Euler2D::swap_momentum(e.flux(Euler2D::swap_momentum(w), 0));
    EXPECT_EQ(fy, fx_swapped);
    EXPECT_EQ(e.wave_speed(w, 1), e.wave_speed(Euler2D::swap_momentum(w), 0));
  }
  const auto w = e.to_conserved({1.3, 0.7, 0.0, 2.1});
  const auto f = e.flux(w, 0);
  const auto g = e1.flux(e1.to_conserved({1.3, 0.7, 2.1}));
  EXPECT_NEAR(f[0], g[0], 1e-15);
  EXPECT_NEAR(f[1], g[1], 1e-14);
  EXPECT_EQ(f[2], 0.0);
  EXPECT_NEAR(f[3], g[2], 1e-14);
}

TEST(Models, MaxWaveSpeed) {
  const std::vector<State<1>> s{{-4.0}, {1.0}, {2.5}};
  EXPECT_EQ(max_wave_speed(Burgers{}, std::span<const State<1>>(s)), 4.0);
  const Euler1D e;
  const std::vector<State<3>> sod{e.to_conserved({1.0, 0.0, 1.0}), e.to_conserved({0.125, 0.0, 0.1})};
  EXPECT_NEAR(max_wave_speed(e, std::span<const State<3>>(sod)), std::sqrt(1.4), 1e-15);
}
