#include "atweno/reconstruct.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

using namespace atweno;

namespace {

// Polynomial with the given cell averages on cells [o - 1/2, o + 1/2],
// o = lo..hi (unit spacing); coefficients in the monomial basis.
std::vector<long double> average_polynomial(const std::vector<double>& avg, int lo) {
  const std::size_t n = avg.size();
  std::vector<std::vector<long double>> a(n, std::vector<long double>(n + 1));
  for (std::size_t r = 0; r < n; ++r) {
    const long double left = lo + static_cast<int>(r) - 0.5L, right = left + 1.0L;
    for (std::size_t c = 0; c < n; ++c)
      a[r][c] = (std::pow(right, c + 1.0L) - std::pow(left, c + 1.0L)) / (c + 1.0L);
    a[r][n] = avg[r];
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    std::swap(a[c], a[piv]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const long double f = a[r][c] / a[c][c];
      for (std::size_t t = c; t <= n; ++t) a[r][t] -= f * a[c][t];
    }
  }
  std::vector<long double> coef(n);
  for (std::size_t r = 0; r < n; ++r) coef[r] = a[r][n] / a[r][r];
  return coef;
}

long double eval_derivative(const std::vector<long double>& c, int l, long double x) {
  long double s = 0.0L;
  for (std::size_t n = static_cast<std::size_t>(l); n < c.size(); ++n) {
    long double f = 1.0L;
    for (int t = 0; t < l; ++t) f *= static_cast<long double>(n - t);
    s += f * c[n] * std::pow(x, static_cast<long double>(n - l));
  }
  return s;
}

// Jiang-Shu indicator by Gauss-Legendre quadrature of sum_l (P^(l))^2 on
// the central cell.
double jiang_shu_oracle(const std::vector<double>& avg, int lo) {
  const auto c = average_polynomial(avg, lo);
  static const long double xg[5] = {-0.9061798459386640L, -0.5384693101056831L, 0.0L,
                                    0.5384693101056831L, 0.9061798459386640L};
  static const long double wg[5] = {0.2369268850561891L, 0.4786286704993665L,
                                    0.5688888888888889L, 0.4786286704993665L,
                                    0.2369268850561891L};
  long double beta = 0.0L;
  for (int l = 1; l < static_cast<int>(c.size()); ++l)
    for (int q = 0; q < 5; ++q) {
      const long double d = eval_derivative(c, l, 0.5L * xg[q]);
      beta += 0.5L * wg[q] * d * d;
    }
  return static_cast<double>(beta);
}

double cell_average(const std::function<double(double)>& g, double a, double b) {
  static const double xg[5] = {-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
                               0.9061798459386640};
  static const double wg[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                               0.4786286704993665, 0.2369268850561891};
  const double m = 0.5 * (a + b), r = 0.5 * (b - a);
  double s = 0.0;
  for (int q = 0; q < 5; ++q) s += wg[q] * g(m + r * xg[q]);
  return 0.5 * s;
}

// Cell averages around x_i = centre on `count` cells starting at offset lo.
std::vector<double> averages(const std::function<double(double)>& g, double centre, double h,
                             int lo, int count) {
  std::vector<double> v;
  for (int j = lo; j < lo + count; ++j)
    v.push_back(cell_average(g, centre + (j - 0.5) * h, centre + (j + 0.5) * h));
  return v;
}

double weight_sum(const ReconstructionResult& r) {
  const auto w = r.weight_span();
  return std::accumulate(w.begin(), w.end(), 0.0);
}

ReconstructionConfig config(Family f, int p) { return ReconstructionConfig::make(f, p); }

std::vector<double> window(const ReconstructionConfig& c, const std::function<double(double)>& g,
                           double centre, double h) {
  return averages(g, centre, h, -c.left_extent(), c.stencil_size());
}

}  // namespace

TEST(Reconstruct, SubstencilValues) {
  const std::vector<double> ones{1.0, 1.0, 1.0};
  const auto a = substencil_values(ones, 1);
  EXPECT_DOUBLE_EQ(a[0], 1.0);
  EXPECT_DOUBLE_EQ(a[1], 1.0);
  const std::vector<double> lin{0.0, 2.0, 4.0};
  const auto b = substencil_values(lin, 1);
  EXPECT_DOUBLE_EQ(b[0], 3.0);
  EXPECT_DOUBLE_EQ(b[1], 3.0);
  const std::vector<double> step{0.0, 0.0, 0.0, 1.0, 1.0};
  EXPECT_DOUBLE_EQ(substencil_values(step, 2)[0], 0.0);
}

TEST(Reconstruct, SubstencilValuesMatchPolynomialOracle) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int p = 1; p <= 3; ++p) {
    std::vector<double> f(static_cast<std::size_t>(2 * p + 1));
    for (double& v : f) v = u(rng);
    const auto got = substencil_values(f, p);
    for (int s = 0; s <= p; ++s) {
      const std::vector<double> sub(f.begin() + s, f.begin() + s + p + 1);
      const auto c = average_polynomial(sub, -p + s);
      EXPECT_NEAR(got[s], static_cast<double>(eval_derivative(c, 0, 0.5L)), 1e-13);
    }
  }
}

TEST(Reconstruct, IdealWeights) {
  const auto w1 = ideal_weights(1);
  EXPECT_NEAR(w1[0], 1.0 / 3, 1e-16);
  EXPECT_NEAR(w1[1], 2.0 / 3, 1e-16);
  const auto w2 = ideal_weights(2);
  EXPECT_NEAR(w2[0], 0.1, 1e-16);
  EXPECT_NEAR(w2[1], 0.6, 1e-16);
  EXPECT_NEAR(w2[2], 0.3, 1e-16);
  const auto w3 = ideal_weights(3);
  const double want[] = {1.0 / 35, 12.0 / 35, 18.0 / 35, 4.0 / 35};
  for (int s = 0; s < 4; ++s) EXPECT_NEAR(w3[s], want[s], 1e-16);
}

TEST(Reconstruct, IdealWeightsReproduceFullStencil) {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int p = 1; p <= 3; ++p) {
    std::vector<double> f(static_cast<std::size_t>(2 * p + 1));
    for (double& v : f) v = u(rng);
    const auto vals = substencil_values(f, p);
    const auto w = ideal_weights(p);
    double combined = 0.0;
    for (int s = 0; s <= p; ++s) combined += w[s] * vals[s];
    const auto c = average_polynomial(f, -p);
    EXPECT_NEAR(combined, static_cast<double>(eval_derivative(c, 0, 0.5L)), 1e-13);
  }
}

TEST(Reconstruct, FastIndicators) {
  const std::vector<double> flat(5, 2.0);
  for (double v : fast_indicators(flat, 2)) EXPECT_EQ(v, 0.0);
  const std::vector<double> step{0.0, 0.0, 0.0, 1.0, 1.0};
  const auto i2 = fast_indicators(step, 2);
  EXPECT_EQ(i2, (std::vector<double>{0.0, 1.0, 1.0}));
  const std::vector<double> ramp{0.0, 1.0, 3.0};
  EXPECT_EQ(fast_indicators(ramp, 1), (std::vector<double>{1.0, 4.0}));
}

TEST(Reconstruct, JiangShuIndicators) {
  const std::vector<double> flat(7, -1.0);
  for (double v : jiang_shu_indicators(flat, 3)) EXPECT_NEAR(v, 0.0, 1e-15);
  const std::vector<double> ramp{0.0, 1.0, 3.0};
  const auto js = jiang_shu_indicators(ramp, 1);
  EXPECT_NEAR(js[0], 1.0, 1e-15);
  EXPECT_NEAR(js[1], 4.0, 1e-15);
}

TEST(Reconstruct, JiangShuMatchesClosedFormAndQuadrature) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> f(5);
    for (double& v : f) v = u(rng);
    const auto js = jiang_shu_indicators(f, 2);
    const double b0 = 13.0 / 12 * std::pow(f[0] - 2 * f[1] + f[2], 2) +
                      0.25 * std::pow(f[0] - 4 * f[1] + 3 * f[2], 2);
    const double b1 = 13.0 / 12 * std::pow(f[1] - 2 * f[2] + f[3], 2) +
                      0.25 * std::pow(f[1] - f[3], 2);
    const double b2 = 13.0 / 12 * std::pow(f[2] - 2 * f[3] + f[4], 2) +
                      0.25 * std::pow(3 * f[2] - 4 * f[3] + f[4], 2);
    EXPECT_NEAR(js[0], b0, 1e-13);
    EXPECT_NEAR(js[1], b1, 1e-13);
    EXPECT_NEAR(js[2], b2, 1e-13);
  }
  for (int p = 1; p <= 3; ++p)
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<double> f(static_cast<std::size_t>(2 * p + 1));
      for (double& v : f) v = u(rng);
      const auto js = jiang_shu_indicators(f, p);
      for (int s = 0; s <= p; ++s) {
        const std::vector<double> sub(f.begin() + s, f.begin() + s + p + 1);
        const double want = jiang_shu_oracle(sub, -p + s);
        EXPECT_NEAR(js[s], want, 1e-11 * (1.0 + want)) << "p=" << p << " s=" << s;
      }
    }
}

TEST(Reconstruct, Oweno3Examples) {
  const auto c = config(Family::oweno3, 1);
  const std::vector<double> flat(4, 2.5);
  EXPECT_DOUBLE_EQ(reconstruct(flat, c).value, 2.5);
  const std::vector<double> lin{-1.0, 0.0, 1.0, 2.0};
  EXPECT_NEAR(reconstruct(lin, c).value, 0.5, 1e-15);
  const std::vector<double> step{0.0, 0.0, 1.0, 1.0};
  const auto r = reconstruct(step, c);
  EXPECT_NEAR(r.value, 0.0, 1e-10);
  EXPECT_GE(r.weights[0], 1.0 - 1e-10);
}

TEST(Reconstruct, FowenoExamples) {
  const auto c = config(Family::foweno, 2);
  const std::vector<double> flat(5, -3.0);
  const auto r = reconstruct(flat, c);
  EXPECT_DOUBLE_EQ(r.value, -3.0);
  for (int s = 0; s <= 2; ++s) EXPECT_EQ(r.weights[s], c.ideal_weights[s]);
  const std::vector<double> step{0.0, 0.0, 0.0, 1.0, 1.0};
  const auto q = reconstruct(step, c);
  EXPECT_GE(q.weights[0], 1.0 - 1e-6);
  EXPECT_NEAR(q.value, 0.0, 1e-6);
}

TEST(Reconstruct, WenoJsExamples) {
  const auto c = config(Family::weno_js, 2);
  const std::vector<double> flat(5, 4.0);
  const auto r = reconstruct(flat, c);
  EXPECT_DOUBLE_EQ(r.value, 4.0);
  for (int s = 0; s <= 2; ++s) EXPECT_NEAR(r.weights[s], c.ideal_weights[s], 1e-15);
  const std::vector<double> step{0.0, 0.0, 0.0, 1.0, 1.0};
  EXPECT_GT(reconstruct(step, c).weights[0], 0.99);
}

TEST(Reconstruct, PolynomialExactness) {
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const std::vector<std::pair<Family, int>> ops{{Family::oweno3, 1}, {Family::weno_js, 1},
                                                {Family::weno_js, 2}, {Family::weno_js, 3},
                                                {Family::foweno, 2},  {Family::foweno, 3}};
  for (const auto& [fam, p] : ops) {
    const auto c = config(fam, p);
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<double> coef(static_cast<std::size_t>(p) + 1);
      for (double& v : coef) v = u(rng);
      auto g = [&](double x) {
        double s = 0.0;
        for (std::size_t n = coef.size(); n-- > 0;) s = s * x + coef[n];
        return s;
      };
      const double h = 0.3;
      const auto w = window(c, g, 0.0, h);
      const double exact = g(0.5 * h);
      EXPECT_NEAR(reconstruct(w, c).value, exact, 1e-12 * (1.0 + std::abs(exact)))
          << static_cast<int>(fam) << " p=" << p;
    }
  }
}

TEST(Reconstruct, WeightsNormalised) {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  std::bernoulli_distribution jump(0.3);
  const std::vector<std::pair<Family, int>> ops{{Family::oweno3, 1}, {Family::weno_js, 2},
                                                {Family::foweno, 2}, {Family::foweno, 3},
                                                {Family::weno_js, 3}};
  for (const auto& [fam, p] : ops) {
    const auto c = config(fam, p);
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<double> f(static_cast<std::size_t>(c.stencil_size()));
      double base = u(rng);
      for (double& v : f) v = jump(rng) ? (base = u(rng)) : base + 1e-3 * u(rng);
      const auto r = reconstruct(f, c);
      EXPECT_NEAR(weight_sum(r), 1.0, 1e-14);
      for (double w : r.weight_span()) EXPECT_GE(w, 0.0);
    }
  }
}

TEST(Reconstruct, SmoothLimitApproachesIdealWeights) {
  for (const auto& [fam, p] : std::vector<std::pair<Family, int>>{
           {Family::foweno, 2}, {Family::foweno, 3}, {Family::weno_js, 2}}) {
    const auto c = config(fam, p);
    double previous = 1e300;
    for (double h : {0.1, 0.05, 0.025}) {
      const auto w = window(c, [](double x) { return std::exp(x); }, 0.3, h);
      const auto r = reconstruct(w, c);
      double dev = 0.0;
      for (int s = 0; s <= p; ++s) dev = std::max(dev, std::abs(r.weights[s] - c.ideal_weights[s]));
      EXPECT_LE(dev, previous);
      previous = dev;
    }
  }
}

TEST(Reconstruct, NegativeIsMirror) {
  const auto c = config(Family::foweno, 2);
  const std::vector<double> flat(5, 1.5);
  EXPECT_DOUBLE_EQ(reconstruct_negative(flat, c).value, 1.5);
  const std::vector<double> step{1.0, 1.0, 0.0, 0.0, 0.0};
  const std::vector<double> mirrored{0.0, 0.0, 0.0, 1.0, 1.0};
  const auto a = reconstruct_negative(step, c);
  const auto b = reconstruct(mirrored, c);
  EXPECT_EQ(a.value, b.value);
  EXPECT_GE(a.weights[0], 1.0 - 1e-6);

  const auto o = config(Family::oweno3, 1);
  const std::vector<double> e{0.3, -1.0, 2.0, 0.7};
  const std::vector<double> e_rev{0.7, 2.0, -1.0, 0.3};
  EXPECT_EQ(reconstruct_negative(e, o).value, reconstruct(e_rev, o).value);
  EXPECT_EQ(reconstruct_negative(e_rev, o).value, reconstruct(e, o).value);
}

TEST(Reconstruct, LengthAndConfigErrors) {
  const std::vector<double> three(3, 0.0);
  EXPECT_THROW(reconstruct(three, config(Family::foweno, 2)), std::domain_error);
  EXPECT_THROW(fast_indicators(three, 2), std::domain_error);
  EXPECT_THROW(ReconstructionConfig::make(Family::oweno3, 2), std::invalid_argument);
  EXPECT_THROW(ReconstructionConfig::make(Family::foweno, 1), std::invalid_argument);
  auto c = config(Family::foweno, 2);
  c.a2 = 1.0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = config(Family::foweno, 2);
  c.ideal_weights[0] = 0.5;
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(Reconstruct, DiscriminantSwitch) {
  auto c = config(Family::foweno, 2);
  const std::vector<double> f{0.1, 0.4, 0.2, 0.9, 0.3};
  const double squared = reconstruct(f, c).value;
  c.discriminant = Discriminant::literal;
  const double literal = reconstruct(f, c).value;
  EXPECT_NE(squared, literal);
}

namespace {

// Interface value of the function whose cell averages are x^j, j <= 5.
double deconvolved_monomial(int j, double x, double h) {
  double t = std::pow(x, j);
  if (j >= 2) t -= h * h / 24.0 * j * (j - 1) * std::pow(x, j - 2);
  if (j >= 4) t += 7.0 * std::pow(h, 4) / 5760.0 * j * (j - 1) * (j - 2) * (j - 3) * std::pow(x, j - 4);
  return t;
}

}  // namespace

// Point values of x^j around the critical point x_i = 0, as the finite
// difference flux reconstruction sees them.
TEST(Reconstruct, OptimalOrderAtCriticalPoints) {
  struct Case {
    Family fam;
    int p;
    double min_order;
  };
  for (const Case& k : {Case{Family::oweno3, 1, 2.7}, Case{Family::foweno, 2, 4.6}})
    for (int j : {2, 3, 4}) {
      const auto c = config(k.fam, k.p);
      std::vector<double> e, hs;
      for (int level = 2; level <= 8; ++level) {
        const double h = std::ldexp(1.0, -level);
        std::vector<double> w;
        for (int s = -c.left_extent(); s <= c.right_extent(); ++s) w.push_back(std::pow(s * h, j));
        e.push_back(std::abs(reconstruct(w, c).value - deconvolved_monomial(j, 0.5 * h, h)));
        hs.push_back(h);
      }
      for (std::size_t i = 0; i + 1 < e.size(); ++i) {
        if (e[i + 1] <= 1e-12 * std::pow(hs[i + 1], j)) continue;
        EXPECT_GE(std::log2(e[i] / e[i + 1]), k.min_order)
            << "p=" << k.p << " j=" << j << " h=" << hs[i];
      }
    }
}
