#include "atweno/numdiff.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>
#include <vector>

using namespace atweno::numdiff;

namespace {

// Monomial exactness: sum_j w_j x_j^n = d^k/dx^k x^n at q, n < nodes.size().
std::vector<long double> vandermonde_weights(const std::vector<long double>& nodes, int k,
                                             long double q) {
  const std::size_t n = nodes.size();
  std::vector<std::vector<long double>> a(n, std::vector<long double>(n + 1, 0.0L));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) a[r][c] = std::pow(nodes[c], static_cast<long double>(r));
    long double rhs = 0.0L;
    if (static_cast<int>(r) >= k) {
      long double f = 1.0L;
      for (int t = 0; t < k; ++t) f *= static_cast<long double>(static_cast<int>(r) - t);
      rhs = f * std::pow(q, static_cast<long double>(static_cast<int>(r) - k));
    }
    a[r][n] = rhs;
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
  std::vector<long double> w(n);
  for (std::size_t r = 0; r < n; ++r) w[r] = a[r][n] / a[r][r];
  return w;
}

std::vector<long double> range_nodes(int lo, int hi) {
  std::vector<long double> v;
  for (int j = lo; j <= hi; ++j) v.push_back(j);
  return v;
}

void expect_weights(const CoefficientTable& t, const std::vector<double>& want) {
  ASSERT_EQ(t.size(), want.size());
  for (std::size_t j = 0; j < want.size(); ++j) EXPECT_NEAR(t.weights[j], want[j], 1e-15) << j;
}

}  // namespace

TEST(Numdiff, CenteredSmallTables) {
  expect_weights(centered_diff_coeffs(1, 0), {0.0, 1.0, 0.0});
  expect_weights(centered_diff_coeffs(1, 1), {-0.5, 0.0, 0.5});
  expect_weights(centered_diff_coeffs(1, 2), {1.0, -2.0, 1.0});
}

TEST(Numdiff, InterpolatorySmallTables) {
  expect_weights(interp_diff_coeffs(1, 0, Rational(1, 2)), {0.5, 0.5});
  expect_weights(interp_diff_coeffs(1, 1, Rational(1, 2)), {-1.0, 1.0});
  expect_weights(interp_diff_coeffs(2, 0, Rational(1, 2)),
                 {-1.0 / 16, 9.0 / 16, 9.0 / 16, -1.0 / 16});
}

TEST(Numdiff, CenteredMatchesVandermondeOracle) {
  for (int p = 1; p <= 4; ++p)
    for (int k = 0; k <= 2 * p; ++k) {
      const auto t = centered_diff_coeffs(p, k);
      const auto w = vandermonde_weights(range_nodes(-p, p), k, 0.0L);
      for (std::size_t j = 0; j < w.size(); ++j)
        EXPECT_NEAR(t.weights[j], static_cast<double>(w[j]), 1e-11 * (1.0 + std::abs(w[j])))
            << "p=" << p << " k=" << k << " j=" << j;
    }
}

TEST(Numdiff, InterpolatoryMatchesVandermondeOracle) {
  for (int p = 1; p <= 4; ++p)
    for (int k = 0; k < 2 * p; ++k)
      for (const Rational& q : {Rational(1, 2), Rational(0), Rational(-p + 1), Rational(p)}) {
        const auto t = interp_diff_coeffs(p, k, q);
        const auto w = vandermonde_weights(range_nodes(-p + 1, p), k,
                                           static_cast<long double>(static_cast<double>(q)));
        for (std::size_t j = 0; j < w.size(); ++j)
          EXPECT_NEAR(t.weights[j], static_cast<double>(w[j]), 1e-11 * (1.0 + std::abs(w[j])))
              << "p=" << p << " k=" << k << " q=" << q << " j=" << j;
      }
}

TEST(Numdiff, CenteredSymmetry) {
  for (int p = 1; p <= 4; ++p)
    for (int k = 0; k <= 2 * p; ++k) {
      const auto t = centered_diff_coeffs(p, k);
      const int n = static_cast<int>(t.size());
      for (int j = 0; j < n; ++j) {
        const auto a = t.exact[static_cast<std::size_t>(j)];
        const auto b = t.exact[static_cast<std::size_t>(n - 1 - j)];
        if (k % 2 == 0)
          EXPECT_EQ(a, b);
        else
          EXPECT_EQ(a, -b);
      }
    }
}

TEST(Numdiff, Apply) {
  const auto d1 = centered_diff_coeffs(1, 1);
  const std::vector<double> lin{0.0, 1.0, 2.0};
  EXPECT_DOUBLE_EQ(apply_centered(d1, lin, 1.0), 1.0);
  const std::vector<double> flat{1.0, 1.0, 1.0};
  EXPECT_DOUBLE_EQ(apply_centered(centered_diff_coeffs(1, 2), flat, 0.1), 0.0);
  const double h = 0.5;
  std::vector<double> cube;
  for (int j = -2; j <= 2; ++j) cube.push_back(std::pow(j * h, 3));
  EXPECT_NEAR(apply_centered(centered_diff_coeffs(2, 1), cube, h), 0.0, 1e-15);

  const std::vector<double> two{2.0, 4.0};
  EXPECT_DOUBLE_EQ(apply_interp(interp_diff_coeffs(1, 0, Rational(1, 2)), two, 1.0), 3.0);
  const std::vector<double> ones{1.0, 1.0, 1.0, 1.0};
  EXPECT_NEAR(apply_interp(interp_diff_coeffs(2, 0, Rational(1, 2)), ones, 1.0), 1.0, 1e-15);
  const std::vector<double> sq{1.0, 0.0, 1.0, 4.0};
  EXPECT_NEAR(apply_interp(interp_diff_coeffs(2, 1, Rational(0)), sq, 1.0), 0.0, 1e-15);
}

TEST(Numdiff, Errors) {
  EXPECT_THROW(centered_diff_coeffs(1, 3), std::domain_error);
  EXPECT_THROW(centered_diff_coeffs(0, 0), std::domain_error);
  EXPECT_THROW(interp_diff_coeffs(1, 2, Rational(0)), std::domain_error);
  EXPECT_THROW(interface_coeffs(2, 4), std::domain_error);
  const std::vector<double> two{1.0, 2.0};
  EXPECT_THROW(apply_centered(centered_diff_coeffs(1, 1), two, 1.0), std::domain_error);
  EXPECT_THROW(apply_centered(interp_diff_coeffs(1, 1, Rational(0)), two, 1.0),
               std::domain_error);
  const std::vector<double> three{1.0, 2.0, 3.0};
  EXPECT_THROW(apply_centered(centered_diff_coeffs(1, 1), three, 0.0), std::domain_error);
}

TEST(Numdiff, InterfaceWeightsTelescopeToCentered) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int p = 1; p <= 4; ++p)
    for (int k = 1; k <= 2 * p; ++k) {
      const auto d = centered_diff_coeffs(p, k);
      const auto b = interface_coeffs(p, k - 1);
      for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> f(static_cast<std::size_t>(2 * p + 1));
        for (double& v : f) v = u(rng);
        const double h = 0.1;
        const double lhs = apply_centered(d, f, h);
        const std::span<const double> all(f);
        const double right = apply_interp(b, all.subspan(1), h);
        const double left = apply_interp(b, all.first(2 * p), h);
        const double rhs = (right - left) / h;
        EXPECT_NEAR(lhs, rhs, 1e-12 * (1.0 + std::abs(lhs))) << "p=" << p << " k=" << k;
      }
    }
}

TEST(Numdiff, InterfaceMatchesInterpolatoryOnlyAtHighOrder) {
  for (int p = 1; p <= 4; ++p)
    for (int k = 0; k < 2 * p; ++k) {
      const auto b = interface_coeffs(p, k);
      const auto g = interp_diff_coeffs(p, k, Rational(1, 2));
      const bool same = b.exact == g.exact;
      EXPECT_EQ(same, k >= 2 * p - 2) << "p=" << p << " k=" << k;
    }
  expect_weights(interface_coeffs(2, 0), {-1.0 / 12, 7.0 / 12, 7.0 / 12, -1.0 / 12});
}

TEST(Numdiff, CsvDump) {
  const std::vector<CoefficientTable> t{centered_diff_coeffs(1, 1)};
  std::ostringstream os;
  write_csv(os, t);
  const std::string s = os.str();
  EXPECT_EQ(s.rfind("p,kind,k,q,j,weight\n", 0), 0u);
  EXPECT_NE(s.find("1,centered,1,0,"), std::string::npos);
}
