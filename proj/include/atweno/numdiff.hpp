#pragma once

/// \file numdiff.hpp
/// \brief Centered and interpolatory finite-difference formulas on uniform
/// nodes.
///
/// Three families are generated:
///
///   centered:      f^(k)(x_i)          ~ h^-k sum_{j=-p}^{p}   delta_j f_{i+j}
///   interpolatory: f^(k)(x_i + q h)    ~ h^-k sum_{j=-p+1}^{p} gamma_j f_{i+j}
///   interface:     h^-k sum_{j=-p+1}^{p} beta_j f_{i+j}, the flux whose
///                  difference reproduces the centered formula of order k+1:
///                  D^{k+1}_{p,i} = (B^k_{p,i} - B^k_{p,i-1}) / h
///
/// Centered and interpolatory weights are the derivatives of the Lagrange
/// basis on the node set, computed with Fornberg's recursion in exact rational
/// arithmetic and rounded to double only at the end. Interface weights are
/// partial sums of the centered ones; they coincide with the interpolatory
/// weights at q = 1/2 for k >= 2p - 2 and differ below that.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <iomanip>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace atweno::numdiff {

using Rational = boost::multiprecision::cpp_rational;

enum class Kind { centered, interpolatory, interface };

inline const char* to_string(Kind kind) {
  switch (kind) {
    case Kind::centered:
      return "centered";
    case Kind::interpolatory:
      return "interpolatory";
    case Kind::interface:
      return "interface";
  }
  return "?";
}

/// Weights of one differentiation formula. Node j of the formula sits at
/// offset `first_node + j` (in units of the step) from the base point.
struct CoefficientTable {
  int p = 0;
  Kind kind = Kind::centered;
  int k = 0;
  Rational q = 0;
  int first_node = 0;
  std::vector<Rational> exact;
  std::vector<double> weights;

  std::size_t size() const { return weights.size(); }
  int node(std::size_t j) const { return first_node + static_cast<int>(j); }
};

/// Fornberg's algorithm. Returns c[m][j], the weight of nodes[j] in the m-th
/// derivative at x0, for m = 0..max_order.
inline std::vector<std::vector<Rational>> lagrange_derivative_weights(
    std::span<const Rational> nodes, int max_order, const Rational& x0) {
  const std::size_t n = nodes.size();
  if (n == 0) throw std::domain_error("lagrange_derivative_weights: empty node set");
  std::vector<std::vector<Rational>> c(
      static_cast<std::size_t>(max_order) + 1, std::vector<Rational>(n, Rational(0)));
  Rational c1 = 1;
  Rational c4 = nodes[0] - x0;
  c[0][0] = 1;
  for (std::size_t i = 1; i < n; ++i) {
    const int mn = std::min(static_cast<int>(i), max_order);
    Rational c2 = 1;
    const Rational c5 = c4;
    c4 = nodes[i] - x0;
    for (std::size_t j = 0; j < i; ++j) {
      const Rational c3 = nodes[i] - nodes[j];
      if (c3 == 0) throw std::domain_error("lagrange_derivative_weights: repeated node");
      c2 *= c3;
      if (j == i - 1) {
        for (int m = mn; m >= 1; --m)
          c[m][i] = c1 * (Rational(m) * c[m - 1][i - 1] - c5 * c[m][i - 1]) / c2;
        c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
      }
      for (int m = mn; m >= 1; --m)
        c[m][j] = (c4 * c[m][j] - Rational(m) * c[m - 1][j]) / c3;
      c[0][j] = c4 * c[0][j] / c3;
    }
    c1 = c2;
  }
  return c;
}

namespace detail {

inline CoefficientTable make_table(int p, Kind kind, int k, const Rational& q,
                                   int first_node, int count) {
  std::vector<Rational> nodes;
  nodes.reserve(static_cast<std::size_t>(count));
  for (int j = 0; j < count; ++j) nodes.emplace_back(first_node + j);
  auto all = lagrange_derivative_weights(nodes, k, q);
  CoefficientTable t;
  t.p = p;
  t.kind = kind;
  t.k = k;
  t.q = q;
  t.first_node = first_node;
  t.exact = std::move(all[static_cast<std::size_t>(k)]);
  t.weights.reserve(t.exact.size());
  for (const auto& w : t.exact) t.weights.push_back(static_cast<double>(w));
  return t;
}

inline double inverse_power(double h, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r /= h;
  return r;
}

}  // namespace detail

/// Centered (2p+1)-point formula for the k-th derivative at node 0.
inline CoefficientTable centered_diff_coeffs(int p, int k) {
  if (p < 1) throw std::domain_error("centered_diff_coeffs: p must be >= 1");
  if (k < 0 || k > 2 * p)
    throw std::domain_error("centered_diff_coeffs: derivative order " + std::to_string(k) +
                            " not defined on " + std::to_string(2 * p + 1) + " nodes");
  return detail::make_table(p, Kind::centered, k, Rational(0), -p, 2 * p + 1);
}

/// Interpolatory 2p-point formula on nodes -p+1..p for the k-th derivative
/// at offset q.
inline CoefficientTable interp_diff_coeffs(int p, int k, const Rational& q) {
  if (p < 1) throw std::domain_error("interp_diff_coeffs: p must be >= 1");
  if (k < 0 || k >= 2 * p)
    throw std::domain_error("interp_diff_coeffs: derivative order " + std::to_string(k) +
                            " not defined on " + std::to_string(2 * p) + " nodes");
  return detail::make_table(p, Kind::interpolatory, k, q, -p + 1, 2 * p);
}

/// Interface 2p-point formula on nodes -p+1..p whose difference is the
/// centered (2p+1)-point formula for derivative k+1.
inline CoefficientTable interface_coeffs(int p, int k) {
  if (p < 1) throw std::domain_error("interface_coeffs: p must be >= 1");
  if (k < 0 || k >= 2 * p)
    throw std::domain_error("interface_coeffs: derivative order " + std::to_string(k) +
                            " not defined on " + std::to_string(2 * p) + " nodes");
  const CoefficientTable d = centered_diff_coeffs(p, k + 1);
  CoefficientTable t;
  t.p = p;
  t.kind = Kind::interface;
  t.k = k;
  t.q = Rational(1, 2);
  t.first_node = -p + 1;
  Rational sum = 0;
  for (int j = 0; j < 2 * p; ++j) {
    sum -= d.exact[static_cast<std::size_t>(j)];
    t.exact.push_back(sum);
    t.weights.push_back(static_cast<double>(sum));
  }
  return t;
}

inline double apply(const CoefficientTable& table, std::span<const double> values, double h) {
  if (values.size() != table.size())
    throw std::domain_error("numdiff: expected " + std::to_string(table.size()) +
                            " values, got " + std::to_string(values.size()));
  if (!(h > 0.0)) throw std::domain_error("numdiff: step must be positive");
  double sum = 0.0;
  for (std::size_t j = 0; j < values.size(); ++j) sum += table.weights[j] * values[j];
  return sum * detail::inverse_power(h, table.k);
}

inline double apply_centered(const CoefficientTable& table, std::span<const double> values,
                             double h) {
  if (table.kind != Kind::centered) throw std::domain_error("apply_centered: not a centered table");
  return apply(table, values, h);
}

inline double apply_interp(const CoefficientTable& table, std::span<const double> values,
                           double h) {
  if (table.kind == Kind::centered)
    throw std::domain_error("apply_interp: not a one-sided 2p-point table");
  return apply(table, values, h);
}

/// Debug dump: p,kind,k,q,j,weight with 17 significant digits.
inline void write_csv(std::ostream& os, std::span<const CoefficientTable> tables) {
  os << "p,kind,k,q,j,weight\n";
  const auto old_precision = os.precision(17);
  for (const auto& t : tables) {
    for (std::size_t j = 0; j < t.size(); ++j) {
      os << t.p << ',' << to_string(t.kind) << ',' << t.k << ',' << t.q << ',' << t.node(j) << ','
         << t.weights[j] << '\n';
    }
  }
  os.precision(old_precision);
}

}  // namespace atweno::numdiff
