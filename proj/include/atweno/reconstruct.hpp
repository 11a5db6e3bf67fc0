#pragma once

/// \file reconstruct.hpp
/// \brief Upwind-biased WENO reconstructions at the right interface x_{i+1/2}.
///
/// Grid values are treated as cell averages of a flux-primitive function
/// (the finite-difference flux-splitting setting), so every operator returns
/// an approximation of that primitive's derivative at x_{i+1/2}. Stencils are
/// passed left to right: element 0 is f_{i-p}, element p is f_i.
///
/// Families:
///   - weno_js: classical Jiang-Shu indicators and weights.
///   - oweno3:  third-order optimal weights on the extended stencil
///              f_{i-1}, f_i, f_{i+1}, f_{i+2}.
///   - foweno:  fast indicators combined with optimal weights, p >= 2.

#include "atweno/numdiff.hpp"
#include "atweno/opcount.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace atweno {

inline constexpr int kMaxHalfWidth = 3;
inline constexpr int kMaxSubstencils = kMaxHalfWidth + 1;
inline constexpr int kMaxStencil = 2 * kMaxHalfWidth + 2;

enum class Family { weno_js, oweno3, foweno };

/// How the FOWENO discriminant combines B_p with A_p C_p.
enum class Discriminant {
  squared,  // |B^2 - 4 A C|
  literal,  // |B - 4 A C|
};

struct ReconstructionConfig {
  Family family = Family::foweno;
  int p = 2;
  double epsilon = 1e-100;
  double a1 = 1.0;
  double a2 = 2.0;
  std::array<double, kMaxSubstencils> ideal_weights{};
  Discriminant discriminant = Discriminant::squared;

  int order() const { return 2 * p + 1; }
  int substencils() const { return p + 1; }
  /// Number of values the operator consumes.
  int stencil_size() const { return family == Family::oweno3 ? 4 : 2 * p + 1; }
  /// Cells used left and right of x_i by the positive reconstruction.
  int left_extent() const { return family == Family::oweno3 ? 1 : p; }
  int right_extent() const { return family == Family::oweno3 ? 2 : p; }

  void validate() const;

  /// Defaults: eps = 1e-6 for WENO-JS and 1e-100 otherwise, a1 = 1,
  /// a2 = ceil((p+1)/2).
  static ReconstructionConfig make(Family family, int p);
};

struct ReconstructionResult {
  double value = 0.0;
  std::array<double, kMaxSubstencils> weights{};
  int count = 0;

  std::span<const double> weight_span() const {
    return {weights.data(), static_cast<std::size_t>(count)};
  }
};

namespace detail {

using numdiff::Rational;

/// Coefficients of the interface value at +1/2 reconstructed from cell
/// averages on cells lo..hi (offsets relative to cell i).
inline std::vector<Rational> cell_average_interface_coeffs(int lo, int hi) {
  std::vector<Rational> nodes;
  for (int o = lo; o <= hi + 1; ++o) nodes.push_back(Rational(2 * o - 1, 2));
  const auto w = numdiff::lagrange_derivative_weights(nodes, 1, Rational(1, 2))[1];
  const int cells = hi - lo + 1;
  std::vector<Rational> coeff(static_cast<std::size_t>(cells), Rational(0));
  // The primitive at interface node n is the running sum of cells c < n.
  for (int c = 0; c < cells; ++c)
    for (std::size_t n = static_cast<std::size_t>(c) + 1; n < nodes.size(); ++n) coeff[c] += w[n];
  return coeff;
}

/// Jiang-Shu indicator of the cell-average polynomial on cells lo..hi,
/// sum_l int_{cell i} (d^l P / dxi^l)^2 dxi, as a quadratic form.
inline std::vector<std::vector<Rational>> jiang_shu_quadratic_form(int lo, int hi) {
  const int cells = hi - lo + 1;
  const int degree = cells - 1;
  std::vector<Rational> nodes;
  for (int o = lo; o <= hi + 1; ++o) nodes.push_back(Rational(2 * o - 1, 2));
  const auto d = numdiff::lagrange_derivative_weights(nodes, degree + 1, Rational(0));
  // taylor[n][c]: weight of cell c in V^(n)(0), V the primitive.
  std::vector<std::vector<Rational>> taylor(static_cast<std::size_t>(degree) + 2,
                                            std::vector<Rational>(cells, Rational(0)));
  for (int n = 0; n <= degree + 1; ++n)
    for (int c = 0; c < cells; ++c)
      for (std::size_t node = static_cast<std::size_t>(c) + 1; node < nodes.size(); ++node)
        taylor[n][c] += d[n][node];

  auto factorial = [](int n) {
    Rational r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
  };
  auto moment = [](int e) -> Rational {  // int_{-1/2}^{1/2} xi^e
    if (e % 2 != 0) return Rational(0);
    Rational half_pow = 1;
    for (int i = 0; i < e; ++i) half_pow /= 2;
    return half_pow / Rational(e + 1);
  };

  std::vector<std::vector<Rational>> m(cells, std::vector<Rational>(cells, Rational(0)));
  for (int l = 1; l <= degree; ++l) {
    // P^(l)(xi) = sum_a taylor[l+1+a] xi^a / a!
    const int terms = degree - l + 1;
    for (int a = 0; a < terms; ++a)
      for (int b = 0; b < terms; ++b) {
        const Rational scale = moment(a + b) / (factorial(a) * factorial(b));
        if (scale == 0) continue;
        for (int c = 0; c < cells; ++c)
          for (int e = 0; e < cells; ++e)
            m[c][e] += scale * taylor[l + 1 + a][c] * taylor[l + 1 + b][e];
      }
  }
  return m;
}

/// Sum-of-squares form beta = sum_l d_l (sum_{r>=l} L_rl f_r)^2 of a
/// positive-semidefinite quadratic form (LDL^T without pivoting).
struct SquaresForm {
  std::vector<double> scale;                // d_l
  std::vector<std::vector<double>> lower;   // lower[l][r - l - 1] = L_rl, r > l
};

inline SquaresForm ldl_squares(const std::vector<std::vector<Rational>>& m) {
  const std::size_t n = m.size();
  std::vector<std::vector<Rational>> l(n, std::vector<Rational>(n, Rational(0)));
  std::vector<Rational> d(n, Rational(0));
  SquaresForm out;
  for (std::size_t j = 0; j < n; ++j) {
    Rational dj = m[j][j];
    for (std::size_t t = 0; t < j; ++t) dj -= l[j][t] * l[j][t] * d[t];
    d[j] = dj;
    if (dj == 0) break;  // constants span the null space: only the last pivot vanishes
    l[j][j] = 1;
    for (std::size_t r = j + 1; r < n; ++r) {
      Rational v = m[r][j];
      for (std::size_t t = 0; t < j; ++t) v -= l[r][t] * l[j][t] * d[t];
      l[r][j] = v / dj;
    }
    out.scale.push_back(static_cast<double>(dj));
    std::vector<double> col;
    for (std::size_t r = j + 1; r < n; ++r) col.push_back(static_cast<double>(l[r][j]));
    out.lower.push_back(std::move(col));
  }
  return out;
}

struct ReconstructionTables {
  int p = 0;
  std::vector<std::vector<Rational>> substencil_exact;  // [s][j], j over cells -p+s..s
  std::vector<std::vector<double>> substencil;
  std::vector<Rational> ideal_exact;
  std::vector<double> ideal;
  std::vector<SquaresForm> jiang_shu;       // per substencil
  std::vector<double> delta_2p, delta_2p_1, delta_2p_2;
};

inline ReconstructionTables build_tables(int p) {
  ReconstructionTables t;
  t.p = p;
  for (int s = 0; s <= p; ++s) {
    auto c = cell_average_interface_coeffs(-p + s, s);
    std::vector<double> cd;
    for (const auto& v : c) cd.push_back(static_cast<double>(v));
    t.substencil_exact.push_back(std::move(c));
    t.substencil.push_back(std::move(cd));
    t.jiang_shu.push_back(ldl_squares(jiang_shu_quadratic_form(-p + s, s)));
  }
  // Ideal weights: match the full-stencil coefficients column by column;
  // only substencils s <= t touch stencil position t <= p.
  const auto full = cell_average_interface_coeffs(-p, p);
  for (int col = 0; col <= p; ++col) {
    Rational acc = full[col];
    for (int s = 0; s < col; ++s) acc -= t.ideal_exact[s] * t.substencil_exact[s][col - s];
    t.ideal_exact.push_back(acc / t.substencil_exact[col][0]);
  }
  for (const auto& c : t.ideal_exact) t.ideal.push_back(static_cast<double>(c));
  if (p >= 1) {
    t.delta_2p = numdiff::centered_diff_coeffs(p, 2 * p).weights;
    t.delta_2p_1 = numdiff::centered_diff_coeffs(p, 2 * p - 1).weights;
    t.delta_2p_2 = numdiff::centered_diff_coeffs(p, 2 * p - 2).weights;
  }
  return t;
}

inline const ReconstructionTables& tables(int p) {
  static const std::array<ReconstructionTables, kMaxHalfWidth> all = [] {
    std::array<ReconstructionTables, kMaxHalfWidth> a;
    for (int q = 1; q <= kMaxHalfWidth; ++q) a[q - 1] = build_tables(q);
    return a;
  }();
  if (p < 1 || p > kMaxHalfWidth)
    throw std::domain_error("reconstruction half-width must be in 1.." +
                            std::to_string(kMaxHalfWidth) + ", got " + std::to_string(p));
  return all[p - 1];
}

inline void check_length(std::size_t got, int want, const char* who) {
  if (got != static_cast<std::size_t>(want))
    throw std::domain_error(std::string(who) + ": expected " + std::to_string(want) +
                            " values, got " + std::to_string(got));
}

inline double power(double x, double e) {
  if (e == 1.0) return x;
  if (e == 2.0) return x * x;
  return std::pow(x, e);
}

}  // namespace detail

inline void ReconstructionConfig::validate() const {
  if (p < 1 || p > kMaxHalfWidth)
    throw std::invalid_argument("reconstruction: p must be in 1.." + std::to_string(kMaxHalfWidth));
  if (family == Family::oweno3 && p != 1)
    throw std::invalid_argument("reconstruction: OWENO3 requires p = 1");
  if (family == Family::foweno && p < 2)
    throw std::invalid_argument("reconstruction: FOWENO requires p >= 2 (use OWENO3 for p = 1)");
  if (!(epsilon > 0.0)) throw std::invalid_argument("reconstruction: epsilon must be positive");
  double sum = 0.0;
  for (int s = 0; s <= p; ++s) {
    if (!(ideal_weights[s] > 0.0))
      throw std::invalid_argument("reconstruction: ideal weights must be positive");
    sum += ideal_weights[s];
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("reconstruction: ideal weights must sum to 1");
  if (family == Family::foweno) {
    if (a1 < 1.0) throw std::invalid_argument("reconstruction: a1 must be >= 1");
    if (a2 < (p + 1) / (2.0 * a1))
      throw std::invalid_argument("reconstruction: a2 must be >= (p+1)/(2 a1)");
  }
}

inline ReconstructionConfig ReconstructionConfig::make(Family family, int p) {
  ReconstructionConfig c;
  c.family = family;
  c.p = p;
  c.epsilon = family == Family::weno_js ? 1e-6 : 1e-100;
  c.a1 = 1.0;
  c.a2 = std::ceil((p + 1) / 2.0);
  const auto& t = detail::tables(p);
  for (int s = 0; s <= p; ++s) c.ideal_weights[s] = t.ideal[s];
  c.validate();
  return c;
}

/// Linear ideal weights c_0..c_p.
inline std::vector<double> ideal_weights(int p) { return detail::tables(p).ideal; }

/// Interface values p_s(x_{i+1/2}) of the p+1 substencil reconstructions.
inline std::vector<double> substencil_values(std::span<const double> stencil, int p) {
  const auto& t = detail::tables(p);
  detail::check_length(stencil.size(), 2 * p + 1, "substencil_values");
  std::vector<double> out(static_cast<std::size_t>(p) + 1, 0.0);
  for (int s = 0; s <= p; ++s)
    for (int j = 0; j <= p; ++j) out[s] += t.substencil[s][j] * stencil[s + j];
  return out;
}

/// Fast indicators: I_s is the sum of squared first undivided differences
/// inside substencil s. The 2p squared differences are shared.
template <class Real>
void fast_indicators(std::span<const Real> stencil, int p, std::span<Real> out) {
  std::array<Real, 2 * kMaxHalfWidth> sq{};
  for (int j = 0; j < 2 * p; ++j) {
    const Real d = stencil[j + 1] - stencil[j];
    sq[j] = d * d;
  }
  for (int s = 0; s <= p; ++s) {
    Real sum = sq[s];
    for (int j = 1; j < p; ++j) sum += sq[s + j];
    out[s] = sum;
  }
}

inline std::vector<double> fast_indicators(std::span<const double> stencil, int p) {
  detail::check_length(stencil.size(), 2 * p + 1, "fast_indicators");
  std::vector<double> out(static_cast<std::size_t>(p) + 1);
  fast_indicators<double>(stencil, p, out);
  return out;
}

/// Jiang-Shu indicators, evaluated as weighted sums of squares.
template <class Real>
void jiang_shu_indicators(std::span<const Real> stencil, int p, std::span<Real> out) {
  const auto& t = detail::tables(p);
  for (int s = 0; s <= p; ++s) {
    const auto& form = t.jiang_shu[s];
    const Real* f = stencil.data() + s;
    Real beta = 0.0;
    for (std::size_t l = 0; l < form.scale.size(); ++l) {
      Real lin = f[l];
      for (std::size_t r = 0; r < form.lower[l].size(); ++r)
        lin += Real(form.lower[l][r]) * f[l + 1 + r];
      const Real term = Real(form.scale[l]) * (lin * lin);
      beta = l == 0 ? term : beta + term;
    }
    out[s] = beta;
  }
}

inline std::vector<double> jiang_shu_indicators(std::span<const double> stencil, int p) {
  detail::check_length(stencil.size(), 2 * p + 1, "jiang_shu_indicators");
  std::vector<double> out(static_cast<std::size_t>(p) + 1);
  jiang_shu_indicators<double>(stencil, p, out);
  return out;
}

/// Operation counts of one indicator evaluation (all substencils).
inline OpTally fast_indicator_op_count(int p) {
  std::array<Counted, 2 * kMaxHalfWidth + 1> st{};
  std::array<Counted, kMaxSubstencils> out{};
  for (int j = 0; j <= 2 * p; ++j) st[j] = Counted(j * 0.5);
  return count_operations([&] {
    fast_indicators<Counted>(std::span<const Counted>(st.data(), 2 * p + 1), p,
                             std::span<Counted>(out.data(), p + 1));
  });
}

inline OpTally jiang_shu_op_count(int p) {
  std::array<Counted, 2 * kMaxHalfWidth + 1> st{};
  std::array<Counted, kMaxSubstencils> out{};
  for (int j = 0; j <= 2 * p; ++j) st[j] = Counted(j * 0.5);
  return count_operations([&] {
    jiang_shu_indicators<Counted>(std::span<const Counted>(st.data(), 2 * p + 1), p,
                                  std::span<Counted>(out.data(), p + 1));
  });
}

/// Third-order optimal WENO on (f_{i-1}, f_i, f_{i+1}, f_{i+2}).
///
/// The preliminary weights are cross-indexed, w~_s = (I_{1-s} + eps) /
/// (I_0 + I_1 + 2 eps), so that the smoother substencil receives the larger
/// weight.
inline ReconstructionResult oweno3_reconstruct(std::span<const double> ext,
                                               const ReconstructionConfig& cfg) {
  detail::check_length(ext.size(), 4, "oweno3_reconstruct");
  const double fm1 = ext[0], f0 = ext[1], fp1 = ext[2], fp2 = ext[3];
  const double p0 = -0.5 * fm1 + 1.5 * f0;
  const double p1 = 0.5 * f0 + 0.5 * fp1;
  const double i0 = (f0 - fm1) * (f0 - fm1);
  const double i1 = (fp1 - f0) * (fp1 - f0);
  const double i2 = (fp2 - fp1) * (fp2 - fp1);
  const double eps = cfg.epsilon;
  const double denom = i0 + i1 + 2.0 * eps;
  const double w0_pre = (i1 + eps) / denom;
  const double w1_pre = (i0 + eps) / denom;
  const double jump = -fm1 + 3.0 * f0 - 3.0 * fp1 + fp2;
  const double tau = jump * jump * (i0 + i1 + i2);
  const double j = i0 * (i1 + i2) + (i0 + i1) * i2;
  const double corrector = j / (j + tau + eps);
  ReconstructionResult r;
  r.count = 2;
  r.weights[0] = corrector * cfg.ideal_weights[0] + (1.0 - corrector) * w0_pre;
  r.weights[1] = corrector * cfg.ideal_weights[1] + (1.0 - corrector) * w1_pre;
  r.value = r.weights[0] * p0 + r.weights[1] * p1;
  return r;
}

/// FOWENO(2p+1), p >= 2.
inline ReconstructionResult foweno_reconstruct(std::span<const double> stencil,
                                               const ReconstructionConfig& cfg) {
  const int p = cfg.p;
  const auto& t = detail::tables(p);
  detail::check_length(stencil.size(), 2 * p + 1, "foweno_reconstruct");
  std::array<double, kMaxSubstencils> ps{}, ind{};
  for (int s = 0; s <= p; ++s) {
    double v = 0.0;
    for (int j = 0; j <= p; ++j) v += t.substencil[s][j] * stencil[s + j];
    ps[s] = v;
  }
  fast_indicators<double>(stencil, p, std::span<double>(ind.data(), p + 1));

  double a = 0.0, b = 0.0, c = 0.0;
  for (int j = 0; j <= 2 * p; ++j) {
    a += t.delta_2p[j] * stencil[j];
    b += t.delta_2p_1[j] * stencil[j];
    c += t.delta_2p_2[j] * stencil[j];
  }
  a *= 0.5;
  const double disc = cfg.discriminant == Discriminant::squared ? std::abs(b * b - 4.0 * a * c)
                                                                : std::abs(b - 4.0 * a * c);
  const double tau = (2.0 * a) * (2.0 * a);
  const double ta = detail::power(tau, cfg.a1);
  const double da = detail::power(disc, cfg.a1);
  const double d = ta * da / (ta + da + cfg.epsilon);

  ReconstructionResult r;
  r.count = p + 1;
  if (d == 0.0) {
    for (int s = 0; s <= p; ++s) r.weights[s] = cfg.ideal_weights[s];
  } else {
    // alpha_s = c_s (1 + d / (I_s^a1 + eps))^a2, normalised by the largest
    // growth factor so that huge ratios cannot overflow.
    std::array<double, kMaxSubstencils> growth{};
    double gmax = 0.0;
    for (int s = 0; s <= p; ++s) {
      growth[s] = 1.0 + d / (detail::power(ind[s], cfg.a1) + cfg.epsilon);
      gmax = std::max(gmax, growth[s]);
    }
    double sum = 0.0;
    for (int s = 0; s <= p; ++s) {
      r.weights[s] = cfg.ideal_weights[s] * detail::power(growth[s] / gmax, cfg.a2);
      sum += r.weights[s];
    }
    for (int s = 0; s <= p; ++s) r.weights[s] /= sum;
  }
  double v = 0.0;
  for (int s = 0; s <= p; ++s) v += r.weights[s] * ps[s];
  r.value = v;
  return r;
}

inline ReconstructionResult weno_js_reconstruct(std::span<const double> stencil,
                                                const ReconstructionConfig& cfg) {
  const int p = cfg.p;
  const auto& t = detail::tables(p);
  detail::check_length(stencil.size(), 2 * p + 1, "weno_js_reconstruct");
  std::array<double, kMaxSubstencils> ind{};
  jiang_shu_indicators<double>(stencil, p, std::span<double>(ind.data(), p + 1));
  ReconstructionResult r;
  r.count = p + 1;
  double sum = 0.0;
  for (int s = 0; s <= p; ++s) {
    const double e = ind[s] + cfg.epsilon;
    r.weights[s] = cfg.ideal_weights[s] / (e * e);
    sum += r.weights[s];
  }
  double v = 0.0;
  for (int s = 0; s <= p; ++s) {
    r.weights[s] /= sum;
    double ps = 0.0;
    for (int j = 0; j <= p; ++j) ps += t.substencil[s][j] * stencil[s + j];
    v += r.weights[s] * ps;
  }
  r.value = v;
  return r;
}

inline ReconstructionResult reconstruct(std::span<const double> stencil,
                                        const ReconstructionConfig& cfg) {
  switch (cfg.family) {
    case Family::oweno3:
      return oweno3_reconstruct(stencil, cfg);
    case Family::foweno:
      return foweno_reconstruct(stencil, cfg);
    case Family::weno_js:
      break;
  }
  return weno_js_reconstruct(stencil, cfg);
}

/// Reconstruction for the left-going flux part: the same operator applied to
/// the stencil reflected about x_{i+1/2}. The input is given in grid order;
/// for OWENO3 it is (f_{i-1}, f_i, f_{i+1}, f_{i+2}), otherwise
/// (f_{i+1-p}, ..., f_{i+1+p}).
inline ReconstructionResult reconstruct_negative(std::span<const double> stencil,
                                                 const ReconstructionConfig& cfg) {
  detail::check_length(stencil.size(), cfg.stencil_size(), "reconstruct_negative");
  std::array<double, kMaxStencil> mirrored{};
  const std::size_t n = stencil.size();
  for (std::size_t j = 0; j < n; ++j) mirrored[j] = stencil[n - 1 - j];
  return reconstruct(std::span<const double>(mirrored.data(), n), cfg);
}

}  // namespace atweno
