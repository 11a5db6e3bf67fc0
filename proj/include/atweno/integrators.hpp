#pragma once

/// \file integrators.hpp
/// \brief Time stepping for u_t + f(u)_x = 0: SSPRK3, SSPRK(10,4), and the
/// approximate Taylor methods LAT and CAT coupled with WENO interface fluxes.
///
/// All updates are written in conservative form
///
///   u_i^{n+1} = u_i^n - dt/dx (F_{i+1/2} - F_{i-1/2}).
///
/// For LAT the k-th term of the Taylor series is a centred first derivative
/// of a global approximation of d_t^{k-1} f, which is rewritten as the
/// difference of interface values B^0_p; for CAT each interface runs its own
/// local recursion on the 2p cells around it.

#include "atweno/grid.hpp"
#include "atweno/models.hpp"
#include "atweno/numdiff.hpp"
#include "atweno/reconstruct.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace atweno {

enum class TimeIntegrator { ssprk3, ssprk104, lat, cat };

/// How the k = 1 Taylor term is approximated. `centered` disables the WENO
/// flux and uses the plain interpolatory/centred formula (linear analysis).
enum class FirstDerivative { weno, centered };

/// How CAT uses the WENO flux: `weno_derivative` replaces the k = 1 term of
/// the numerical flux and also seeds the local recursion with the WENO u_t
/// at every stencil node; `flux` replaces the k = 1 term only, which is
/// unstable for CFL numbers close to 1.
enum class CatCoupling { flux, weno_derivative };

inline constexpr int kMaxTaylorDegree = 7;

struct SchemeConfig {
  TimeIntegrator integrator = TimeIntegrator::ssprk3;
  int taylor_degree = 0;  // m, LAT and CAT
  int half_width = 0;     // p of the CAT stencil; m = 2p
  double cfl = 0.5;
  ReconstructionConfig recon = ReconstructionConfig::make(Family::foweno, 2);
  FirstDerivative first_derivative = FirstDerivative::weno;
  CatCoupling cat_coupling = CatCoupling::weno_derivative;

  static SchemeConfig ssprk3(ReconstructionConfig r, double cfl) {
    return {TimeIntegrator::ssprk3, 0, 0, cfl, r, FirstDerivative::weno};
  }
  static SchemeConfig ssprk104(ReconstructionConfig r, double cfl) {
    return {TimeIntegrator::ssprk104, 0, 0, cfl, r, FirstDerivative::weno};
  }
  static SchemeConfig lat(int m, ReconstructionConfig r, double cfl) {
    return {TimeIntegrator::lat, m, 0, cfl, r, FirstDerivative::weno};
  }
  static SchemeConfig cat(int p, ReconstructionConfig r, double cfl) {
    return {TimeIntegrator::cat, 2 * p, p, cfl, r, FirstDerivative::weno};
  }

  /// Half-width of the temporal centred formulas of LAT, ceil((m-1)/2).
  int lat_time_half_width() const { return taylor_degree / 2; }
  /// Half-width of the spatial formulas of LAT for the k-th derivative,
  /// ceil((m+1-k)/2).
  int lat_space_half_width(int k) const { return (taylor_degree + 2 - k) / 2; }

  /// Ghost cells needed by one step.
  int ghost_width() const {
    const int pr = recon.p;
    switch (integrator) {
      case TimeIntegrator::ssprk3:
      case TimeIntegrator::ssprk104:
        return pr + 1;
      case TimeIntegrator::cat:
        return pr + 2 * half_width;
      case TimeIntegrator::lat: {
        int w = pr + 1;
        for (int k = 1; k <= taylor_degree - 1; ++k) w += (taylor_degree + 2 - k) / 2;
        // The centred first-derivative variant needs ceil(m/2) at level one.
        return std::max(w, lat_space_half_width(1) + w - (pr + 1));
      }
    }
    return pr + 1;
  }

  void validate() const {
    recon.validate();
    if (!(cfl > 0.0)) throw std::invalid_argument("scheme: CFL number must be positive");
    if (integrator == TimeIntegrator::cat) {
      if (half_width < 1 || half_width > 3)
        throw std::invalid_argument("scheme: CAT half-width must be in 1..3");
      if (taylor_degree != 2 * half_width)
        throw std::invalid_argument("scheme: CAT requires m = 2p");
    }
    if (integrator == TimeIntegrator::lat &&
        (taylor_degree < 1 || taylor_degree > kMaxTaylorDegree))
      throw std::invalid_argument("scheme: LAT degree must be in 1.." +
                                  std::to_string(kMaxTaylorDegree));
  }
};

struct StepCounters {
  long long steps = 0;
  long long rhs_evaluations = 0;
  long long flux_evaluations = 0;
  long long fallbacks = 0;
};

// ---------------------------------------------------------------------------
// State arithmetic shared by scalar (double) and system (std::array) states.

namespace detail {

template <class S>
S lincomb(double a, const S& x, double b, const S& y) {
  if constexpr (std::is_floating_point_v<S>) {
    return a * x + b * y;
  } else {
    S r;
    for (std::size_t c = 0; c < r.size(); ++c) r[c] = a * x[c] + b * y[c];
    return r;
  }
}

template <class S>
S zero_state() {
  if constexpr (std::is_floating_point_v<S>) {
    return 0.0;
  } else {
    S r;
    r.fill(0.0);
    return r;
  }
}

template <class S>
S nan_state() {
  if constexpr (std::is_floating_point_v<S>) {
    return std::numeric_limits<double>::quiet_NaN();
  } else {
    S r;
    r.fill(std::numeric_limits<double>::quiet_NaN());
    return r;
  }
}

template <class S>
bool all_finite(const S& s) {
  if constexpr (std::is_floating_point_v<S>) {
    return std::isfinite(s);
  } else {
    for (double v : s)
      if (!std::isfinite(v)) return false;
    return true;
  }
}

template <class S>
void add_scaled(S& acc, double w, const S& x) {
  if constexpr (std::is_floating_point_v<S>) {
    acc += w * x;
  } else {
    for (std::size_t c = 0; c < acc.size(); ++c) acc[c] += w * x[c];
  }
}

}  // namespace detail

/// Three-stage third-order Shu-Osher SSP Runge-Kutta step. `rhs(u, k)`
/// writes L(u) into k and may refresh ghost entries of u.
template <class S, class Rhs>
void ssprk3_step(std::vector<S>& u, double dt, Rhs&& rhs) {
  const std::size_t n = u.size();
  std::vector<S> k(n), stage(n);
  rhs(u, k);
  for (std::size_t i = 0; i < n; ++i) stage[i] = detail::lincomb(1.0, u[i], dt, k[i]);
  rhs(stage, k);
  for (std::size_t i = 0; i < n; ++i)
    stage[i] = detail::lincomb(0.75, u[i], 0.25, detail::lincomb(1.0, stage[i], dt, k[i]));
  rhs(stage, k);
  for (std::size_t i = 0; i < n; ++i)
    u[i] = detail::lincomb(1.0 / 3.0, u[i], 2.0 / 3.0, detail::lincomb(1.0, stage[i], dt, k[i]));
}

/// Ten-stage fourth-order low-storage SSP Runge-Kutta step (Ketcheson's
/// SSPRK(10,4), SSP coefficient 6).
template <class S, class Rhs>
void ssprk104_step(std::vector<S>& u, double dt, Rhs&& rhs) {
  const std::size_t n = u.size();
  std::vector<S> q1 = u, q2 = u, k(n);
  auto euler = [&](double h) {
    rhs(q1, k);
    for (std::size_t i = 0; i < n; ++i) q1[i] = detail::lincomb(1.0, q1[i], h, k[i]);
  };
  for (int s = 0; s < 5; ++s) euler(dt / 6.0);
  for (std::size_t i = 0; i < n; ++i) {
    q2[i] = detail::lincomb(1.0 / 25.0, q2[i], 9.0 / 25.0, q1[i]);
    q1[i] = detail::lincomb(15.0, q2[i], -5.0, q1[i]);
  }
  for (int s = 0; s < 4; ++s) euler(dt / 6.0);
  rhs(q1, k);
  for (std::size_t i = 0; i < n; ++i)
    u[i] = detail::lincomb(1.0, q2[i], 1.0, detail::lincomb(3.0 / 5.0, q1[i], dt / 10.0, k[i]));
}

// ---------------------------------------------------------------------------
// Coefficient tables of the Taylor methods.

struct LatTables {
  int m = 0;
  int time_p = 0;
  std::vector<int> space_p;                   // [k], k = 1..m
  std::vector<std::vector<double>> time;      // [k], centred delta^{k-1}, k = 2..m
  std::vector<std::vector<double>> midpoint;  // [k], interface weights B^0_{p_k}

  static LatTables build(const SchemeConfig& s) {
    LatTables t;
    t.m = s.taylor_degree;
    t.time_p = std::max(1, s.lat_time_half_width());
    t.space_p.assign(static_cast<std::size_t>(t.m) + 1, 0);
    t.time.resize(static_cast<std::size_t>(t.m) + 1);
    t.midpoint.resize(static_cast<std::size_t>(t.m) + 1);
    for (int k = 1; k <= t.m; ++k) {
      t.space_p[k] = std::max(1, s.lat_space_half_width(k));
      t.midpoint[k] = numdiff::interface_coeffs(t.space_p[k], 0).weights;
      if (k >= 2) t.time[k] = numdiff::centered_diff_coeffs(t.time_p, k - 1).weights;
    }
    return t;
  }
};

struct CatTables {
  int p = 0;
  int m = 0;
  std::vector<std::vector<double>> slope;  // [j][r]: gamma^{1,j}, node j = -p+1..p
  std::vector<std::vector<double>> time;   // [k]: gamma^{k-1,0}, k = 2..m
  std::vector<double> midpoint;            // interface weights B^0_p

  static CatTables build(int p) {
    CatTables t;
    t.p = p;
    t.m = 2 * p;
    for (int j = -p + 1; j <= p; ++j)
      t.slope.push_back(numdiff::interp_diff_coeffs(p, 1, numdiff::Rational(j)).weights);
    t.time.resize(static_cast<std::size_t>(t.m) + 1);
    for (int k = 2; k <= t.m; ++k)
      t.time[k] = numdiff::interp_diff_coeffs(p, k - 1, numdiff::Rational(0)).weights;
    t.midpoint = numdiff::interface_coeffs(p, 0).weights;
    return t;
  }
};

namespace detail {

inline double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

/// Taylor prediction u + sum_{l=1}^{k-1} (r dt)^l / l! ut[l].
template <class S, class Levels>
S taylor_predict(const S& u, const Levels& ut, int levels, double r_dt) {
  S s = u;
  double c = 1.0;
  for (int l = 1; l <= levels; ++l) {
    c *= r_dt / l;
    add_scaled(s, c, ut[l]);
  }
  return s;
}

}  // namespace detail

/// High-order part of the CAT flux, sum_{k=2}^{m} dt^{k-1}/k! A^{0,1/2}
/// applied to the local flux time derivatives, on the 2p states
/// u_{i-p+1..i+p}. Inadmissible Taylor predictions yield NaN components.
template <FluxModel Model>
typename Model::state_type cat_correction(const Model& model,
                                          std::span<const typename Model::state_type> local,
                                          double dt, double dx, const CatTables& t,
                                          StepCounters* counters = nullptr,
                                          const typename Model::state_type* level_one = nullptr) {
  using S = typename Model::state_type;
  const int np = 2 * t.p;
  std::array<S, 6> ft{}, ft_next{};
  std::array<std::array<S, 6>, kMaxTaylorDegree> ut{};  // ut[l][j]
  long long flux_evals = 0;
  for (int j = 0; j < np; ++j) {
    ft[j] = model.admissible(local[j]) ? model.flux(local[j]) : detail::nan_state<S>();
    ++flux_evals;
  }
  S corr = detail::zero_state<S>();
  double dt_pow = 1.0;
  for (int k = 2; k <= t.m; ++k) {
    for (int j = 0; j < np; ++j) {
      S d = detail::zero_state<S>();
      for (int r = 0; r < np; ++r) detail::add_scaled(d, t.slope[j][r], ft[r]);
      ut[k - 1][j] = detail::lincomb(-1.0 / dx, d, 0.0, d);
    }
    if (k == 2 && level_one)
      for (int j = 0; j < np; ++j) ut[1][j] = level_one[j];
    dt_pow *= dt;
    const auto& tw = t.time[k];
    for (int j = 0; j < np; ++j) {
      std::array<S, kMaxTaylorDegree> levels{};
      for (int l = 1; l < k; ++l) levels[l] = ut[l][j];
      S acc = detail::zero_state<S>();
      for (int r = 0; r < np; ++r) {
        const double offset = (r - t.p + 1) * dt;
        const S s = detail::taylor_predict(local[j], levels, k - 1, offset);
        const S f = model.admissible(s) ? model.flux(s) : detail::nan_state<S>();
        ++flux_evals;
        detail::add_scaled(acc, tw[r], f);
      }
      ft_next[j] = detail::lincomb(1.0 / dt_pow, acc, 0.0, acc);
    }
    S mid = detail::zero_state<S>();
    for (int j = 0; j < np; ++j) detail::add_scaled(mid, t.midpoint[j], ft_next[j]);
    detail::add_scaled(corr, dt_pow / detail::factorial(k), mid);
    ft = ft_next;
  }
  if (counters) counters->flux_evaluations += flux_evals;
  return corr;
}

/// CAT numerical flux F^p_{i+1/2} = first + high-order correction, where
/// `first` is the WENO interface flux (or, for the linear analysis, the
/// centred interface value B^0_p of f). Falls back to `first` alone when the Taylor
/// predictions leave the admissible set.
template <FluxModel Model>
typename Model::state_type cat_flux(const Model& model,
                                    std::span<const typename Model::state_type> local,
                                    const typename Model::state_type& first, double dt, double dx,
                                    const CatTables& t, StepCounters* counters = nullptr,
                                    const typename Model::state_type* level_one = nullptr) {
  const auto corr = cat_correction(model, local, dt, dx, t, counters, level_one);
  if (!detail::all_finite(corr)) {
    if (counters) ++counters->fallbacks;
    return first;
  }
  return detail::lincomb(1.0, first, 1.0, corr);
}

/// Scratch arrays for `weno_line_fluxes`.
template <class S>
struct LineWorkspace {
  std::vector<S> plus, minus;
};

/// Cells on each side of an interface that its WENO flux reads.
inline int weno_reach_left(const ReconstructionConfig& r) {
  return std::max(r.left_extent(), r.right_extent() - 1);
}
inline int weno_reach_right(const ReconstructionConfig& r) {
  return std::max(r.right_extent(), r.left_extent() + 1);
}

/// WENO interface fluxes along one grid line in direction `axis`:
/// out[i - first] = \hat f_{i+1/2} for i = first..last, with global
/// Lax-Friedrichs splitting at speed `alpha`. Cell c lives at line[c + offset].
/// Returns the number of physical flux evaluations.
template <FluxModel Model>
long long weno_line_fluxes(const Model& model, const ReconstructionConfig& r, int axis,
                           std::span<const typename Model::state_type> line, int offset,
                           double alpha, int first, int last,
                           std::vector<typename Model::state_type>& out,
                           LineWorkspace<typename Model::state_type>& ws, double time = 0.0) {
  using S = typename Model::state_type;
  constexpr int M = Model::components;
  const int lo = first - weno_reach_left(r), hi = last + weno_reach_right(r);
  ws.plus.resize(line.size());
  ws.minus.resize(line.size());
  for (int c = lo; c <= hi; ++c) {
    const S& u = line[static_cast<std::size_t>(c + offset)];
    if (!model.admissible(u))
      throw AdmissibilityError(std::vector<double>(u.begin(), u.end()), c, time);
    const auto [fp, fm] = lax_friedrichs_split(u, model.flux(u, axis), alpha);
    ws.plus[static_cast<std::size_t>(c + offset)] = fp;
    ws.minus[static_cast<std::size_t>(c + offset)] = fm;
  }
  out.resize(static_cast<std::size_t>(last - first + 1));
  const int left = r.left_extent(), right = r.right_extent();
  const int n = left + right + 1;
  std::array<double, kMaxStencil> pos{}, neg{};
  for (int i = first; i <= last; ++i) {
    S fhat;
    for (int comp = 0; comp < M; ++comp) {
      for (int j = 0; j < n; ++j) {
        pos[j] = ws.plus[static_cast<std::size_t>(i - left + j + offset)][comp];
        // Mirrored about x_{i+1/2}.
        neg[j] = ws.minus[static_cast<std::size_t>(i + 1 + left - j + offset)][comp];
      }
      const double vp = reconstruct(std::span<const double>(pos.data(), n), r).value;
      const double vm = reconstruct(std::span<const double>(neg.data(), n), r).value;
      fhat[comp] = vp + vm;
    }
    out[static_cast<std::size_t>(i - first)] = fhat;
  }
  return hi - lo + 1;
}

/// Time step from the CFL rule: dt = cfl dx / alpha, capped at `remaining`.
inline double cfl_dt(double alpha, double dx, double cfl, double remaining) {
  if (!(alpha > 0.0)) return remaining;
  return std::min(cfl * dx / alpha, remaining);
}

enum class RunStatus { completed, diverged, inadmissible };

inline const char* to_string(RunStatus s) {
  switch (s) {
    case RunStatus::completed:
      return "completed";
    case RunStatus::diverged:
      return "diverged";
    case RunStatus::inadmissible:
      return "inadmissible";
  }
  return "?";
}

struct AdvanceResult {
  RunStatus status = RunStatus::completed;
  long long steps = 0;
  std::string message;
};

/// Interior blow-up threshold used to flag unstable runs.
inline constexpr double kDivergenceBound = 1e6;

/// One-dimensional finite-difference solver on a fixed grid.
template <FluxModel Model>
class Solver1D {
 public:
  using S = typename Model::state_type;
  static constexpr int M = Model::components;

  Solver1D(Model model, SchemeConfig scheme, Axis axis, Boundary bc)
      : model_(model), scheme_(scheme), axis_(axis), bc_(bc) {
    scheme_.validate();
    axis_.validate();
    if (axis_.ghost < scheme_.ghost_width())
      throw std::invalid_argument("solver: axis has " + std::to_string(axis_.ghost) +
                                  " ghost cells, scheme needs " +
                                  std::to_string(scheme_.ghost_width()));
    if (scheme_.integrator == TimeIntegrator::lat) lat_ = LatTables::build(scheme_);
    if (scheme_.integrator == TimeIntegrator::cat) cat_ = CatTables::build(scheme_.half_width);
    ext_left_ = weno_reach_left(scheme_.recon);
    ext_right_ = weno_reach_right(scheme_.recon);
  }

  const Model& model() const { return model_; }
  const SchemeConfig& scheme() const { return scheme_; }
  const Axis& axis() const { return axis_; }
  Boundary boundary() const { return bc_; }
  const StepCounters& counters() const { return counters_; }
  void reset_counters() { counters_ = {}; }

  Field1D<S> make_field() const { return Field1D<S>(axis_); }

  /// Global Lax-Friedrichs speed over every cell, ghosts included.
  double max_speed(std::span<const S> data) const {
    double alpha = 0.0;
    for (std::size_t c = 0; c < data.size(); ++c) {
      if (!model_.admissible(data[c])) raise(data[c], static_cast<int>(c) - axis_.ghost);
      alpha = std::max(alpha, model_.wave_speed(data[c]));
    }
    return alpha;
  }

  double stable_dt(Field1D<S>& u, double remaining) const {
    fill_ghosts(u, bc_);
    return cfl_dt(max_speed(u.data), axis_.dx(), scheme_.cfl, remaining);
  }

  /// WENO interface fluxes \hat f_{i+1/2} for i = first..last. Ghosts of
  /// `data` must be filled.
  void interface_fluxes(const std::vector<S>& data, double alpha, int first, int last,
                        std::vector<S>& out) {
    counters_.flux_evaluations +=
        weno_line_fluxes(model_, scheme_.recon, 0, std::span<const S>(data), axis_.ghost, alpha,
                         first, last, out, line_ws_, time_hint_);
  }

  /// Semi-discrete operator L(u)_i = -(\hat f_{i+1/2} - \hat f_{i-1/2}) / dx
  /// on interior cells; ghost entries of `out` are zero.
  void rhs(std::vector<S>& data, std::vector<S>& out) {
    fill(data);
    const double alpha = max_speed(data);
    interface_fluxes(data, alpha, -1, axis_.cells - 1, fhat_);
    out.assign(data.size(), detail::zero_state<S>());
    const double inv_dx = 1.0 / axis_.dx();
    for (int i = 0; i < axis_.cells; ++i)
      at(out, i) = detail::lincomb(-inv_dx, fhat_[i + 1], inv_dx, fhat_[i]);
    ++counters_.rhs_evaluations;
  }

  /// Advances `u` by dt (ghosts are refreshed from u^n internally).
  void step(Field1D<S>& u, double dt) {
    time_hint_ = u.time;
    auto op = [this](std::vector<S>& d, std::vector<S>& k) { rhs(d, k); };
    switch (scheme_.integrator) {
      case TimeIntegrator::ssprk3:
        ssprk3_step(u.data, dt, op);
        break;
      case TimeIntegrator::ssprk104:
        ssprk104_step(u.data, dt, op);
        break;
      case TimeIntegrator::lat:
        lat_step(u.data, dt);
        break;
      case TimeIntegrator::cat:
        cat_step(u.data, dt);
        break;
    }
    fill(u.data);
    u.time += dt;
    ++counters_.steps;
  }

  /// Numerical fluxes F_{i+1/2}, i = -1..N-1, of one LAT step from u^n.
  void lat_fluxes(std::vector<S>& data, double dt, std::vector<S>& flux) {
    fill(data);
    const int n = axis_.cells;
    const double dx = axis_.dx();
    const int g = axis_.ghost;
    const int m = lat_.m;
    const int extent = axis_.extent();
    if (static_cast<int>(ut_.size()) < m + 1) ut_.resize(static_cast<std::size_t>(m) + 1);
    for (auto& v : ut_) v.resize(static_cast<std::size_t>(extent));

    // Level one: WENO (or centred) interface values and u_t.
    int lo, hi;
    std::vector<S>& first = level_flux_;
    if (scheme_.first_derivative == FirstDerivative::weno) {
      const double alpha = max_speed(data);
      interface_fluxes(data, alpha, -g + ext_left_, n - 1 + g - ext_right_, first);
      lo = -g + ext_left_ + 1;
      hi = n - 1 + g - ext_right_;
      iface_lo_ = -g + ext_left_;
    } else {
      f0_.resize(data.size());
      for (int c = -g; c < n + g; ++c) {
        if (!model_.admissible(at(data, c))) raise(at(data, c), c);
        at(f0_, c) = model_.flux(at(data, c));
      }
      counters_.flux_evaluations += extent;
      const int q = lat_.space_p[1];
      midpoint_values(f0_, -g, n - 1 + g, lat_.midpoint[1], q, first);
      iface_lo_ = -g + q - 1;
      lo = -g + q;
      hi = n - 1 + g - q;
    }
    differentiate(first, iface_lo_, lo, hi, dx, ut_[1]);

    flux.assign(static_cast<std::size_t>(n + 1), detail::zero_state<S>());
    for (int i = -1; i < n; ++i) flux[i + 1] = first[i - iface_lo_];

    std::vector<S> corr(static_cast<std::size_t>(n + 1), detail::zero_state<S>());
    ft_.resize(data.size());
    const int tp = lat_.time_p;
    std::array<S, kMaxTaylorDegree> levels{};
    double dt_pow = 1.0;
    for (int k = 2; k <= m; ++k) {
      dt_pow *= dt;
      // f~^(k-1) on cells lo..hi from Taylor predictions at r dt, r = -tp..tp.
      const auto& tw = lat_.time[k];
      for (int c = lo; c <= hi; ++c) {
        for (int l = 1; l < k; ++l) levels[l] = at(ut_[l], c);
        S acc = detail::zero_state<S>();
        for (int r = -tp; r <= tp; ++r) {
          const S s = detail::taylor_predict(at(data, c), levels, k - 1, r * dt);
          const S f = model_.admissible(s) ? model_.flux(s) : detail::nan_state<S>();
          detail::add_scaled(acc, tw[r + tp], f);
        }
        at(ft_, c) = detail::lincomb(1.0 / dt_pow, acc, 0.0, acc);
      }
      counters_.flux_evaluations += static_cast<long long>(hi - lo + 1) * (2 * tp + 1);

      const int q = lat_.space_p[k];
      midpoint_values(ft_, lo, hi, lat_.midpoint[k], q, level_g_);
      const int glo = lo + q - 1;
      for (int i = -1; i < n; ++i)
        detail::add_scaled(corr[i + 1], dt_pow / detail::factorial(k), level_g_[i - glo]);
      if (k < m) {
        differentiate(level_g_, glo, lo + q, hi - q, dx, ut_[k]);
        lo += q;
        hi -= q;
      }
    }
    for (int i = 0; i <= n; ++i) {
      if (detail::all_finite(corr[i])) {
        flux[i] = detail::lincomb(1.0, flux[i], 1.0, corr[i]);
      } else {
        ++counters_.fallbacks;
      }
    }
  }

  void lat_step(std::vector<S>& data, double dt) {
    lat_fluxes(data, dt, step_flux_);
    conservative_update(data, dt, step_flux_);
  }

  /// Numerical fluxes F_{i+1/2}, i = -1..N-1, of one CAT step from u^n.
  void cat_fluxes(std::vector<S>& data, double dt, std::vector<S>& flux) {
    fill(data);
    const int n = axis_.cells;
    const int p = cat_.p;
    const double dx = axis_.dx();
    if (scheme_.first_derivative == FirstDerivative::weno) {
      const double alpha = max_speed(data);
      interface_fluxes(data, alpha, -1, n - 1, flux);
    } else {
      flux.assign(static_cast<std::size_t>(n + 1), detail::zero_state<S>());
      for (int i = -1; i < n; ++i) {
        S mid = detail::zero_state<S>();
        for (int j = 0; j < 2 * p; ++j) {
          const S& u = at(data, i - p + 1 + j);
          if (!model_.admissible(u)) raise(u, i - p + 1 + j);
          detail::add_scaled(mid, cat_.midpoint[j], model_.flux(u));
        }
        counters_.flux_evaluations += 2 * p;
        flux[i + 1] = mid;
      }
    }
    const bool weno_level_one = scheme_.cat_coupling == CatCoupling::weno_derivative &&
                                scheme_.first_derivative == FirstDerivative::weno;
    if (weno_level_one) {
      // u_t at every stencil node from the WENO flux difference.
      const double alpha = max_speed(data);
      interface_fluxes(data, alpha, -1 - p, n - 1 + p, fhat_);
      ut_one_.resize(static_cast<std::size_t>(n + 2 * p));
      for (int c = -p; c < n + p; ++c)
        ut_one_[static_cast<std::size_t>(c + p)] =
            detail::lincomb(-1.0 / dx, fhat_[c + p + 1], 1.0 / dx, fhat_[c + p]);
    }
    for (int i = -1; i < n; ++i) {
      const auto local = std::span<const S>(&at(data, i - p + 1), static_cast<std::size_t>(2 * p));
      const S* one = weno_level_one ? &ut_one_[static_cast<std::size_t>(i + 1)] : nullptr;
      flux[i + 1] = cat_flux(model_, local, flux[i + 1], dt, dx, cat_, &counters_, one);
    }
  }

  void cat_step(std::vector<S>& data, double dt) {
    cat_fluxes(data, dt, step_flux_);
    conservative_update(data, dt, step_flux_);
  }

  /// Runs to `t_final`, stopping early on blow-up or inadmissible states.
  template <class Observer>
  AdvanceResult advance(Field1D<S>& u, double t_final, Observer&& observe) {
    AdvanceResult result;
    constexpr double kTimeTolerance = 1e-13;
    try {
      while (u.time < t_final - kTimeTolerance * std::max(1.0, t_final)) {
        const double dt = stable_dt(u, t_final - u.time);
        step(u, dt);
        ++result.steps;
        if (!interior_bounded(u)) {
          result.status = RunStatus::diverged;
          result.message = "interior exceeded " + std::to_string(kDivergenceBound) +
                           " or became non-finite at step " + std::to_string(result.steps);
          return result;
        }
        observe(u);
      }
    } catch (const AdmissibilityError& e) {
      result.status = RunStatus::inadmissible;
      result.message = e.what();
    }
    return result;
  }

  AdvanceResult advance(Field1D<S>& u, double t_final) {
    return advance(u, t_final, [](const Field1D<S>&) {});
  }

  static bool interior_bounded(const Field1D<S>& u) {
    for (int i = 0; i < u.cells(); ++i)
      for (double v : u[i])
        if (!std::isfinite(v) || std::abs(v) > kDivergenceBound) return false;
    return true;
  }

 private:
  S& at(std::vector<S>& d, int i) const { return d[static_cast<std::size_t>(i + axis_.ghost)]; }
  const S& at(const std::vector<S>& d, int i) const {
    return d[static_cast<std::size_t>(i + axis_.ghost)];
  }

  void fill(std::vector<S>& data) const {
    const int n = axis_.cells, g = axis_.ghost;
    for (int i = -g; i < 0; ++i) at(data, i) = at(data, detail::source_index(i, n, bc_));
    for (int i = n; i < n + g; ++i) at(data, i) = at(data, detail::source_index(i, n, bc_));
  }

  [[noreturn]] void raise(const S& u, int cell) const {
    throw AdmissibilityError(std::vector<double>(u.begin(), u.end()), cell, time_hint_);
  }

  /// out[i - (lo + q - 1)] = sum_j w_j v_{i + j}, j = -q+1..q, for the
  /// interfaces whose stencil lies in lo..hi.
  void midpoint_values(const std::vector<S>& v, int lo, int hi, const std::vector<double>& w,
                       int q, std::vector<S>& out) const {
    const int first = lo + q - 1, last = hi - q;
    out.assign(static_cast<std::size_t>(std::max(0, last - first + 1)), detail::zero_state<S>());
    for (int i = first; i <= last; ++i) {
      S acc = detail::zero_state<S>();
      for (int j = 0; j < 2 * q; ++j) detail::add_scaled(acc, w[j], at(v, i - q + 1 + j));
      out[static_cast<std::size_t>(i - first)] = acc;
    }
  }

  /// ut_i = -(G_{i+1/2} - G_{i-1/2}) / dx for cells lo..hi; G starts at
  /// interface `glo`.
  void differentiate(const std::vector<S>& g, int glo, int lo, int hi, double dx,
                     std::vector<S>& ut) const {
    const double inv_dx = 1.0 / dx;
    for (int c = lo; c <= hi; ++c)
      at(ut, c) = detail::lincomb(-inv_dx, g[c - glo], inv_dx, g[c - 1 - glo]);
  }

  void conservative_update(std::vector<S>& data, double dt, const std::vector<S>& flux) const {
    const double ratio = dt / axis_.dx();
    for (int i = 0; i < axis_.cells; ++i) {
      S& u = at(data, i);
      for (int c = 0; c < M; ++c) u[c] -= ratio * (flux[i + 1][c] - flux[i][c]);
    }
  }

  Model model_;
  SchemeConfig scheme_;
  Axis axis_;
  Boundary bc_;
  LatTables lat_;
  CatTables cat_;
  int ext_left_ = 0, ext_right_ = 0;
  int iface_lo_ = 0;
  double time_hint_ = 0.0;
  StepCounters counters_;
  LineWorkspace<S> line_ws_;
  std::vector<S> ut_one_;
  std::vector<S> fhat_, f0_, ft_, level_flux_, level_g_, step_flux_;
  std::vector<std::vector<S>> ut_;
};

}  // namespace atweno
