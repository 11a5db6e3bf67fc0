#pragma once

/// \file solver2d.hpp
/// \brief Dimension-by-dimension extension of the 1D schemes to Cartesian
/// grids: u_t + f(u)_x + g(u)_y = 0.
///
/// WENO interface fluxes are computed line by line with a direction-specific
/// Lax-Friedrichs speed. CAT uses one (2p)x(2p) rectangle of cells
/// {i-p+1..i+p} x {j-p+1..j+p} per index pair (i, j); it yields the x-flux at
/// (i+1/2, j) and the y-flux at (i, j+1/2).

#include "atweno/grid.hpp"
#include "atweno/integrators.hpp"
#include "atweno/models.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace atweno {

/// dt = cfl / (alpha_x / dx + alpha_y / dy), capped at `remaining`.
inline double cfl_dt_2d(double alpha_x, double alpha_y, double dx, double dy, double cfl,
                        double remaining) {
  const double rate = alpha_x / dx + alpha_y / dy;
  if (!(rate > 0.0)) return remaining;
  return std::min(cfl / rate, remaining);
}

/// High-order parts of the CAT fluxes at (i+1/2, j) and (i, j+1/2) from the
/// rectangle `local[a][b]` = u_{i-p+1+a, j-p+1+b}.
template <FluxModel Model>
std::pair<typename Model::state_type, typename Model::state_type> cat_correction_2d(
    const Model& model, const std::array<std::array<typename Model::state_type, 6>, 6>& local,
    double dt, double dx, double dy, const CatTables& t, StepCounters* counters = nullptr,
    const std::array<std::array<typename Model::state_type, 6>, 6>* level_one = nullptr) {
  using S = typename Model::state_type;
  using Grid = std::array<std::array<S, 6>, 6>;
  const int np = 2 * t.p;
  const int centre = t.p - 1;
  Grid fx{}, fy{}, fx_next{}, fy_next{};
  std::array<Grid, kMaxTaylorDegree> ut{};
  long long evals = 0;
  auto eval = [&](const S& s, S& f, S& g) {
    if (model.admissible(s)) {
      f = model.flux(s, 0);
      g = model.flux(s, 1);
    } else {
      f = g = detail::nan_state<S>();
    }
    evals += 2;
  };
  for (int a = 0; a < np; ++a)
    for (int b = 0; b < np; ++b) eval(local[a][b], fx[a][b], fy[a][b]);

  S corr_x = detail::zero_state<S>(), corr_y = detail::zero_state<S>();
  double dt_pow = 1.0;
  for (int k = 2; k <= t.m; ++k) {
    if (k == 2 && level_one) {
      ut[1] = *level_one;
    } else {
      for (int a = 0; a < np; ++a)
        for (int b = 0; b < np; ++b) {
          S dfx = detail::zero_state<S>(), dgy = detail::zero_state<S>();
          for (int r = 0; r < np; ++r) {
            detail::add_scaled(dfx, t.slope[a][r], fx[r][b]);
            detail::add_scaled(dgy, t.slope[b][r], fy[a][r]);
          }
          ut[k - 1][a][b] = detail::lincomb(-1.0 / dx, dfx, -1.0 / dy, dgy);
        }
    }
    dt_pow *= dt;
    const auto& tw = t.time[k];
    const bool last = k == t.m;
    for (int a = 0; a < np; ++a)
      for (int b = 0; b < np; ++b) {
        if (last && a != centre && b != centre) continue;
        std::array<S, kMaxTaylorDegree> levels{};
        for (int l = 1; l < k; ++l) levels[l] = ut[l][a][b];
        S accf = detail::zero_state<S>(), accg = detail::zero_state<S>();
        for (int r = 0; r < np; ++r) {
          const S s = detail::taylor_predict(local[a][b], levels, k - 1, (r - t.p + 1) * dt);
          S f, g;
          eval(s, f, g);
          detail::add_scaled(accf, tw[r], f);
          detail::add_scaled(accg, tw[r], g);
        }
        fx_next[a][b] = detail::lincomb(1.0 / dt_pow, accf, 0.0, accf);
        fy_next[a][b] = detail::lincomb(1.0 / dt_pow, accg, 0.0, accg);
      }
    S mx = detail::zero_state<S>(), my = detail::zero_state<S>();
    for (int j = 0; j < np; ++j) {
      detail::add_scaled(mx, t.midpoint[j], fx_next[j][centre]);
      detail::add_scaled(my, t.midpoint[j], fy_next[centre][j]);
    }
    const double w = dt_pow / detail::factorial(k);
    detail::add_scaled(corr_x, w, mx);
    detail::add_scaled(corr_y, w, my);
    fx = fx_next;
    fy = fy_next;
  }
  if (counters) counters->flux_evaluations += evals;
  return {corr_x, corr_y};
}

template <FluxModel Model>
class Solver2D {
 public:
  using S = typename Model::state_type;
  static constexpr int M = Model::components;

  Solver2D(Model model, SchemeConfig scheme, Axis x, Axis y, Boundary bc_x, Boundary bc_y)
      : model_(model), scheme_(scheme), x_(x), y_(y), bc_x_(bc_x), bc_y_(bc_y) {
    scheme_.validate();
    x_.validate();
    y_.validate();
    if (scheme_.first_derivative != FirstDerivative::weno)
      throw std::invalid_argument("solver2d: only the WENO first derivative is supported");
    const int need = scheme_.ghost_width();
    if (x_.ghost < need || y_.ghost < need)
      throw std::invalid_argument("solver2d: grid has too few ghost cells, scheme needs " +
                                  std::to_string(need));
    if (scheme_.integrator == TimeIntegrator::lat) lat_ = LatTables::build(scheme_);
    if (scheme_.integrator == TimeIntegrator::cat) cat_ = CatTables::build(scheme_.half_width);
    reach_left_ = weno_reach_left(scheme_.recon);
    reach_right_ = weno_reach_right(scheme_.recon);
  }

  Solver2D(Model model, SchemeConfig scheme, Axis x, Axis y, Boundary bc)
      : Solver2D(model, scheme, x, y, bc, bc) {}

  const SchemeConfig& scheme() const { return scheme_; }
  const StepCounters& counters() const { return counters_; }
  void reset_counters() { counters_ = {}; }

  Field2D<S> make_field() const { return Field2D<S>(x_, y_); }

  std::pair<double, double> max_speeds(const std::vector<S>& data) const {
    double ax = 0.0, ay = 0.0;
    for (int j = -y_.ghost; j < y_.cells + y_.ghost; ++j)
      for (int i = -x_.ghost; i < x_.cells + x_.ghost; ++i) {
        const S& u = at(data, i, j);
        if (!model_.admissible(u)) raise(u, i, j);
        ax = std::max(ax, model_.wave_speed(u, 0));
        ay = std::max(ay, model_.wave_speed(u, 1));
      }
    return {ax, ay};
  }

  double stable_dt(Field2D<S>& u, double remaining) {
    fill(u.data);
    const auto [ax, ay] = max_speeds(u.data);
    return cfl_dt_2d(ax, ay, x_.dx(), y_.dx(), scheme_.cfl, remaining);
  }

  /// Semi-discrete operator on interior cells; ghost entries of `out` are 0.
  void rhs(std::vector<S>& data, std::vector<S>& out) {
    fill(data);
    const auto [ax, ay] = max_speeds(data);
    weno_fluxes(data, ax, ay, 0, 0, fx_, fy_);
    out.assign(data.size(), detail::zero_state<S>());
    const double idx = 1.0 / x_.dx(), idy = 1.0 / y_.dx();
    for (int j = 0; j < y_.cells; ++j)
      for (int i = 0; i < x_.cells; ++i) {
        S r = detail::lincomb(-idx, at(fx_, i, j), idx, at(fx_, i - 1, j));
        const S ry = detail::lincomb(-idy, at(fy_, i, j), idy, at(fy_, i, j - 1));
        detail::add_scaled(r, 1.0, ry);
        at(out, i, j) = r;
      }
    ++counters_.rhs_evaluations;
  }

  void step(Field2D<S>& u, double dt) {
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
        lat_fluxes(u.data, dt);
        update(u.data, dt);
        break;
      case TimeIntegrator::cat:
        cat_fluxes(u.data, dt);
        update(u.data, dt);
        break;
    }
    fill(u.data);
    u.time += dt;
    ++counters_.steps;
  }

  template <class Observer>
  AdvanceResult advance(Field2D<S>& u, double t_final, Observer&& observe) {
    AdvanceResult result;
    constexpr double kTimeTolerance = 1e-13;
    try {
      while (u.time < t_final - kTimeTolerance * std::max(1.0, t_final)) {
        const double dt = stable_dt(u, t_final - u.time);
        step(u, dt);
        ++result.steps;
        if (!interior_bounded(u)) {
          result.status = RunStatus::diverged;
          result.message = "interior exceeded bound or became non-finite at step " +
                           std::to_string(result.steps);
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

  AdvanceResult advance(Field2D<S>& u, double t_final) {
    return advance(u, t_final, [](const Field2D<S>&) {});
  }

  static bool interior_bounded(const Field2D<S>& u) {
    for (int j = 0; j < u.y.cells; ++j)
      for (int i = 0; i < u.x.cells; ++i)
        for (double v : u(i, j))
          if (!std::isfinite(v) || std::abs(v) > kDivergenceBound) return false;
    return true;
  }

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j + y_.ghost) * x_.extent() +
           static_cast<std::size_t>(i + x_.ghost);
  }
  S& at(std::vector<S>& d, int i, int j) const { return d[index(i, j)]; }
  const S& at(const std::vector<S>& d, int i, int j) const { return d[index(i, j)]; }

  void fill(std::vector<S>& data) const {
    const int nx = x_.cells, ny = y_.cells, gx = x_.ghost, gy = y_.ghost;
    for (int j = 0; j < ny; ++j) {
      for (int i = -gx; i < 0; ++i) at(data, i, j) = at(data, detail::source_index(i, nx, bc_x_), j);
      for (int i = nx; i < nx + gx; ++i)
        at(data, i, j) = at(data, detail::source_index(i, nx, bc_x_), j);
    }
    for (int i = -gx; i < nx + gx; ++i) {
      for (int j = -gy; j < 0; ++j) at(data, i, j) = at(data, i, detail::source_index(j, ny, bc_y_));
      for (int j = ny; j < ny + gy; ++j)
        at(data, i, j) = at(data, i, detail::source_index(j, ny, bc_y_));
    }
  }

  [[noreturn]] void raise(const S& u, int i, int j) const {
    throw AdmissibilityError(std::vector<double>(u.begin(), u.end()),
                             static_cast<long>(j) * x_.cells + i, time_hint_);
  }

  /// WENO fluxes: x-interfaces i+1/2 for rows j in [-pad_y, ny-1+pad_y] and
  /// y-interfaces j+1/2 for columns i in [-pad_x, nx-1+pad_x]. With zero
  /// padding only interior lines are swept; interfaces run -1-extra..n-1+extra
  /// as far as the ghost layer allows.
  void weno_fluxes(const std::vector<S>& data, double ax, double ay, int pad_x, int pad_y,
                   std::vector<S>& fx, std::vector<S>& fy) {
    fx.resize(data.size());
    fy.resize(data.size());
    const int nx = x_.cells, ny = y_.cells, gx = x_.ghost, gy = y_.ghost;
    const int xi0 = pad_x ? -gx + reach_left_ : -1, xi1 = pad_x ? nx - 1 + gx - reach_right_ : nx - 1;
    const int yj0 = pad_y ? -gy + reach_left_ : -1, yj1 = pad_y ? ny - 1 + gy - reach_right_ : ny - 1;
    const auto span_all = std::span<const S>(data);
    for (int j = -pad_y; j < ny + pad_y; ++j) {
      const auto row = span_all.subspan(index(-gx, j), static_cast<std::size_t>(x_.extent()));
      counters_.flux_evaluations += weno_line_fluxes(model_, scheme_.recon, 0, row, gx, ax, xi0,
                                                     xi1, line_out_, ws_, time_hint_);
      for (int i = xi0; i <= xi1; ++i) at(fx, i, j) = line_out_[static_cast<std::size_t>(i - xi0)];
    }
    column_.resize(static_cast<std::size_t>(y_.extent()));
    for (int i = -pad_x; i < nx + pad_x; ++i) {
      for (int j = -gy; j < ny + gy; ++j) column_[static_cast<std::size_t>(j + gy)] = at(data, i, j);
      counters_.flux_evaluations +=
          weno_line_fluxes(model_, scheme_.recon, 1, std::span<const S>(column_), gy, ay, yj0, yj1,
                           line_out_, ws_, time_hint_);
      for (int j = yj0; j <= yj1; ++j) at(fy, i, j) = line_out_[static_cast<std::size_t>(j - yj0)];
    }
  }

  void lat_fluxes(std::vector<S>& data, double dt) {
    fill(data);
    const int nx = x_.cells, ny = y_.cells, g = std::min(x_.ghost, y_.ghost);
    const double dx = x_.dx(), dy = y_.dx();
    const double idx = 1.0 / dx, idy = 1.0 / dy;
    const int m = lat_.m;
    const auto [ax, ay] = max_speeds(data);
    weno_fluxes(data, ax, ay, x_.ghost, y_.ghost, fx_, fy_);

    if (static_cast<int>(ut_.size()) < m + 1) ut_.resize(static_cast<std::size_t>(m) + 1);
    for (auto& v : ut_) v.resize(data.size());
    int lo = -g + reach_left_ + 1, hi_x = nx - 1 + g - reach_right_, hi_y = ny - 1 + g - reach_right_;
    weno_level_one(lo, hi_x, hi_y);

    corr_x_.assign(data.size(), detail::zero_state<S>());
    corr_y_.assign(data.size(), detail::zero_state<S>());
    ftx_.resize(data.size());
    fty_.resize(data.size());
    gx_.resize(data.size());
    gy_.resize(data.size());
    const int tp = lat_.time_p;
    std::array<S, kMaxTaylorDegree> levels{};
    double dt_pow = 1.0;
    for (int k = 2; k <= m; ++k) {
      dt_pow *= dt;
      const auto& tw = lat_.time[k];
      for (int j = lo; j <= hi_y; ++j)
        for (int i = lo; i <= hi_x; ++i) {
          for (int l = 1; l < k; ++l) levels[l] = at(ut_[l], i, j);
          S accf = detail::zero_state<S>(), accg = detail::zero_state<S>();
          for (int r = -tp; r <= tp; ++r) {
            const S s = detail::taylor_predict(at(data, i, j), levels, k - 1, r * dt);
            const bool ok = model_.admissible(s);
            detail::add_scaled(accf, tw[r + tp], ok ? model_.flux(s, 0) : detail::nan_state<S>());
            detail::add_scaled(accg, tw[r + tp], ok ? model_.flux(s, 1) : detail::nan_state<S>());
          }
          at(ftx_, i, j) = detail::lincomb(1.0 / dt_pow, accf, 0.0, accf);
          at(fty_, i, j) = detail::lincomb(1.0 / dt_pow, accg, 0.0, accg);
        }
      counters_.flux_evaluations +=
          2LL * (hi_x - lo + 1) * (hi_y - lo + 1) * (2 * tp + 1);

      const int q = lat_.space_p[k];
      const auto& w = lat_.midpoint[k];
      // x-midpoints on rows lo..hi_y, y-midpoints on columns lo..hi_x.
      for (int j = lo; j <= hi_y; ++j)
        for (int i = lo + q - 1; i <= hi_x - q; ++i) {
          S acc = detail::zero_state<S>();
          for (int s = 0; s < 2 * q; ++s) detail::add_scaled(acc, w[s], at(ftx_, i - q + 1 + s, j));
          at(gx_, i, j) = acc;
        }
      for (int j = lo + q - 1; j <= hi_y - q; ++j)
        for (int i = lo; i <= hi_x; ++i) {
          S acc = detail::zero_state<S>();
          for (int s = 0; s < 2 * q; ++s) detail::add_scaled(acc, w[s], at(fty_, i, j - q + 1 + s));
          at(gy_, i, j) = acc;
        }
      const double weight = dt_pow / detail::factorial(k);
      for (int j = 0; j < ny; ++j)
        for (int i = -1; i < nx; ++i) detail::add_scaled(at(corr_x_, i, j), weight, at(gx_, i, j));
      for (int j = -1; j < ny; ++j)
        for (int i = 0; i < nx; ++i) detail::add_scaled(at(corr_y_, i, j), weight, at(gy_, i, j));
      if (k < m) {
        for (int j = lo + q; j <= hi_y - q; ++j)
          for (int i = lo + q; i <= hi_x - q; ++i) {
            S r = detail::lincomb(-idx, at(gx_, i, j), idx, at(gx_, i - 1, j));
            detail::add_scaled(r, 1.0,
                               detail::lincomb(-idy, at(gy_, i, j), idy, at(gy_, i, j - 1)));
            at(ut_[k], i, j) = r;
          }
        lo += q;
        hi_x -= q;
        hi_y -= q;
      }
    }
    apply_corrections();
  }

  /// u_t from the WENO flux divergence on the square [lo, hi_x] x [lo, hi_y].
  void weno_level_one(int lo, int hi_x, int hi_y) {
    const double idx = 1.0 / x_.dx(), idy = 1.0 / y_.dx();
    if (ut_.size() < 2) ut_.resize(2);
    ut_[1].resize(fx_.size());
    for (int j = lo; j <= hi_y; ++j)
      for (int i = lo; i <= hi_x; ++i) {
        S r = detail::lincomb(-idx, at(fx_, i, j), idx, at(fx_, i - 1, j));
        detail::add_scaled(r, 1.0, detail::lincomb(-idy, at(fy_, i, j), idy, at(fy_, i, j - 1)));
        at(ut_[1], i, j) = r;
      }
  }

  void cat_fluxes(std::vector<S>& data, double dt) {
    fill(data);
    const int nx = x_.cells, ny = y_.cells, p = cat_.p;
    const auto [ax, ay] = max_speeds(data);
    const bool seeded = scheme_.cat_coupling == CatCoupling::weno_derivative;
    if (seeded) {
      weno_fluxes(data, ax, ay, x_.ghost, y_.ghost, fx_, fy_);
      weno_level_one(-p, nx - 1 + p, ny - 1 + p);
    } else {
      weno_fluxes(data, ax, ay, 0, 0, fx_, fy_);
    }
    corr_x_.assign(data.size(), detail::zero_state<S>());
    corr_y_.assign(data.size(), detail::zero_state<S>());
    std::array<std::array<S, 6>, 6> local{}, one{};
    for (int j = -1; j < ny; ++j)
      for (int i = -1; i < nx; ++i) {
        if (i < 0 && j < 0) continue;
        for (int a = 0; a < 2 * p; ++a)
          for (int b = 0; b < 2 * p; ++b) {
            local[a][b] = at(data, i - p + 1 + a, j - p + 1 + b);
            if (seeded) one[a][b] = at(ut_[1], i - p + 1 + a, j - p + 1 + b);
          }
        const auto [cx, cy] = cat_correction_2d(model_, local, dt, x_.dx(), y_.dx(), cat_,
                                                &counters_, seeded ? &one : nullptr);
        at(corr_x_, i, j) = cx;
        at(corr_y_, i, j) = cy;
      }
    apply_corrections();
  }

  /// F = \hat f + correction on the interfaces the update reads, falling
  /// back to \hat f where the correction is not finite.
  void apply_corrections() {
    const int nx = x_.cells, ny = y_.cells;
    for (int j = 0; j < ny; ++j)
      for (int i = -1; i < nx; ++i) combine(at(fx_, i, j), at(corr_x_, i, j));
    for (int j = -1; j < ny; ++j)
      for (int i = 0; i < nx; ++i) combine(at(fy_, i, j), at(corr_y_, i, j));
  }

  void combine(S& flux, const S& corr) {
    if (detail::all_finite(corr)) {
      flux = detail::lincomb(1.0, flux, 1.0, corr);
    } else {
      ++counters_.fallbacks;
    }
  }

  void update(std::vector<S>& data, double dt) const {
    const double rx = dt / x_.dx(), ry = dt / y_.dx();
    for (int j = 0; j < y_.cells; ++j)
      for (int i = 0; i < x_.cells; ++i) {
        S& u = at(data, i, j);
        for (int c = 0; c < M; ++c) u[c] -= rx * (at(fx_, i, j)[c] - at(fx_, i - 1, j)[c]);
        for (int c = 0; c < M; ++c) u[c] -= ry * (at(fy_, i, j)[c] - at(fy_, i, j - 1)[c]);
      }
  }

  Model model_;
  SchemeConfig scheme_;
  Axis x_, y_;
  Boundary bc_x_, bc_y_;
  LatTables lat_;
  CatTables cat_;
  int reach_left_ = 0, reach_right_ = 0;
  double time_hint_ = 0.0;
  StepCounters counters_;
  LineWorkspace<S> ws_;
  std::vector<S> line_out_, column_;
  std::vector<S> fx_, fy_, corr_x_, corr_y_, ftx_, fty_, gx_, gy_;
  std::vector<std::vector<S>> ut_;
};

}  // namespace atweno
