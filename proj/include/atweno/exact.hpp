#pragma once

/// \file exact.hpp
/// \brief Reference solutions: the exact Riemann solver for the 1D Euler
/// equations (Toro's Newton iteration on the pressure function), periodic
/// transport, and the pre-shock Burgers solution by characteristics.

#include "atweno/models.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace atweno::exact {

enum class Wave { shock, rarefaction };

inline const char* to_string(Wave w) { return w == Wave::shock ? "shock" : "rarefaction"; }

/// Value and derivative of the pressure function f_K(p) of one side.
inline std::pair<double, double> pressure_function(double p, const EulerPrimitive1D& s,
                                                   double gamma) {
  const double c = std::sqrt(gamma * s.p / s.rho);
  if (p > s.p) {
    const double a = 2.0 / ((gamma + 1.0) * s.rho);
    const double b = (gamma - 1.0) / (gamma + 1.0) * s.p;
    const double q = std::sqrt(a / (p + b));
    return {(p - s.p) * q, q * (1.0 - 0.5 * (p - s.p) / (b + p))};
  }
  const double ratio = p / s.p;
  const double e = (gamma - 1.0) / (2.0 * gamma);
  return {2.0 * c / (gamma - 1.0) * (std::pow(ratio, e) - 1.0),
          std::pow(ratio, -(gamma + 1.0) / (2.0 * gamma)) / (s.rho * c)};
}

struct RiemannSolution {
  EulerPrimitive1D left;
  EulerPrimitive1D right;
  double gamma = 1.4;
  double p_star = 0.0;
  double u_star = 0.0;
  Wave left_wave = Wave::rarefaction;
  Wave right_wave = Wave::rarefaction;
  bool vacuum = false;
  int iterations = 0;

  double sound_speed(const EulerPrimitive1D& s) const { return std::sqrt(gamma * s.p / s.rho); }

  double rho_star_left() const { return star_density(left); }
  double rho_star_right() const { return star_density(right); }

  /// Primitive state at similarity coordinate xi = (x - x0) / t.
  EulerPrimitive1D sample(double xi) const {
    if (vacuum) return sample_vacuum(xi);
    if (xi <= u_star) return sample_side(xi, left, 1.0);
    return sample_side(xi, right, -1.0);
  }

 private:
  double star_density(const EulerPrimitive1D& s) const {
    const double ratio = p_star / s.p;
    if (p_star > s.p) {
      const double g6 = (gamma - 1.0) / (gamma + 1.0);
      return s.rho * (ratio + g6) / (g6 * ratio + 1.0);
    }
    return s.rho * std::pow(ratio, 1.0 / gamma);
  }

  /// Left side for dir = +1; the right side is handled by mirroring
  /// (x -> -x, u -> -u).
  EulerPrimitive1D sample_side(double xi, EulerPrimitive1D s, double dir) const {
    const double x = dir * xi;
    const double us = dir * u_star;
    s.u *= dir;
    const double c = sound_speed(s);
    auto mirror = [dir](EulerPrimitive1D q) {
      q.u *= dir;
      return q;
    };
    const EulerPrimitive1D star{star_density(s), us, p_star};
    if (p_star > s.p) {
      const double speed = s.u - c * std::sqrt((gamma + 1.0) / (2.0 * gamma) * p_star / s.p +
                                               (gamma - 1.0) / (2.0 * gamma));
      return mirror(x < speed ? s : star);
    }
    const double head = s.u - c;
    const double tail = us - c * std::pow(p_star / s.p, (gamma - 1.0) / (2.0 * gamma));
    if (x < head) return mirror(s);
    if (x > tail) return mirror(star);
    return mirror(fan(x, s));
  }

  EulerPrimitive1D fan(double x, const EulerPrimitive1D& s) const {
    const double c = sound_speed(s);
    const double g = 2.0 / (gamma + 1.0);
    const double cf = g * (c + 0.5 * (gamma - 1.0) * (s.u - x));
    const double uf = g * (c + 0.5 * (gamma - 1.0) * s.u + x);
    return {s.rho * std::pow(cf / c, 2.0 / (gamma - 1.0)), uf,
            s.p * std::pow(cf / c, 2.0 * gamma / (gamma - 1.0))};
  }

  EulerPrimitive1D sample_vacuum(double xi) const {
    const double cl = sound_speed(left), cr = sound_speed(right);
    const double front_l = left.u + 2.0 * cl / (gamma - 1.0);
    const double front_r = right.u - 2.0 * cr / (gamma - 1.0);
    if (xi <= left.u - cl) return left;
    if (xi >= right.u + cr) return right;
    if (xi < front_l) return fan(xi, left);
    if (xi > front_r) {
      EulerPrimitive1D m = right;
      m.u = -m.u;
      EulerPrimitive1D q = fan(-xi, m);
      q.u = -q.u;
      return q;
    }
    return {0.0, 0.5 * (front_l + front_r), 0.0};
  }
};

/// Exact solution of the Euler Riemann problem with data `left` | `right`.
/// Vacuum-generating data return a flagged solution with p* = 0.
inline RiemannSolution solve_riemann(const EulerPrimitive1D& left, const EulerPrimitive1D& right,
                                     double gamma = 1.4) {
  if (!(left.rho > 0.0 && left.p > 0.0 && right.rho > 0.0 && right.p > 0.0))
    throw std::invalid_argument("riemann: states must have positive density and pressure");
  if (!(gamma > 1.0)) throw std::invalid_argument("riemann: gamma must exceed 1");
  RiemannSolution sol{left, right, gamma};
  const double cl = sol.sound_speed(left), cr = sol.sound_speed(right);
  const double du = right.u - left.u;
  if (2.0 * (cl + cr) / (gamma - 1.0) <= du) {
    sol.vacuum = true;
    return sol;
  }

  constexpr double kFloor = 1e-14;
  constexpr double kTolerance = 1e-12;
  constexpr int kMaxIterations = 100;
  const double e = (gamma - 1.0) / (2.0 * gamma);
  double p = std::pow((cl + cr - 0.5 * (gamma - 1.0) * du) /
                          (cl / std::pow(left.p, e) + cr / std::pow(right.p, e)),
                      1.0 / e);
  p = std::max(p, kFloor);
  bool converged = false;
  for (int it = 1; it <= kMaxIterations; ++it) {
    const auto [fl, dfl] = pressure_function(p, left, gamma);
    const auto [fr, dfr] = pressure_function(p, right, gamma);
    const double next = std::max(p - (fl + fr + du) / (dfl + dfr), kFloor);
    const double change = 2.0 * std::abs(next - p) / (next + p);
    p = next;
    sol.iterations = it;
    if (change <= kTolerance) {
      converged = true;
      break;
    }
  }
  if (!converged)
    throw std::runtime_error("riemann: Newton iteration did not converge in " +
                             std::to_string(kMaxIterations) + " iterations");
  const auto fl = pressure_function(p, left, gamma).first;
  const auto fr = pressure_function(p, right, gamma).first;
  sol.p_star = p;
  sol.u_star = 0.5 * (left.u + right.u) + 0.5 * (fr - fl);
  sol.left_wave = p > left.p ? Wave::shock : Wave::rarefaction;
  sol.right_wave = p > right.p ? Wave::shock : Wave::rarefaction;
  return sol;
}

/// u(x, t) = u0(x - a t) on the periodic interval [lower, upper).
inline double advection_exact(const std::function<double(double)>& u0, double a, double x,
                              double t, double lower, double upper) {
  const double len = upper - lower;
  double s = std::fmod(x - a * t - lower, len);
  if (s < 0.0) s += len;
  return u0(lower + s);
}

/// Smooth Burgers solution u(x, t) = u0(xi) with x = xi + u0(xi) t, valid
/// before the breaking time t_b = -1 / min u0'.
class BurgersCharacteristic {
 public:
  using Profile = std::function<double(double)>;

  /// `u0` is extended periodically from [lower, upper); `du0` is its
  /// derivative. Extremes are located by dense sampling.
  BurgersCharacteristic(Profile u0, Profile du0, double lower, double upper,
                        int samples = 20001)
      : u0_(std::move(u0)), du0_(std::move(du0)), lower_(lower), upper_(upper) {
    if (!(upper > lower)) throw std::invalid_argument("burgers: empty interval");
    u_min_ = std::numeric_limits<double>::infinity();
    u_max_ = -u_min_;
    double slope_min = std::numeric_limits<double>::infinity();
    for (int k = 0; k < samples; ++k) {
      const double x = lower + (upper - lower) * k / (samples - 1);
      const double v = u0_(x);
      u_min_ = std::min(u_min_, v);
      u_max_ = std::max(u_max_, v);
      slope_min = std::min(slope_min, du0_(x));
    }
    breaking_time_ = slope_min < 0.0 ? -1.0 / slope_min : std::numeric_limits<double>::infinity();
  }

  double breaking_time() const { return breaking_time_; }

  double initial(double x) const { return u0_(wrap(x)); }

  /// Foot of the characteristic through (x, t).
  double foot(double x, double t) const {
    if (t < 0.0) throw std::domain_error("burgers: negative time");
    if (t >= breaking_time_)
      throw std::domain_error("burgers: t = " + std::to_string(t) +
                              " is past the breaking time " + std::to_string(breaking_time_));
    if (t == 0.0) return x;
    auto g = [&](double xi) { return xi + initial(xi) * t - x; };
    double lo = x - u_max_ * t, hi = x - u_min_ * t;
    if (g(lo) > 0.0) lo -= 1e-12 * (1.0 + std::abs(lo));
    if (g(hi) < 0.0) hi += 1e-12 * (1.0 + std::abs(hi));
    double xi = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
      const double r = g(xi);
      if (std::abs(r) <= 1e-13) break;
      if (r > 0.0)
        hi = xi;
      else
        lo = xi;
      const double step = r / (1.0 + du0_(wrap(xi)) * t);
      double next = xi - step;
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      if (next == xi) break;
      xi = next;
    }
    return xi;
  }

  double operator()(double x, double t) const { return initial(foot(x, t)); }

 private:
  double wrap(double x) const {
    const double len = upper_ - lower_;
    double s = std::fmod(x - lower_, len);
    if (s < 0.0) s += len;
    return lower_ + s;
  }

  Profile u0_, du0_;
  double lower_, upper_;
  double u_min_ = 0.0, u_max_ = 0.0;
  double breaking_time_ = 0.0;
};

/// Single-point convenience wrapper around `BurgersCharacteristic`.
inline double burgers_characteristic(const std::function<double(double)>& u0,
                                     const std::function<double(double)>& du0, double lower,
                                     double upper, double x, double t) {
  return BurgersCharacteristic(u0, du0, lower, upper)(x, t);
}

}  // namespace atweno::exact
