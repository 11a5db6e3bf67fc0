#pragma once

/// \file models.hpp
/// \brief Flux models: linear advection, Burgers, 1D and 2D Euler.
///
/// Every model exposes the same surface:
///
///   static constexpr int components, dimensions;
///   using state_type = State<components>;
///   state_type flux(const state_type&, int axis = 0) const;
///   double wave_speed(const state_type&, int axis = 0) const;  // |f'| bound
///   bool admissible(const state_type&) const;

#include <algorithm>
#include <array>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <limits>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace atweno {

template <int M>
using State = std::array<double, M>;

/// Thrown when a state leaves the admissible set (non-positive density or
/// pressure). Carries the offending conserved state; solvers fill in where.
class AdmissibilityError : public std::runtime_error {
 public:
  AdmissibilityError(std::vector<double> state, long cell = -1, double time = 0.0)
      : std::runtime_error(describe(state, cell, time)),
        state_(std::move(state)),
        cell_(cell),
        time_(time) {}

  const std::vector<double>& state() const { return state_; }
  long cell() const { return cell_; }
  double time() const { return time_; }

 private:
  static std::string describe(const std::vector<double>& s, long cell, double time) {
    std::ostringstream os;
    os.precision(17);
    os << "inadmissible state (";
    for (std::size_t i = 0; i < s.size(); ++i) os << (i ? ", " : "") << s[i];
    os << ")";
    if (cell >= 0) os << " at cell " << cell << ", t = " << time;
    return os.str();
  }

  std::vector<double> state_;
  long cell_;
  double time_;
};

template <class M>
concept FluxModel = requires(const M& m, const typename M::state_type& u) {
  { M::components } -> std::convertible_to<int>;
  { M::dimensions } -> std::convertible_to<int>;
  { m.flux(u, 0) } -> std::same_as<typename M::state_type>;
  { m.wave_speed(u, 0) } -> std::convertible_to<double>;
  { m.admissible(u) } -> std::convertible_to<bool>;
};

template <std::size_t M>
[[noreturn]] void throw_inadmissible(const std::array<double, M>& u) {
  throw AdmissibilityError(std::vector<double>(u.begin(), u.end()));
}

struct LinearAdvection {
  static constexpr int components = 1;
  static constexpr int dimensions = 1;
  using state_type = State<1>;

  double speed = 1.0;

  state_type flux(const state_type& u, int /*axis*/ = 0) const { return {speed * u[0]}; }
  double wave_speed(const state_type&, int /*axis*/ = 0) const { return std::abs(speed); }
  bool admissible(const state_type& u) const { return std::isfinite(u[0]); }
};

/// u_t + a u_x + b u_y = 0.
struct LinearAdvection2D {
  static constexpr int components = 1;
  static constexpr int dimensions = 2;
  using state_type = State<1>;

  double speed_x = 1.0;
  double speed_y = 1.0;

  state_type flux(const state_type& u, int axis = 0) const {
    return {(axis == 0 ? speed_x : speed_y) * u[0]};
  }
  double wave_speed(const state_type&, int axis = 0) const {
    return std::abs(axis == 0 ? speed_x : speed_y);
  }
  bool admissible(const state_type& u) const { return std::isfinite(u[0]); }
};

struct Burgers {
  static constexpr int components = 1;
  static constexpr int dimensions = 1;
  using state_type = State<1>;

  state_type flux(const state_type& u, int /*axis*/ = 0) const { return {0.5 * u[0] * u[0]}; }
  double wave_speed(const state_type& u, int /*axis*/ = 0) const { return std::abs(u[0]); }
  bool admissible(const state_type& u) const { return std::isfinite(u[0]); }
};

struct EulerPrimitive1D {
  double rho = 1.0;
  double u = 0.0;
  double p = 1.0;
};

struct EulerPrimitive2D {
  double rho = 1.0;
  double u = 0.0;
  double v = 0.0;
  double p = 1.0;
};

/// Conserved variables (rho, rho u, E), ideal gas.
struct Euler1D {
  static constexpr int components = 3;
  static constexpr int dimensions = 1;
  using state_type = State<3>;

  double gamma = 1.4;

  double pressure(const state_type& w) const {
    return (gamma - 1.0) * (w[2] - 0.5 * w[1] * w[1] / w[0]);
  }
  bool admissible(const state_type& w) const { return w[0] > 0.0 && pressure(w) > 0.0; }

  state_type flux(const state_type& w, int /*axis*/ = 0) const {
    if (!admissible(w)) throw_inadmissible(w);
    const double u = w[1] / w[0];
    const double p = pressure(w);
    return {w[1], w[1] * u + p, u * (w[2] + p)};
  }
  double wave_speed(const state_type& w, int /*axis*/ = 0) const {
    if (!admissible(w)) throw_inadmissible(w);
    return std::abs(w[1] / w[0]) + std::sqrt(gamma * pressure(w) / w[0]);
  }

  state_type to_conserved(const EulerPrimitive1D& q) const {
    if (!(q.rho > 0.0) || !(q.p > 0.0))
      throw AdmissibilityError({q.rho, q.u, q.p});
    return {q.rho, q.rho * q.u, q.p / (gamma - 1.0) + 0.5 * q.rho * q.u * q.u};
  }
  EulerPrimitive1D to_primitive(const state_type& w) const {
    if (!admissible(w)) throw_inadmissible(w);
    return {w[0], w[1] / w[0], pressure(w)};
  }
  /// Internal energy per unit mass, e = p / ((gamma - 1) rho).
  double internal_energy(const state_type& w) const {
    return pressure(w) / ((gamma - 1.0) * w[0]);
  }
};

/// Conserved variables (rho, rho u, rho v, E), ideal gas. The y flux is the
/// x flux with the two momentum components swapped, evaluated in the same
/// arithmetic order, so transposed data produce transposed fluxes exactly.
struct Euler2D {
  static constexpr int components = 4;
  static constexpr int dimensions = 2;
  using state_type = State<4>;

  double gamma = 1.4;

  static state_type swap_momentum(const state_type& w) { return {w[0], w[2], w[1], w[3]}; }

  double pressure(const state_type& w) const {
    return (gamma - 1.0) * (w[3] - 0.5 * (w[1] * w[1] + w[2] * w[2]) / w[0]);
  }
  bool admissible(const state_type& w) const { return w[0] > 0.0 && pressure(w) > 0.0; }

  state_type flux(const state_type& w, int axis = 0) const {
    if (axis != 0) return swap_momentum(flux(swap_momentum(w), 0));
    if (!admissible(w)) throw_inadmissible(w);
    const double u = w[1] / w[0];
    const double p = pressure(w);
    return {w[1], w[1] * u + p, (w[1] * w[2]) / w[0], u * (w[3] + p)};
  }
  double wave_speed(const state_type& w, int axis = 0) const {
    if (!admissible(w)) throw_inadmissible(w);
    const double vel = (axis == 0 ? w[1] : w[2]) / w[0];
    return std::abs(vel) + std::sqrt(gamma * pressure(w) / w[0]);
  }

  state_type to_conserved(const EulerPrimitive2D& q) const {
    if (!(q.rho > 0.0) || !(q.p > 0.0))
      throw AdmissibilityError({q.rho, q.u, q.v, q.p});
    return {q.rho, q.rho * q.u, q.rho * q.v,
            q.p / (gamma - 1.0) + 0.5 * q.rho * (q.u * q.u + q.v * q.v)};
  }
  EulerPrimitive2D to_primitive(const state_type& w) const {
    if (!admissible(w)) throw_inadmissible(w);
    return {w[0], w[1] / w[0], w[2] / w[0], pressure(w)};
  }
};

/// Largest wave speed along `axis` over a set of states.
template <FluxModel Model>
double max_wave_speed(const Model& model, std::span<const typename Model::state_type> states,
                      int axis = 0) {
  double alpha = 0.0;
  for (const auto& u : states) alpha = std::max(alpha, model.wave_speed(u, axis));
  return alpha;
}

/// Global Lax-Friedrichs splitting f = f+ + f-, f+- = (f +- alpha u) / 2.
template <std::size_t M>
std::pair<std::array<double, M>, std::array<double, M>> lax_friedrichs_split(
    const std::array<double, M>& state, const std::array<double, M>& flux_value, double alpha) {
  std::array<double, M> plus{}, minus{};
  for (std::size_t c = 0; c < M; ++c) {
    plus[c] = 0.5 * (flux_value[c] + alpha * state[c]);
    minus[c] = 0.5 * (flux_value[c] - alpha * state[c]);
  }
  return {plus, minus};
}

}  // namespace atweno
