#pragma once

/// \file harness.hpp
/// \brief Test catalogue, scheme labels, run orchestration, error norms,
/// convergence tables and CPU-ratio benchmarks.

#include "atweno/exact.hpp"
#include "atweno/grid.hpp"
#include "atweno/integrators.hpp"
#include "atweno/models.hpp"
#include "atweno/opcount.hpp"
#include "atweno/reconstruct.hpp"
#include "atweno/solver2d.hpp"

#include "json.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace atweno::harness {

enum class ModelKind { advection, burgers, euler1d, euler2d };
enum class ReferenceKind { exact, fine_grid, none };

inline const char* to_string(ModelKind m) {
  switch (m) {
    case ModelKind::advection:
      return "advection";
    case ModelKind::burgers:
      return "burgers";
    case ModelKind::euler1d:
      return "euler1d";
    case ModelKind::euler2d:
      return "euler2d";
  }
  return "?";
}

inline const char* to_string(ReferenceKind r) {
  switch (r) {
    case ReferenceKind::exact:
      return "exact";
    case ReferenceKind::fine_grid:
      return "fine-grid";
    case ReferenceKind::none:
      return "none";
  }
  return "?";
}

enum class Profile { test1, sine, gaussian, riemann };

struct TestCase {
  int id = 0;
  std::string name;
  std::string description;
  ModelKind model = ModelKind::advection;
  Profile profile = Profile::test1;
  double lower = 0.0;
  double upper = 1.0;
  int cells = 200;
  Boundary boundary = Boundary::periodic;
  double t_final = 1.0;
  std::array<double, 3> cfl_by_order{0.5, 0.5, 0.5};  // orders 3, 5, 7
  ReferenceKind reference = ReferenceKind::exact;
  double speed = 1.0;
  double gamma = 1.4;
  EulerPrimitive1D left{}, right{};
  double x_split = 0.5;
  QuadrantData quadrants{};
  int lax_configuration = 0;

  double default_cfl(int order) const {
    switch (order) {
      case 3:
        return cfl_by_order[0];
      case 5:
        return cfl_by_order[1];
      case 7:
        return cfl_by_order[2];
    }
    throw std::invalid_argument("no default CFL for reconstruction order " + std::to_string(order));
  }
};

namespace detail {

inline TestCase riemann_case(int id, const char* desc, EulerPrimitive1D l, EulerPrimitive1D r,
                             double t, std::array<double, 3> cfl) {
  TestCase c;
  c.id = id;
  c.name = "test" + std::to_string(id);
  c.description = desc;
  c.model = ModelKind::euler1d;
  c.profile = Profile::riemann;
  c.lower = 0.0;
  c.upper = 1.0;
  c.cells = 200;
  c.boundary = Boundary::outflow;
  c.t_final = t;
  c.cfl_by_order = cfl;
  c.reference = ReferenceKind::exact;
  c.left = l;
  c.right = r;
  return c;
}

inline TestCase lax_case(int id, int config, std::array<EulerPrimitive2D, 4> q) {
  TestCase c;
  c.id = id;
  c.name = "test" + std::to_string(id);
  c.description = "2D Euler, Lax configuration " + std::to_string(config);
  c.model = ModelKind::euler2d;
  c.profile = Profile::riemann;
  c.lower = 0.0;
  c.upper = 1.0;
  c.cells = 400;
  c.boundary = Boundary::outflow;
  c.t_final = 0.3;
  c.cfl_by_order = {0.475, 0.475, 0.475};
  c.reference = ReferenceKind::none;
  c.quadrants.states = q;
  c.lax_configuration = config;
  return c;
}

}  // namespace detail

/// Tests 1-13.
inline const std::vector<TestCase>& catalogue() {
  static const std::vector<TestCase> cases = [] {
    std::vector<TestCase> v;
    TestCase t1;
    t1.id = 1;
    t1.name = "test1";
    t1.description = "linear transport, composite profile";
    t1.model = ModelKind::advection;
    t1.profile = Profile::test1;
    t1.lower = 0.0;
    t1.upper = 2.0;
    t1.cells = 200;
    t1.boundary = Boundary::periodic;
    t1.t_final = 2.0;
    t1.cfl_by_order = {0.5, 0.5, 0.5};
    t1.reference = ReferenceKind::exact;
    v.push_back(t1);

    TestCase t2;
    t2.id = 2;
    t2.name = "test2";
    t2.description = "Burgers, Gaussian initial data";
    t2.model = ModelKind::burgers;
    t2.profile = Profile::gaussian;
    t2.lower = 0.0;
    t2.upper = 1.0;
    t2.cells = 160;
    t2.boundary = Boundary::periodic;
    t2.t_final = 2.0;
    t2.cfl_by_order = {0.5, 0.5, 0.5};
    t2.reference = ReferenceKind::fine_grid;
    v.push_back(t2);

    v.push_back(detail::riemann_case(3, "Sod", {1.0, 0.0, 1.0}, {0.125, 0.0, 0.1}, 0.25,
                                     {0.9, 0.5, 0.25}));
    v.push_back(detail::riemann_case(4, "123 problem", {1.0, -2.0, 0.4}, {1.0, 2.0, 0.4}, 0.15,
                                     {0.9, 0.5, 0.25}));
    v.push_back(detail::riemann_case(5, "blast wave, left half", {1.0, 0.0, 1000.0},
                                     {1.0, 0.0, 0.01}, 0.012, {0.9, 0.5, 0.25}));
    v.push_back(detail::riemann_case(6, "blast wave, right half", {1.0, 0.0, 0.01},
                                     {1.0, 0.0, 100.0}, 0.035, {0.9, 0.5, 0.25}));
    v.push_back(detail::riemann_case(7, "shock collision", {0.99924, 19.5975, 460.894},
                                     {5.99242, -6.19633, 46.0950}, 0.035, {0.25, 0.25, 0.25}));

    // Quadrants 1..4: upper right, upper left, lower left, lower right.
    v.push_back(detail::lax_case(8, 3,
                                 {{{1.5, 0.0, 0.0, 1.5},
                                   {0.5323, 1.206, 0.0, 0.3},
                                   {0.138, 1.206, 1.206, 0.029},
                                   {0.5323, 0.0, 1.206, 0.3}}}));
    v.push_back(detail::lax_case(9, 6,
                                 {{{1.0, 0.75, -0.5, 1.0},
                                   {2.0, 0.75, 0.5, 1.0},
                                   {1.0, -0.75, 0.5, 1.0},
                                   {3.0, -0.75, -0.5, 1.0}}}));
    v.push_back(detail::lax_case(10, 11,
                                 {{{1.0, 0.1, 0.0, 1.0},
                                   {0.5313, 0.8275, 0.0, 0.4},
                                   {0.8, 0.1, 0.0, 0.4},
                                   {0.5313, 0.1, 0.7276, 0.4}}}));
    v.push_back(detail::lax_case(11, 13,
                                 {{{1.0, 0.0, -0.3, 1.0},
                                   {2.0, 0.0, 0.3, 1.0},
                                   {1.0625, 0.0, 0.8145, 0.4},
                                   {0.5313, 0.0, 0.4276, 0.4}}}));
    v.push_back(detail::lax_case(12, 17,
                                 {{{1.0, 0.0, -0.4, 1.0},
                                   {2.0, 0.0, -0.3, 1.0},
                                   {1.0625, 0.0, 0.2145, 0.4},
                                   {0.5197, 0.0, -1.1259, 0.4}}}));
    v.push_back(detail::lax_case(13, 19,
                                 {{{1.0, 0.0, 0.3, 1.0},
                                   {2.0, 0.0, -0.3, 1.0},
                                   {1.0625, 0.0, 0.2145, 0.4},
                                   {0.5197, 0.0, -0.4259, 0.4}}}));
    return v;
  }();
  return cases;
}

/// Smooth problems used for convergence studies; not part of the catalogue.
inline const std::vector<TestCase>& auxiliary_cases() {
  static const std::vector<TestCase> cases = [] {
    std::vector<TestCase> v;
    TestCase s;
    s.id = 101;
    s.name = "sine";
    s.description = "linear transport of sin(2 pi x), one period";
    s.model = ModelKind::advection;
    s.profile = Profile::sine;
    s.lower = 0.0;
    s.upper = 1.0;
    s.cells = 100;
    s.boundary = Boundary::periodic;
    s.t_final = 1.0;
    s.cfl_by_order = {0.5, 0.5, 0.5};
    s.reference = ReferenceKind::exact;
    v.push_back(s);

    TestCase b;
    b.id = 102;
    b.name = "burgers-smooth";
    b.description = "Burgers, Gaussian data before shock formation";
    b.model = ModelKind::burgers;
    b.profile = Profile::gaussian;
    b.lower = 0.0;
    b.upper = 1.0;
    b.cells = 160;
    b.boundary = Boundary::periodic;
    b.t_final = 0.2;
    b.cfl_by_order = {0.5, 0.5, 0.5};
    b.reference = ReferenceKind::exact;
    v.push_back(b);
    return v;
  }();
  return cases;
}

/// Looks a case up by name ("test3"), bare number ("3") or auxiliary name.
inline const TestCase& find_case(std::string_view name) {
  for (const auto* list : {&catalogue(), &auxiliary_cases()})
    for (const auto& c : *list)
      if (c.name == name || std::to_string(c.id) == name) return c;
  throw std::invalid_argument("unknown case '" + std::string(name) +
                              "' (expected test1..test13, sine or burgers-smooth)");
}

// ---------------------------------------------------------------------------
// Scheme labels

inline constexpr const char* kLabelGrammar = "{W|FOW}{3|5|7}{R3|R4|C2|C4|C6|L3|L5|L7}";

struct SchemeLabel {
  bool foweno = true;
  int order = 5;          // reconstruction order 2p+1
  char integrator = 'C';  // R, C or L
  int time_order = 4;

  std::string text() const {
    return std::string(foweno ? "FOW" : "W") + std::to_string(order) + integrator +
           std::to_string(time_order);
  }
};

inline SchemeLabel parse_label(std::string_view s) {
  auto fail = [&]() -> SchemeLabel {
    throw std::invalid_argument("invalid scheme label '" + std::string(s) + "'; expected " +
                                kLabelGrammar);
  };
  SchemeLabel l;
  std::string_view rest = s;
  if (rest.substr(0, 3) == "FOW") {
    l.foweno = true;
    rest.remove_prefix(3);
  } else if (rest.substr(0, 1) == "W") {
    l.foweno = false;
    rest.remove_prefix(1);
  } else {
    return fail();
  }
  if (rest.size() != 3) return fail();
  if (rest[0] != '3' && rest[0] != '5' && rest[0] != '7') return fail();
  l.order = rest[0] - '0';
  l.integrator = rest[1];
  l.time_order = rest[2] - '0';
  const std::string tail(rest.substr(1));
  static const std::array<const char*, 8> valid{"R3", "R4", "C2", "C4", "C6", "L3", "L5", "L7"};
  if (std::find(valid.begin(), valid.end(), tail) == valid.end()) return fail();
  return l;
}

/// FOW3 is the optimal-weight OWENO3 reconstruction; FOW5 and FOW7 are
/// FOWENO with p = 2, 3; W is classical WENO-JS.
inline ReconstructionConfig recon_for(const SchemeLabel& l) {
  const int p = (l.order - 1) / 2;
  if (!l.foweno) return ReconstructionConfig::make(Family::weno_js, p);
  return ReconstructionConfig::make(p == 1 ? Family::oweno3 : Family::foweno, p);
}

inline SchemeConfig make_scheme(const SchemeLabel& l, double cfl) {
  const auto r = recon_for(l);
  switch (l.integrator) {
    case 'R':
      return l.time_order == 3 ? SchemeConfig::ssprk3(r, cfl) : SchemeConfig::ssprk104(r, cfl);
    case 'C':
      return SchemeConfig::cat(l.time_order / 2, r, cfl);
    case 'L':
      return SchemeConfig::lat(l.time_order, r, cfl);
  }
  throw std::invalid_argument("invalid integrator in label " + l.text());
}

// ---------------------------------------------------------------------------
// Error norms

struct ErrorNorms {
  std::vector<double> l1;
  std::vector<double> linf;
};

/// L1 = sum |e_i| dx (dx dy in 2D) and Linf = max |e_i| per component;
/// rows are cells, columns components.
inline ErrorNorms error_norms(const std::vector<std::vector<double>>& numerical,
                              const std::vector<std::vector<double>>& reference, double cell_size) {
  if (numerical.size() != reference.size())
    throw std::invalid_argument("error_norms: cell counts differ");
  ErrorNorms e;
  const std::size_t m = numerical.empty() ? 0 : numerical.front().size();
  e.l1.assign(m, 0.0);
  e.linf.assign(m, 0.0);
  for (std::size_t i = 0; i < numerical.size(); ++i) {
    if (numerical[i].size() != m || reference[i].size() != m)
      throw std::invalid_argument("error_norms: component counts differ");
    for (std::size_t c = 0; c < m; ++c) {
      const double d = std::abs(numerical[i][c] - reference[i][c]);
      e.l1[c] += d;
      e.linf[c] = std::max(e.linf[c], d);
    }
  }
  for (double& v : e.l1) v *= cell_size;
  return e;
}

// ---------------------------------------------------------------------------
// Runs

struct RunOptions {
  std::optional<int> cells;
  std::optional<double> cfl;
  std::optional<double> t_final;
  /// Resolution factor of fine-grid references; 0 disables them.
  int reference_factor = 20;
  /// Also compute a fine-grid reference for 2D cases (expensive).
  bool reference_2d = false;
  bool keep_field = true;
};

struct RunReport {
  std::string case_name;
  std::string label;
  int cells = 0;
  double cfl = 0.0;
  double t_final = 0.0;
  double time_reached = 0.0;
  RunStatus status = RunStatus::completed;
  std::string message;
  long long steps = 0;
  StepCounters counters;
  double seconds = 0.0;
  bool has_error = false;
  ReferenceKind reference = ReferenceKind::none;
  ErrorNorms errors;
  double max_abs = 0.0;
  std::string csv;
  /// Interior states, one row per cell (x fastest in 2D).
  std::vector<std::vector<double>> field;

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["case"] = case_name;
    j["scheme"] = label;
    j["cells"] = cells;
    j["cfl"] = cfl;
    j["t_final"] = t_final;
    j["time_reached"] = time_reached;
    j["status"] = to_string(status);
    if (!message.empty()) j["message"] = message;
    j["steps"] = steps;
    j["rhs_evaluations"] = counters.rhs_evaluations;
    j["flux_evaluations"] = counters.flux_evaluations;
    j["fallbacks"] = counters.fallbacks;
    j["seconds"] = seconds;
    j["max_abs"] = max_abs;
    j["reference"] = harness::to_string(reference);
    if (has_error) {
      j["l1"] = errors.l1;
      j["linf"] = errors.linf;
    }
    return j;
  }
};

namespace detail {

template <class S>
std::vector<std::vector<double>> rows_1d(const Field1D<S>& f) {
  std::vector<std::vector<double>> r;
  r.reserve(static_cast<std::size_t>(f.cells()));
  for (int i = 0; i < f.cells(); ++i) r.emplace_back(f[i].begin(), f[i].end());
  return r;
}

template <class S>
std::vector<std::vector<double>> rows_2d(const Field2D<S>& f) {
  std::vector<std::vector<double>> r;
  r.reserve(static_cast<std::size_t>(f.x.cells) * f.y.cells);
  for (int j = 0; j < f.y.cells; ++j)
    for (int i = 0; i < f.x.cells; ++i) r.emplace_back(f(i, j).begin(), f(i, j).end());
  return r;
}

/// Fine-grid point values restricted to the coarse cell centres (the mean of
/// the one or two fine cells whose centres straddle each coarse centre).
inline std::vector<std::vector<double>> restrict_1d(const std::vector<std::vector<double>>& fine,
                                                    int factor) {
  std::vector<std::vector<double>> coarse(fine.size() / static_cast<std::size_t>(factor));
  for (std::size_t i = 0; i < coarse.size(); ++i) {
    const std::size_t base = i * static_cast<std::size_t>(factor);
    if (factor % 2 == 1) {
      coarse[i] = fine[base + static_cast<std::size_t>(factor / 2)];
    } else {
      const auto& a = fine[base + static_cast<std::size_t>(factor / 2 - 1)];
      const auto& b = fine[base + static_cast<std::size_t>(factor / 2)];
      coarse[i].resize(a.size());
      for (std::size_t c = 0; c < a.size(); ++c) coarse[i][c] = 0.5 * (a[c] + b[c]);
    }
  }
  return coarse;
}

inline std::vector<std::vector<double>> restrict_2d(const std::vector<std::vector<double>>& fine,
                                                    int n_fine, int factor) {
  const int n = n_fine / factor;
  std::vector<std::vector<double>> coarse(static_cast<std::size_t>(n) * n);
  std::vector<int> taps;
  if (factor % 2 == 1)
    taps = {factor / 2};
  else
    taps = {factor / 2 - 1, factor / 2};
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      std::vector<double> acc(fine.front().size(), 0.0);
      for (int b : taps)
        for (int a : taps) {
          const auto& v = fine[static_cast<std::size_t>(j * factor + b) * n_fine +
                               static_cast<std::size_t>(i * factor + a)];
          for (std::size_t c = 0; c < acc.size(); ++c) acc[c] += v[c];
        }
      for (double& x : acc) x /= static_cast<double>(taps.size() * taps.size());
      coarse[static_cast<std::size_t>(j) * n + i] = std::move(acc);
    }
  return coarse;
}

inline double max_abs(const std::vector<std::vector<double>>& rows) {
  double m = 0.0;
  for (const auto& r : rows)
    for (double v : r) m = std::max(m, std::abs(v));
  return m;
}

inline double profile_value(const TestCase& c, double x) {
  switch (c.profile) {
    case Profile::test1:
      return test1_profile(x);
    case Profile::sine:
      return std::sin(2.0 * std::numbers::pi * x);
    case Profile::gaussian:
      return gaussian_burgers_profile(x);
    case Profile::riemann:
      break;
  }
  throw std::logic_error("profile_value: not a scalar profile");
}

inline double profile_slope(const TestCase& c, double x) {
  switch (c.profile) {
    case Profile::sine:
      return 2.0 * std::numbers::pi * std::cos(2.0 * std::numbers::pi * x);
    case Profile::gaussian:
      return -20.0 * (x - 0.5) * gaussian_burgers_profile(x);
    default:
      break;
  }
  throw std::logic_error("profile_slope: no derivative for this profile");
}

template <class Model>
RunReport run_scalar_or_1d(const TestCase& c, const SchemeLabel& label, const Model& model,
                           const RunOptions& o);

inline RunReport run_2d(const TestCase& c, const SchemeLabel& label, const RunOptions& o);

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

template <class Model>
Field1D<typename Model::state_type> initial_1d(const TestCase& c, const Model& model, Axis axis) {
  if constexpr (std::is_same_v<Model, Euler1D>) {
    return init_riemann_1d(axis, model, c.left, c.right, c.x_split);
  } else {
    (void)model;
    return sample_scalar(axis, [&](double x) { return profile_value(c, x); });
  }
}

template <class Model>
void fill_report(RunReport& rep, const AdvanceResult& res, const Solver1D<Model>& solver,
                 double seconds) {
  rep.status = res.status;
  rep.message = res.message;
  rep.steps = res.steps;
  rep.counters = solver.counters();
  rep.seconds = seconds;
}

template <class Model>
RunReport run_scalar_or_1d(const TestCase& c, const SchemeLabel& label, const Model& model,
                           const RunOptions& o) {
  RunReport rep;
  rep.case_name = c.name;
  rep.label = label.text();
  rep.cells = o.cells.value_or(c.cells);
  rep.cfl = o.cfl.value_or(c.default_cfl(label.order));
  rep.t_final = o.t_final.value_or(c.t_final);
  const SchemeConfig scheme = make_scheme(label, rep.cfl);
  const Axis axis{c.lower, c.upper, rep.cells, scheme.ghost_width()};
  Solver1D<Model> solver(model, scheme, axis, c.boundary);
  auto u = initial_1d(c, model, axis);

  Timer timer;
  const AdvanceResult res = solver.advance(u, rep.t_final);
  fill_report(rep, res, solver, timer.seconds());
  rep.time_reached = u.time;
  rep.field = rows_1d(u);
  rep.max_abs = max_abs(rep.field);
  if (o.keep_field) rep.csv = to_csv(u);
  if (res.status != RunStatus::completed) return rep;

  std::vector<std::vector<double>> ref;
  if (c.reference == ReferenceKind::exact) {
    ref.resize(static_cast<std::size_t>(rep.cells));
    if constexpr (std::is_same_v<Model, Euler1D>) {
      const auto sol = exact::solve_riemann(c.left, c.right, model.gamma);
      for (int i = 0; i < rep.cells; ++i) {
        const auto w = model.to_conserved(sol.sample((axis.center(i) - c.x_split) / u.time));
        ref[static_cast<std::size_t>(i)] = {w[0], w[1], w[2]};
      }
    } else if constexpr (std::is_same_v<Model, Burgers>) {
      const exact::BurgersCharacteristic bc([&](double x) { return profile_value(c, x); },
                                            [&](double x) { return profile_slope(c, x); },
                                            c.lower, c.upper);
      for (int i = 0; i < rep.cells; ++i)
        ref[static_cast<std::size_t>(i)] = {bc(axis.center(i), u.time)};
    } else {
      for (int i = 0; i < rep.cells; ++i)
        ref[static_cast<std::size_t>(i)] = {exact::advection_exact(
            [&](double x) { return profile_value(c, x); }, model.speed, axis.center(i), u.time,
            c.lower, c.upper)};
    }
    rep.reference = ReferenceKind::exact;
  } else if (c.reference == ReferenceKind::fine_grid && o.reference_factor > 0) {
    const SchemeLabel ref_label{true, 5, 'C', 4};
    const SchemeConfig rs = make_scheme(ref_label, c.default_cfl(5));
    const Axis fine{c.lower, c.upper, rep.cells * o.reference_factor, rs.ghost_width()};
    Solver1D<Model> rsolver(model, rs, fine, c.boundary);
    auto uf = initial_1d(c, model, fine);
    const AdvanceResult rr = rsolver.advance(uf, u.time);
    if (rr.status != RunStatus::completed)
      throw std::runtime_error("fine-grid reference failed: " + rr.message);
    ref = restrict_1d(rows_1d(uf), o.reference_factor);
    rep.reference = ReferenceKind::fine_grid;
  }
  if (!ref.empty()) {
    rep.errors = error_norms(rep.field, ref, axis.dx());
    rep.has_error = true;
  }
  return rep;
}

inline RunReport run_2d(const TestCase& c, const SchemeLabel& label, const RunOptions& o) {
  RunReport rep;
  rep.case_name = c.name;
  rep.label = label.text();
  rep.cells = o.cells.value_or(c.cells);
  rep.cfl = o.cfl.value_or(c.default_cfl(label.order));
  rep.t_final = o.t_final.value_or(c.t_final);
  const Euler2D model{c.gamma};
  const SchemeConfig scheme = make_scheme(label, rep.cfl);
  const Axis axis{c.lower, c.upper, rep.cells, scheme.ghost_width()};
  Solver2D<Euler2D> solver(model, scheme, axis, axis, c.boundary);
  auto u = init_riemann_2d(axis, axis, model, c.quadrants);

  Timer timer;
  const AdvanceResult res = solver.advance(u, rep.t_final);
  rep.seconds = timer.seconds();
  rep.status = res.status;
  rep.message = res.message;
  rep.steps = res.steps;
  rep.counters = solver.counters();
  rep.time_reached = u.time;
  rep.field = rows_2d(u);
  rep.max_abs = max_abs(rep.field);
  if (o.keep_field) rep.csv = to_csv(u);
  if (res.status != RunStatus::completed || !o.reference_2d || o.reference_factor <= 0) return rep;

  const SchemeLabel ref_label{true, 5, 'C', 4};
  const SchemeConfig rs = make_scheme(ref_label, c.default_cfl(5));
  const Axis fine{c.lower, c.upper, rep.cells * o.reference_factor, rs.ghost_width()};
  Solver2D<Euler2D> rsolver(model, rs, fine, fine, c.boundary);
  auto uf = init_riemann_2d(fine, fine, model, c.quadrants);
  const AdvanceResult rr = rsolver.advance(uf, u.time);
  if (rr.status != RunStatus::completed)
    throw std::runtime_error("fine-grid reference failed: " + rr.message);
  const auto ref = restrict_2d(rows_2d(uf), fine.cells, o.reference_factor);
  rep.errors = error_norms(rep.field, ref, axis.dx() * axis.dx());
  rep.has_error = true;
  rep.reference = ReferenceKind::fine_grid;
  return rep;
}

}  // namespace detail

inline RunReport run_case(const TestCase& c, const std::string& label_text,
                          const RunOptions& o = {}) {
  const SchemeLabel label = parse_label(label_text);
  switch (c.model) {
    case ModelKind::advection:
      return detail::run_scalar_or_1d(c, label, LinearAdvection{c.speed}, o);
    case ModelKind::burgers:
      return detail::run_scalar_or_1d(c, label, Burgers{}, o);
    case ModelKind::euler1d:
      return detail::run_scalar_or_1d(c, label, Euler1D{c.gamma}, o);
    case ModelKind::euler2d:
      return detail::run_2d(c, label, o);
  }
  throw std::logic_error("run_case: unknown model");
}

// ---------------------------------------------------------------------------
// Convergence tables

struct EocRow {
  int cells = 0;
  double l1 = 0.0;
  double linf = 0.0;
  std::optional<double> order_l1;
  std::optional<double> order_linf;
};

/// Orders log2(e_k / e_{k+1}) of an error sequence on halving meshes.
inline std::vector<std::optional<double>> observed_orders(const std::vector<double>& errors) {
  std::vector<std::optional<double>> out(errors.size());
  for (std::size_t k = 1; k < errors.size(); ++k)
    if (errors[k] > 0.0 && errors[k - 1] > 0.0) out[k] = std::log2(errors[k - 1] / errors[k]);
  return out;
}

/// Errors of component `component` over a mesh sequence.
inline std::vector<EocRow> eoc_table(const TestCase& c, const std::string& label,
                                     const std::vector<int>& meshes, RunOptions o = {},
                                     int component = 0) {
  std::vector<EocRow> rows;
  std::vector<double> l1, linf;
  o.keep_field = false;
  for (int n : meshes) {
    o.cells = n;
    const RunReport r = run_case(c, label, o);
    if (r.status != RunStatus::completed)
      throw std::runtime_error("eoc: " + label + " on " + std::to_string(n) + " cells " +
                               to_string(r.status) + ": " + r.message);
    if (!r.has_error) throw std::runtime_error("eoc: case " + c.name + " has no reference");
    rows.push_back({n, r.errors.l1.at(static_cast<std::size_t>(component)),
                    r.errors.linf.at(static_cast<std::size_t>(component)), {}, {}});
    l1.push_back(rows.back().l1);
    linf.push_back(rows.back().linf);
  }
  const auto o1 = observed_orders(l1), oi = observed_orders(linf);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    rows[k].order_l1 = o1[k];
    rows[k].order_linf = oi[k];
  }
  return rows;
}

inline std::string format_eoc(const std::vector<EocRow>& rows) {
  std::ostringstream os;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%8s %14s %8s %14s %8s\n", "N", "L1", "order", "Linf", "order");
  os << buf;
  for (const auto& r : rows) {
    auto ord = [](const std::optional<double>& v) {
      char b[32];
      if (v)
        std::snprintf(b, sizeof b, "%8.3f", *v);
      else
        std::snprintf(b, sizeof b, "%8s", "-");
      return std::string(b);
    };
    std::snprintf(buf, sizeof buf, "%8d %14.6e %s %14.6e %s\n", r.cells, r.l1,
                  ord(r.order_l1).c_str(), r.linf, ord(r.order_linf).c_str());
    os << buf;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Benchmarks

struct BenchEntry {
  std::string label;
  double mean_seconds = 0.0;
  double ratio = 0.0;
};

struct BenchTable {
  std::string case_name;
  std::string reference;
  int repetitions = 0;
  std::vector<BenchEntry> entries;
};

/// Reference scheme of the CPU-ratio tables for a case.
inline std::string default_bench_reference(const TestCase& c) {
  if (c.id == 7 || c.id == 9) return "W3C2";
  return "W5R3";
}

/// Mean wall-clock time of `repetitions` serial runs per scheme (time
/// stepping only), as ratios against `reference`.
inline BenchTable benchmark(const TestCase& c, std::vector<std::string> labels,
                            const std::string& reference, int repetitions = 10,
                            RunOptions o = {}) {
  if (repetitions < 1) throw std::invalid_argument("bench: repetitions must be >= 1");
  parse_label(reference);
  if (std::find(labels.begin(), labels.end(), reference) == labels.end())
    labels.push_back(reference);
  o.keep_field = false;
  o.reference_factor = 0;
  BenchTable t{c.name, reference, repetitions, {}};
  for (const auto& l : labels) {
    double total = 0.0;
    for (int r = 0; r < repetitions; ++r) {
      const RunReport rep = run_case(c, l, o);
      total += rep.seconds;
    }
    t.entries.push_back({l, total / repetitions, 0.0});
  }
  double ref_time = 0.0;
  for (const auto& e : t.entries)
    if (e.label == reference) ref_time = e.mean_seconds;
  for (auto& e : t.entries) e.ratio = e.label == reference ? 1.0 : e.mean_seconds / ref_time;
  return t;
}

/// Rows of six schemes, a label line followed by a ratio line, like the
/// published CPU-ratio tables.
inline std::string format_bench(const BenchTable& t) {
  std::ostringstream os;
  os << "# CPU time ratios, case " << t.case_name << ", reference " << t.reference << ", mean of "
     << t.repetitions << " runs\n";
  char buf[64];
  for (std::size_t start = 0; start < t.entries.size(); start += 6) {
    const std::size_t end = std::min(t.entries.size(), start + 6);
    for (std::size_t k = start; k < end; ++k) {
      std::snprintf(buf, sizeof buf, "%s%10s", k == start ? "" : " |", t.entries[k].label.c_str());
      os << buf;
    }
    os << "\n";
    for (std::size_t k = start; k < end; ++k) {
      std::snprintf(buf, sizeof buf, "%s%10.4f", k == start ? "" : " |", t.entries[k].ratio);
      os << buf;
    }
    os << "\n";
  }
  return os.str();
}

/// Hardware-independent cost surrogate: arithmetic operations of one call
/// to each smoothness-indicator kernel.
inline std::string format_indicator_costs() {
  std::ostringstream os;
  os << "# smoothness indicator operations per reconstruction (additions + multiplications)\n";
  for (int p = 1; p <= 3; ++p) {
    const OpTally fast = fast_indicator_op_count(p);
    const OpTally js = jiang_shu_op_count(p);
    os << "p=" << p << " fast=" << fast.total() << " jiang-shu=" << js.total() << "\n";
  }
  return os.str();
}

}  // namespace atweno::harness
