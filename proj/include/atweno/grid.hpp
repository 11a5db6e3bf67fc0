#pragma once

/// \file grid.hpp
/// \brief Uniform cell-centred grids with ghost layers, boundary filling,
/// initial data for the test catalogue and CSV output.

#include "atweno/models.hpp"

#include <cmath>
#include <cstddef>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace atweno {

enum class Boundary { periodic, outflow };

/// One axis: [lower, upper] split into `cells` cells with `ghost` extra cells
/// on each side. Cell centres are x_i = lower + (i + 1/2) dx.
struct Axis {
  double lower = 0.0;
  double upper = 1.0;
  int cells = 0;
  int ghost = 0;

  double dx() const { return (upper - lower) / cells; }
  double center(int i) const { return lower + (i + 0.5) * dx(); }
  int extent() const { return cells + 2 * ghost; }

  void validate() const {
    if (!(upper > lower)) throw std::invalid_argument("grid: upper bound must exceed lower bound");
    if (ghost < 1) throw std::invalid_argument("grid: ghost width must be >= 1");
    if (cells < 2 * ghost)
      throw std::invalid_argument("grid: " + std::to_string(cells) +
                                  " cells cannot hold stencils needing " + std::to_string(ghost) +
                                  " ghost cells (need >= " + std::to_string(2 * ghost) + ")");
  }
};

template <class S>
struct Field1D {
  Axis x;
  double time = 0.0;
  std::vector<S> data;

  Field1D() = default;
  explicit Field1D(Axis axis) : x(axis), data(static_cast<std::size_t>(axis.extent())) {
    x.validate();
  }

  int cells() const { return x.cells; }
  int ghost() const { return x.ghost; }
  double dx() const { return x.dx(); }

  // Index i runs over -ghost .. cells + ghost - 1.
  S& operator[](int i) { return data[static_cast<std::size_t>(i + x.ghost)]; }
  const S& operator[](int i) const { return data[static_cast<std::size_t>(i + x.ghost)]; }
};

template <class S>
struct Field2D {
  Axis x;
  Axis y;
  double time = 0.0;
  std::vector<S> data;

  Field2D() = default;
  Field2D(Axis ax, Axis ay)
      : x(ax), y(ay), data(static_cast<std::size_t>(ax.extent()) * ay.extent()) {
    x.validate();
    y.validate();
  }

  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j + y.ghost) * x.extent() + static_cast<std::size_t>(i + x.ghost);
  }
  S& operator()(int i, int j) { return data[index(i, j)]; }
  const S& operator()(int i, int j) const { return data[index(i, j)]; }
};

namespace detail {

inline int wrap_index(int i, int n) {
  const int r = i % n;
  return r < 0 ? r + n : r;
}

inline int source_index(int i, int n, Boundary bc) {
  if (i >= 0 && i < n) return i;
  if (bc == Boundary::periodic) return wrap_index(i, n);
  return i < 0 ? 0 : n - 1;
}

}  // namespace detail

template <class S>
void fill_ghosts(Field1D<S>& f, Boundary bc) {
  const int n = f.cells();
  const int g = f.ghost();
  for (int i = -g; i < 0; ++i) f[i] = f[detail::source_index(i, n, bc)];
  for (int i = n; i < n + g; ++i) f[i] = f[detail::source_index(i, n, bc)];
}

/// Fills x ghosts on interior rows, then y ghosts on every column. Corners
/// therefore take the doubly wrapped (or doubly copied) interior value.
template <class S>
void fill_ghosts(Field2D<S>& f, Boundary bc_x, Boundary bc_y) {
  const int nx = f.x.cells, ny = f.y.cells;
  const int gx = f.x.ghost, gy = f.y.ghost;
  for (int j = 0; j < ny; ++j) {
    for (int i = -gx; i < 0; ++i) f(i, j) = f(detail::source_index(i, nx, bc_x), j);
    for (int i = nx; i < nx + gx; ++i) f(i, j) = f(detail::source_index(i, nx, bc_x), j);
  }
  for (int i = -gx; i < nx + gx; ++i) {
    for (int j = -gy; j < 0; ++j) f(i, j) = f(i, detail::source_index(j, ny, bc_y));
    for (int j = ny; j < ny + gy; ++j) f(i, j) = f(i, detail::source_index(j, ny, bc_y));
  }
}

template <class S>
void fill_ghosts(Field2D<S>& f, Boundary bc) {
  fill_ghosts(f, bc, bc);
}

// ---------------------------------------------------------------------------
// Initial data

/// Linear-transport profile on [0, 2]: Gaussian, triangle, plateau and
/// half-ellipse features. Overlapping printed intervals are resolved by giving
/// the first four branches priority and the half-ellipse its real support.
inline double test1_profile(double x) {
  if (x >= 0.0 && x < 2.0 / 3.0) return std::exp(-1200.0 * (x - 1.0 / 3.0) * (x - 1.0 / 3.0));
  if (x >= 2.0 / 3.0 && x < 5.0 / 6.0) return 6.0 * (x - 2.0 / 3.0);
  if (x >= 5.0 / 6.0 && x < 1.0) return -6.0 * (x - 1.0);
  if (x >= 7.0 / 6.0 && x <= 4.0 / 3.0) return 1.0;
  const double arg = 1.0 - 100.0 * (x - 5.0 / 3.0) * (x - 5.0 / 3.0);
  if (x > 4.0 / 3.0 && x <= 2.0 && arg >= 0.0) return std::sqrt(arg);
  return 0.0;
}

inline double gaussian_burgers_profile(double x) {
  return std::exp(-10.0 * (x - 0.5) * (x - 0.5));
}

template <class Fn>
Field1D<State<1>> sample_scalar(Axis axis, Fn&& u0) {
  Field1D<State<1>> f(axis);
  for (int i = 0; i < axis.cells; ++i) f[i] = {u0(axis.center(i))};
  return f;
}

inline Field1D<State<1>> init_test1(Axis axis) {
  if (axis.lower != 0.0 || axis.upper != 2.0)
    throw std::invalid_argument("init_test1: domain must be [0, 2]");
  return sample_scalar(axis, test1_profile);
}

inline Field1D<State<1>> init_gaussian_burgers(Axis axis) {
  return sample_scalar(axis, gaussian_burgers_profile);
}

/// Piecewise-constant Riemann data; a centre exactly on the split belongs to
/// the right state.
inline Field1D<State<3>> init_riemann_1d(Axis axis, const Euler1D& model,
                                         const EulerPrimitive1D& left,
                                         const EulerPrimitive1D& right, double x_split = 0.5) {
  Field1D<State<3>> f(axis);
  const auto wl = model.to_conserved(left);
  const auto wr = model.to_conserved(right);
  for (int i = 0; i < axis.cells; ++i) f[i] = axis.center(i) < x_split ? wl : wr;
  return f;
}

/// Quadrant states numbered counter-clockwise from the upper right:
/// 1 = (x >= xs, y >= ys), 2 = upper left, 3 = lower left, 4 = lower right.
struct QuadrantData {
  std::array<EulerPrimitive2D, 4> states;
  double x_split = 0.5;
  double y_split = 0.5;
};

inline Field2D<State<4>> init_riemann_2d(Axis ax, Axis ay, const Euler2D& model,
                                         const QuadrantData& q) {
  Field2D<State<4>> f(ax, ay);
  std::array<State<4>, 4> w;
  for (int k = 0; k < 4; ++k) w[k] = model.to_conserved(q.states[k]);
  for (int j = 0; j < ay.cells; ++j) {
    const bool upper = ay.center(j) >= q.y_split;
    for (int i = 0; i < ax.cells; ++i) {
      const bool right = ax.center(i) >= q.x_split;
      const int quadrant = upper ? (right ? 0 : 1) : (right ? 3 : 2);
      f(i, j) = w[quadrant];
    }
  }
  return f;
}

// ---------------------------------------------------------------------------
// CSV

namespace detail {

inline void append_number(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
  os << text;
  if (!os) throw std::runtime_error("failed writing '" + path + "'");
}

inline std::string header(int dims, int m) {
  std::string h = dims == 1 ? "x" : "x,y";
  for (int c = 0; c < m; ++c) h += ",comp" + std::to_string(c);
  return h + "\n";
}

}  // namespace detail

/// Interior cells as CSV text: `x,comp0,...` with 17 significant digits.
template <std::size_t M>
std::string to_csv(const Field1D<std::array<double, M>>& f) {
  std::string out = detail::header(1, static_cast<int>(M));
  for (int i = 0; i < f.cells(); ++i) {
    detail::append_number(out, f.x.center(i));
    for (double v : f[i]) {
      out += ',';
      detail::append_number(out, v);
    }
    out += '\n';
  }
  return out;
}

/// Row-major (x fastest) `x,y,comp0,...`.
template <std::size_t M>
std::string to_csv(const Field2D<std::array<double, M>>& f) {
  std::string out = detail::header(2, static_cast<int>(M));
  for (int j = 0; j < f.y.cells; ++j)
    for (int i = 0; i < f.x.cells; ++i) {
      detail::append_number(out, f.x.center(i));
      out += ',';
      detail::append_number(out, f.y.center(j));
      for (double v : f(i, j)) {
        out += ',';
        detail::append_number(out, v);
      }
      out += '\n';
    }
  return out;
}

template <class FieldT>
void write_csv(const FieldT& f, const std::string& path) {
  detail::write_text(path, to_csv(f));
}

/// Parsed CSV table: header names and numeric rows.
struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

inline CsvTable read_csv(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open '" + path + "' for reading");
  CsvTable t;
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("'" + path + "' is empty");
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) t.columns.push_back(cell);
  }
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    if (row.size() != t.columns.size())
      throw std::runtime_error("'" + path + "': ragged row");
    t.rows.push_back(std::move(row));
  }
  return t;
}

/// Rebuilds a 1D field from a CSV written by `write_csv`.
template <std::size_t M>
Field1D<std::array<double, M>> field_from_csv(const CsvTable& t, Axis axis) {
  if (t.columns.size() != M + 1) throw std::runtime_error("csv: column count mismatch");
  if (t.rows.size() != static_cast<std::size_t>(axis.cells))
    throw std::runtime_error("csv: row count mismatch");
  Field1D<std::array<double, M>> f(axis);
  for (int i = 0; i < axis.cells; ++i)
    for (std::size_t c = 0; c < M; ++c) f[i][c] = t.rows[static_cast<std::size_t>(i)][c + 1];
  return f;
}

}  // namespace atweno
