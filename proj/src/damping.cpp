#include "damping.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dfkg {

bool shape_contains(const Shape& shape, const Point& x, int dim) {
  if (const Ball* b = std::get_if<Ball>(&shape)) {
    double q = 0.0;
    for (int a = 0; a < dim; ++a) {
      const double t = x[a] - b->center[a];
      q += t * t;
    }
    return q < b->radius * b->radius;
  }
  const Box& box = std::get<Box>(shape);
  for (int a = 0; a < dim; ++a)
    if (x[a] < box.lo[a] || x[a] >= box.hi[a]) return false;
  return true;
}

namespace {

double bump_profile(double rho_sq) {
  // C-infinity bump: 1 at the center, 0 outside the unit radius.
  if (rho_sq >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - rho_sq));
}

double eval_smooth(const SmoothBump& sb, const Point& x, int dim) {
  double v = sb.base;
  for (const Ball& dip : sb.dips) {
    double q = 0.0;
    for (int a = 0; a < dim; ++a) {
      const double t = x[a] - dip.center[a];
      q += t * t;
    }
    v *= 1.0 - bump_profile(q / (dip.radius * dip.radius));
  }
  return v;
}

Point reduce_to_cell(const Point& x, double cell, int dim) {
  Point y{0.0, 0.0};
  for (int a = 0; a < dim; ++a) {
    y[a] = std::fmod(x[a], cell);
    if (y[a] < 0.0) y[a] += cell;
  }
  return y;
}

}  // namespace

double DampingSpec::bound() const {
  return std::visit(
      [](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Constant>) return v.a0;
        if constexpr (std::is_same_v<T, IndicatorComplement>) return v.level;
        if constexpr (std::is_same_v<T, PeriodicPattern>) return v.level;
        if constexpr (std::is_same_v<T, SmoothBump>) return v.base;
        if constexpr (std::is_same_v<T, GridSampled>)
          return v.values.size() > 0 ? v.values.maxCoeff() : 0.0;
      },
      variant);
}

bool DampingSpec::is_periodic() const {
  return std::holds_alternative<PeriodicPattern>(variant);
}

double DampingSpec::period() const {
  if (const auto* p = std::get_if<PeriodicPattern>(&variant)) return p->cell;
  return 0.0;
}

double eval(const DampingSpec& spec, const Point& x, const TorusGrid& grid) {
  const int d = grid.dim();
  if (!std::holds_alternative<GridSampled>(spec.variant)) {
    const double half = grid.length() / 2.0;
    for (int a = 0; a < d; ++a)
      if (x[a] < -half - 1e-12 || x[a] > half + 1e-12)
        throw std::invalid_argument("eval: point outside the box");
  }
  return eval_extended(spec, x, d);
}

double eval_extended(const DampingSpec& spec, const Point& x, int d) {
  return std::visit(
      [&](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Constant>) {
          return v.a0;
        } else if constexpr (std::is_same_v<T, IndicatorComplement>) {
          for (const Shape& s : v.shapes)
            if (shape_contains(s, x, d)) return 0.0;
          return v.level;
        } else if constexpr (std::is_same_v<T, PeriodicPattern>) {
          const Point y = reduce_to_cell(x, v.cell, d);
          for (const Shape& s : v.shapes)
            if (shape_contains(s, y, d)) return v.level;
          return 0.0;
        } else if constexpr (std::is_same_v<T, SmoothBump>) {
          return eval_smooth(v, x, d);
        } else {
          return v.values[v.grid.nearest_node(x)];
        }
      },
      spec.variant);
}

Eigen::VectorXd sample(const DampingSpec& spec, const TorusGrid& grid) {
  Eigen::VectorXd a(grid.size());
  for (Eigen::Index k = 0; k < grid.size(); ++k)
    a[k] = eval(spec, grid.node(k), grid);
  if (a.size() > 0 && a.minCoeff() < 0.0)
    throw std::invalid_argument("damping: negative value sampled");
  return a;
}

SublevelMask sublevel_mask(const DampingSpec& spec, const TorusGrid& grid,
                           double epsilon) {
  if (!(epsilon > 0.0))
    throw std::invalid_argument("sublevel_mask: epsilon must be > 0");
  SublevelMask m;
  m.grid = grid;
  m.epsilon = epsilon;
  m.mask.assign(grid.size(), 0);
  const Eigen::VectorXd a = sample(spec, grid);
  for (Eigen::Index k = 0; k < grid.size(); ++k) {
    if (a[k] < epsilon) {
      m.mask[k] = 1;
      ++m.count;
    }
  }
  m.node_fraction =
      static_cast<double>(m.count) / static_cast<double>(grid.size());
  double volume = 1.0;
  for (int ax = 0; ax < grid.dim(); ++ax) volume *= grid.length();
  m.measure_estimate = m.node_fraction * volume;
  return m;
}

DampingSpec damping_preset(const std::string& name, int dim) {
  if (name == "constant") return DampingSpec{Constant{1.0}};
  if (name == "interval-gap") {
    if (dim != 1) throw std::invalid_argument("interval-gap preset is 1-d");
    return DampingSpec{IndicatorComplement{{Ball{{0.0, 0.0}, 1.0}}, 1.0}};
  }
  if (name == "ball-lattice") {
    if (dim != 2) throw std::invalid_argument("ball-lattice preset is 2-d");
    return DampingSpec{PeriodicPattern{1.0, {Ball{{0.5, 0.5}, 0.3}}, 1.0}};
  }
  if (name == "grid-lines") {
    if (dim != 2) throw std::invalid_argument("grid-lines preset is 2-d");
    // Slabs along both cell edges; tiles into the full lattice of lines.
    return DampingSpec{PeriodicPattern{
        1.0,
        {Box{{0.0, 0.0}, {0.2, 1.0}}, Box{{0.0, 0.0}, {1.0, 0.2}}},
        1.0}};
  }
  if (name == "finite-sublevel")
    return DampingSpec{IndicatorComplement{{Ball{{0.0, 0.0}, 1.0}}, 1.0}};
  if (name == "smooth-bumps") {
    SmoothBump sb;
    sb.base = 1.0;
    sb.dips = {Ball{{-2.0, 0.0}, 0.5}, Ball{{2.0, 0.0}, 0.5}};
    return DampingSpec{sb};
  }
  throw std::invalid_argument("unknown damping preset: " + name);
}

std::vector<std::string> damping_preset_names() {
  return {"constant",        "interval-gap", "ball-lattice",
          "grid-lines",      "finite-sublevel", "smooth-bumps"};
}

}  // namespace dfkg
