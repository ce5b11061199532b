#pragma once

#include "grid.hpp"

#include <string>
#include <variant>
#include <vector>

namespace dfkg {

struct Ball {
  Point center{0.0, 0.0};
  double radius = 0.0;
};

struct Box {
  Point lo{0.0, 0.0};
  Point hi{0.0, 0.0};
};

using Shape = std::variant<Ball, Box>;

bool shape_contains(const Shape& shape, const Point& x, int dim);

// a(x) = a0 everywhere.
struct Constant {
  double a0 = 0.0;
};

// a(x) = level outside the union of shapes, 0 inside. The sublevel set
// S(a, eps) for 0 < eps <= level is exactly the shape union.
struct IndicatorComplement {
  std::vector<Shape> shapes;
  double level = 1.0;
};

// a(x) = level on the periodically tiled copy of `shape` (given in cell
// coordinates [0, cell)^d), 0 elsewhere. The damped region is the pattern.
struct PeriodicPattern {
  double cell = 1.0;
  std::vector<Shape> shapes;
  double level = 1.0;
};

// a(x) = base * prod_i (1 - bump_i(x)) with smooth compactly supported
// bumps equal to 1 at their centers, so a dips to exactly 0 there.
struct SmoothBump {
  double base = 1.0;
  std::vector<Ball> dips;
};

// Nonnegative samples on grid nodes; evaluation snaps to the nearest node
// (periodic wrap).
struct GridSampled {
  TorusGrid grid;
  Eigen::VectorXd values;
};

struct DampingSpec {
  std::variant<Constant, IndicatorComplement, PeriodicPattern, SmoothBump,
               GridSampled>
      variant;
  double bound() const;  // ||a||_inf
  bool is_periodic() const;
  double period() const;  // meaningful when is_periodic()
};

// Pointwise value a(x). Symbolic variants reject points outside the closed
// box [-L/2, L/2]^d (no silent wrap); GridSampled wraps to the nearest node.
double eval(const DampingSpec& spec, const Point& x, const TorusGrid& grid);

// Same formula on all of R^d, no box guard. The geometric checks quantify
// over points slightly outside the box.
double eval_extended(const DampingSpec& spec, const Point& x, int dim);

// Node samples of a over the grid.
Eigen::VectorXd sample(const DampingSpec& spec, const TorusGrid& grid);

// S(a, eps) = { x : a(x) < eps } on grid nodes.
struct SublevelMask {
  TorusGrid grid;
  double epsilon = 0.0;
  std::vector<char> mask;
  Eigen::Index count = 0;
  double node_fraction = 0.0;
  double measure_estimate = 0.0;  // fraction * L^d
};

SublevelMask sublevel_mask(const DampingSpec& spec, const TorusGrid& grid,
                           double epsilon);

// Named presets used throughout the tests and shipped scenarios.
//   constant        a = 1                                  (d = 1 or 2)
//   interval-gap    a = 1 outside [-1, 1]                  (d = 1)
//   ball-lattice    a = 1 on balls of radius 0.3 tiled with unit cells (d = 2)
//   grid-lines      a = 1 on slabs of width 0.2 along the cell edges   (d = 2)
//   finite-sublevel a = 1 outside the unit ball            (d = 1 or 2)
//   smooth-bumps    a = 1 with two smooth dips to 0        (d = 1 or 2)
DampingSpec damping_preset(const std::string& name, int dim);
std::vector<std::string> damping_preset_names();

}  // namespace dfkg
