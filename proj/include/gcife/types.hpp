#pragma once

#include <Eigen/Dense>
#include <array>

namespace gcife {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

/// Closed real interval [lo, hi].
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
};

/// Quadrilateral element given by its corners in counterclockwise order.
using Quad = std::array<Vec2, 4>;

/// Piecewise-constant diffusion coefficient (beta^-, beta^+).
struct Betas {
  double minus = 1.0;
  double plus = 1.0;
};

}  // namespace gcife
