#include "cvtel/quadrature.hpp"

#include <cmath>
#include <numbers>

namespace cvtel {

QuadratureGrid make_grid(double radius, int points_per_axis) {
  if (!(radius > 0.0)) throw std::invalid_argument("make_grid: radius must be > 0");
  if (points_per_axis < 1)
    throw std::invalid_argument("make_grid: points_per_axis must be >= 1");
  QuadratureGrid g;
  g.radius = radius;
  g.points_per_axis = points_per_axis;
  const double h = g.cell_width();
  const double w = h * h;
  g.nodes.reserve(static_cast<std::size_t>(points_per_axis) * points_per_axis);
  for (int i = 0; i < points_per_axis; ++i) {
    const double re = -radius + (i + 0.5) * h;
    for (int j = 0; j < points_per_axis; ++j) {
      const double im = -radius + (j + 0.5) * h;
      g.nodes.push_back({Complex(re, im), w});
    }
  }
  return g;
}

QuadratureGrid default_grid() { return make_grid(8.0, 160); }

double Rng::normal() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  // u1 in (0, 1] so the log is finite
  const double u1 = ((engine_() >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = (engine_() >> 11) * 0x1.0p-53;
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double t = 2.0 * std::numbers::pi * u2;
  cached_ = r * std::sin(t);
  has_cached_ = true;
  return r * std::cos(t);
}

}  // namespace cvtel
