#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "cvtel/fock.hpp"

namespace cvtel {

// Raised when a numerical tolerance is violated (grid mass deficit,
// physics checks the CLI gates on). Mapped to exit code 2.
struct ToleranceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GridNode {
  Complex beta;
  double weight;
};

// Tensor midpoint rule over the square [-radius, radius]^2 of the beta
// plane. Node order is row-major and deterministic in
// (radius, points_per_axis).
struct QuadratureGrid {
  double radius = 8.0;
  int points_per_axis = 160;
  std::vector<GridNode> nodes;

  double cell_width() const { return 2.0 * radius / points_per_axis; }
};

QuadratureGrid make_grid(double radius, int points_per_axis);
QuadratureGrid default_grid();

namespace detail {
inline bool all_finite(double v) { return std::isfinite(v); }
inline bool all_finite(const Complex& v) {
  return std::isfinite(v.real()) && std::isfinite(v.imag());
}
template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& m) {
  return m.allFinite();
}
}  // namespace detail

// Sum weight * f(beta) in fixed node order. Works for scalar- and
// matrix-valued integrands. Throws on a non-finite value at a node.
template <typename F>
auto integrate_plane(F&& f, const QuadratureGrid& grid) {
  if (grid.nodes.empty()) throw std::invalid_argument("integrate_plane: empty grid");
  auto first = f(grid.nodes[0].beta);
  if (!detail::all_finite(first))
    throw std::domain_error("integrate_plane: non-finite integrand value");
  auto acc = decltype(first)(grid.nodes[0].weight * first);
  for (std::size_t i = 1; i < grid.nodes.size(); ++i) {
    auto v = f(grid.nodes[i].beta);
    if (!detail::all_finite(v))
      throw std::domain_error("integrate_plane: non-finite integrand value");
    acc += grid.nodes[i].weight * v;
  }
  return acc;
}

struct SampleSet {
  std::uint64_t seed = 0;
  std::vector<Complex> betas;
};

// Deterministic cross-platform RNG: mt19937_64 raw output (bit-exact per
// the standard) with explicit double conversion and Box-Muller normals.
// std::*_distribution is deliberately not used; its output is
// implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // in [0, 1)
  double uniform() { return (engine_() >> 11) * 0x1.0p-53; }

  // standard normal, Box-Muller pair with caching
  double normal();

 private:
  std::mt19937_64 engine_;
  bool has_cached_ = false;
  double cached_ = 0.0;
};

}  // namespace cvtel
