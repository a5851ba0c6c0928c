#pragma once

#include "cvtel/quadrature.hpp"
#include "cvtel/teleport.hpp"

namespace cvtel {

// Exact sampler for coherent input |alpha>: P(beta) is Gaussian with mean
// alpha and per-axis variance 1/(2(1-q^2)).
SampleSet sample_beta_coherent(const TeleportParams& p, Complex alpha, int count,
                               std::uint64_t seed);

// Grid-based inverse-CDF sampler for arbitrary normalized input: pick a
// cell with probability proportional to weight * P(center), then uniform
// within the cell. Throws ToleranceError if more than 1% of the
// probability mass lies outside the grid.
SampleSet sample_beta(const TeleportParams& p, const FockVector& psi,
                      const QuadratureGrid& grid, int count, std::uint64_t seed);

// Operator-norm deviation of the grid integral of T_g(beta)^dagger
// T_g(beta) from the identity on the leading block x block sub-matrix.
// Analytically the integral is exactly the identity.
double completeness_check(const TeleportParams& p, const QuadratureGrid& grid,
                          int block);

}  // namespace cvtel
