#include "cvtel/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace cvtel {

SampleSet sample_beta_coherent(const TeleportParams& p, Complex alpha, int count,
                               std::uint64_t seed) {
  p.validate();
  if (count < 1) throw std::invalid_argument("sample_beta_coherent: count must be >= 1");
  const double sigma = 1.0 / std::sqrt(2.0 * (1.0 - p.q * p.q));
  Rng rng(seed);
  SampleSet s;
  s.seed = seed;
  s.betas.reserve(count);
  for (int i = 0; i < count; ++i) {
    const double re = alpha.real() + sigma * rng.normal();
    const double im = alpha.imag() + sigma * rng.normal();
    s.betas.emplace_back(re, im);
  }
  return s;
}

SampleSet sample_beta(const TeleportParams& p, const FockVector& psi,
                      const QuadratureGrid& grid, int count, std::uint64_t seed) {
  p.validate();
  if (count < 1) throw std::invalid_argument("sample_beta: count must be >= 1");

  std::vector<double> cdf(grid.nodes.size());
  double total = 0.0;
  for (std::size_t i = 0; i < grid.nodes.size(); ++i) {
    total += grid.nodes[i].weight * p_density(p, grid.nodes[i].beta, psi);
    cdf[i] = total;
  }
  if (total < 0.99)
    throw ToleranceError("sample_beta: grid captures less than 99% of the "
                         "probability mass; increase the grid radius");

  const double h = grid.cell_width();
  Rng rng(seed);
  SampleSet s;
  s.seed = seed;
  s.betas.reserve(count);
  for (int i = 0; i < count; ++i) {
    const double u = rng.uniform() * total;
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const std::size_t cell = std::min<std::size_t>(it - cdf.begin(), cdf.size() - 1);
    const Complex center = grid.nodes[cell].beta;
    const double re = center.real() + h * (rng.uniform() - 0.5);
    const double im = center.imag() + h * (rng.uniform() - 0.5);
    s.betas.emplace_back(re, im);
  }
  return s;
}

double completeness_check(const TeleportParams& p, const QuadratureGrid& grid,
                          int block) {
  p.validate();
  const int dim = p.truncation;
  if (block < 1 || 2 * block > dim)
    throw std::invalid_argument("completeness_check: block must satisfy 1 <= block <= N/2");

  // M_ij = (1-q^2)/pi Int d^2beta Sum_n q^{2n} D_in(beta) conj(D_jn(beta)),
  // independent of the gain (the final displacement is unitary).
  Eigen::VectorXd q2n(dim);
  double w = 1.0;
  for (int n = 0; n < dim; ++n) {
    q2n(n) = w;
    w *= p.q * p.q;
  }
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(block, block);
  for (const auto& node : grid.nodes) {
    const FockOperator d = displacement_operator(node.beta, dim);
    const Eigen::MatrixXcd rows = d.topRows(block);
    acc.noalias() += node.weight * (rows * q2n.asDiagonal() * rows.adjoint());
  }
  acc *= (1.0 - p.q * p.q) / std::numbers::pi;
  acc -= Eigen::MatrixXcd::Identity(block, block);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(acc, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace cvtel
