#include "cvtel/beamsplitter.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <utility>

#include <unsupported/Eigen/MatrixFunctions>

namespace cvtel {

void BSParams::validate() const {
  if (!(q >= 0.0 && q < 1.0))
    throw std::invalid_argument("BSParams: q must satisfy 0 <= q < 1");
  if (!std::isfinite(feedback))
    throw std::invalid_argument("BSParams: feedback must be finite");
  if (truncation < 1)
    throw std::invalid_argument("BSParams: truncation must be >= 1");
}

BeamSplitterUnitary::BeamSplitterUnitary(double q, int dim) : q_(q), dim_(dim) {
  if (!(q >= 0.0 && q < 1.0))
    throw std::invalid_argument("BeamSplitterUnitary: q must satisfy 0 <= q < 1");
  if (dim < 1)
    throw std::invalid_argument("BeamSplitterUnitary: dim must be >= 1");

  const double theta = std::acos(q);
  blocks_.reserve(2 * dim - 1);
  // Sector of total photon number n, basis |k, n-k> with k photons in the
  // first mode, k in [max(0, n-dim+1), min(n, dim-1)]. Generator
  // a b^dag - a^dag b is real antisymmetric within the sector.
  for (int n = 0; n <= 2 * (dim - 1); ++n) {
    const int k_lo = std::max(0, n - dim + 1);
    const int k_hi = std::min(n, dim - 1);
    const int sz = k_hi - k_lo + 1;
    Eigen::MatrixXd gen = Eigen::MatrixXd::Zero(sz, sz);
    for (int k = k_lo; k <= k_hi; ++k) {
      if (k - 1 >= k_lo)
        gen(k - 1 - k_lo, k - k_lo) = std::sqrt(double(k) * (n - k + 1));
      if (k + 1 <= k_hi)
        gen(k + 1 - k_lo, k - k_lo) = -std::sqrt(double(k + 1) * (n - k));
    }
    blocks_.push_back((theta * gen).exp());
  }
}

TwoModeVector BeamSplitterUnitary::apply(const TwoModeVector& in) const {
  if (in.rows() != dim_ || in.cols() != dim_)
    throw std::invalid_argument("BeamSplitterUnitary::apply: dimension mismatch");
  TwoModeVector out(dim_, dim_);
  for (int n = 0; n <= 2 * (dim_ - 1); ++n) {
    const int k_lo = std::max(0, n - dim_ + 1);
    const int k_hi = std::min(n, dim_ - 1);
    const int sz = k_hi - k_lo + 1;
    Eigen::VectorXcd v(sz);
    for (int k = k_lo; k <= k_hi; ++k) v(k - k_lo) = in(k, n - k);
    v = blocks_[n] * v;
    for (int k = k_lo; k <= k_hi; ++k) out(k, n - k) = v(k - k_lo);
  }
  return out;
}

Eigen::MatrixXcd BeamSplitterUnitary::to_matrix() const {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim_ * dim_, dim_ * dim_);
  for (int n = 0; n <= 2 * (dim_ - 1); ++n) {
    const int k_lo = std::max(0, n - dim_ + 1);
    const int k_hi = std::min(n, dim_ - 1);
    for (int k1 = k_lo; k1 <= k_hi; ++k1)
      for (int k2 = k_lo; k2 <= k_hi; ++k2)
        m(k1 * dim_ + (n - k1), k2 * dim_ + (n - k2)) =
            blocks_[n](k1 - k_lo, k2 - k_lo);
  }
  return m;
}

const BeamSplitterUnitary& beamsplitter_unitary(double q, int dim) {
  static std::mutex mutex;
  static std::map<std::pair<double, int>, std::unique_ptr<BeamSplitterUnitary>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{q, dim}];
  if (!slot) slot = std::make_unique<BeamSplitterUnitary>(q, dim);
  return *slot;
}

FockVector povm_projection_state(MeasurementOutcome beta, double q, int dim) {
  const double one_minus_q2 = 1.0 - q * q;
  return std::sqrt(one_minus_q2 / std::numbers::pi) *
         coherent_state(std::sqrt(one_minus_q2) * beta, dim);
}

FockVector transmitted_state(double q, MeasurementOutcome beta,
                             const FockVector& psi) {
  const int dim = static_cast<int>(psi.size());
  const BeamSplitterUnitary& u = beamsplitter_unitary(q, dim);
  TwoModeVector in = TwoModeVector::Zero(dim, dim);
  in.col(0) = psi;  // auxiliary port in vacuum
  const TwoModeVector evolved = u.apply(in);
  // contract the reflected (second) mode against <P(beta)|
  return evolved * povm_projection_state(beta, q, dim).conjugate();
}

FockVector compensated_output(double q, double feedback, MeasurementOutcome beta,
                              const FockVector& psi) {
  BSParams{q, feedback, static_cast<int>(psi.size())}.validate();
  const FockVector trans = transmitted_state(q, beta, psi);
  if (feedback == 0.0) return trans;
  return displacement_operator(feedback * beta, static_cast<int>(psi.size())) * trans;
}

FockOperator compensated_operator_matrix(double q, double feedback,
                                         MeasurementOutcome beta, int dim) {
  FockOperator m(dim, dim);
  for (int j = 0; j < dim; ++j)
    m.col(j) = compensated_output(q, feedback, beta, fock_state(j, dim));
  return m;
}

double equivalence_residual(double q, double gain, MeasurementOutcome beta,
                            const FockVector& psi) {
  const int dim = static_cast<int>(psi.size());
  const FockVector bs_route = compensated_output(q, gain - q, beta, psi);
  const FockVector tp_route =
      apply_transfer(TeleportParams{q, gain, dim}, beta, psi);
  return (bs_route - tp_route).norm();
}

}  // namespace cvtel
