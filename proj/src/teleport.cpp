#include "cvtel/teleport.hpp"

#include <cmath>
#include <iostream>
#include <numbers>
#include <stdexcept>

namespace cvtel {

namespace {
constexpr double kPi = std::numbers::pi;

Complex symplectic_phase(Complex u, Complex v) {
  // (u conj(v) - v conj(u)) / 2, purely imaginary
  return 0.5 * (u * std::conj(v) - v * std::conj(u));
}
}  // namespace

void TeleportParams::validate() const {
  if (!(q >= 0.0 && q < 1.0))
    throw std::invalid_argument("TeleportParams: q must satisfy 0 <= q < 1");
  if (!(gain >= 0.0))
    throw std::invalid_argument("TeleportParams: gain must be >= 0");
  if (truncation < 1)
    throw std::invalid_argument("TeleportParams: truncation must be >= 1");
}

TwoModeVector epr_state(double q, int dim) {
  if (!(q >= 0.0 && q < 1.0))
    throw std::invalid_argument("epr_state: q must satisfy 0 <= q < 1");
  TwoModeVector s = TwoModeVector::Zero(dim, dim);
  const double norm = std::sqrt(1.0 - q * q);
  double qn = 1.0;
  for (int n = 0; n < dim; ++n) {
    s(n, n) = norm * qn;
    qn *= q;
  }
  return s;
}

TwoModeVector bell_eigenstate(MeasurementOutcome beta, int dim) {
  // amplitude at (a, n) = (1/sqrt(pi)) <a|D(beta)|n>
  return displacement_operator(beta, dim) / std::sqrt(kPi);
}

FockOperator transfer_operator(const TeleportParams& p, MeasurementOutcome beta) {
  p.validate();
  const int dim = p.truncation;
  FockOperator d_minus = displacement_operator(-beta, dim);
  const double prefactor = std::sqrt((1.0 - p.q * p.q) / kPi);
  double qn = prefactor;
  for (int n = 0; n < dim; ++n) {
    d_minus.row(n) *= qn;
    qn *= p.q;
  }
  return displacement_operator(p.gain * beta, dim) * d_minus;
}

FockVector apply_transfer(const TeleportParams& p, MeasurementOutcome beta,
                          const FockVector& psi) {
  p.validate();
  const int dim = p.truncation;
  if (psi.size() != dim)
    throw std::invalid_argument("apply_transfer: psi truncation mismatch");
  FockVector v = displacement_operator(-beta, dim) * psi;
  double qn = std::sqrt((1.0 - p.q * p.q) / kPi);
  for (int n = 0; n < dim; ++n) {
    v(n) *= qn;
    qn *= p.q;
  }
  return displacement_operator(p.gain * beta, dim) * v;
}

double p_density(const TeleportParams& p, MeasurementOutcome beta,
                 const FockVector& psi) {
  p.validate();
  if (psi.size() != p.truncation)
    throw std::invalid_argument("p_density: psi truncation mismatch");
  // the final displacement is unitary, so skip it
  FockVector v = displacement_operator(-beta, p.truncation) * psi;
  double qn = std::sqrt((1.0 - p.q * p.q) / kPi);
  double acc = 0.0;
  for (int n = 0; n < p.truncation; ++n) {
    acc += qn * qn * std::norm(v(n));
    qn *= p.q;
  }
  return acc;
}

CoherentTransferResult coherent_closed_form(const TeleportParams& p,
                                            MeasurementOutcome beta,
                                            Complex alpha) {
  p.validate();
  const double one_minus_q2 = 1.0 - p.q * p.q;
  const Complex envelope =
      std::exp(-0.5 * one_minus_q2 * std::norm(alpha - beta));
  const Complex phase = std::exp((1.0 - p.gain * p.q) * symplectic_phase(alpha, beta));
  CoherentTransferResult r;
  r.coefficient = std::sqrt(one_minus_q2 / kPi) * envelope * phase;
  r.amplitude = p.q * alpha + (p.gain - p.q) * beta;
  return r;
}

FockVector one_photon_closed_form(const TeleportParams& p,
                                  MeasurementOutcome beta) {
  p.validate();
  const int dim = p.truncation;
  const double one_minus_q2 = 1.0 - p.q * p.q;
  FockVector core = FockVector::Zero(dim);
  core(0) = one_minus_q2 * std::conj(beta);
  if (dim > 1) core(1) = p.q;
  const double scale = std::sqrt(one_minus_q2 / kPi) *
                       std::exp(-0.5 * one_minus_q2 * std::norm(beta));
  return scale * (displacement_operator((p.gain - p.q) * beta, dim) * core);
}

FockVector conditional_state_bruteforce(double q, MeasurementOutcome beta,
                                        const FockVector& psi, int dim) {
  if (psi.size() != dim)
    throw std::invalid_argument("conditional_state_bruteforce: psi truncation mismatch");
  const TwoModeVector bell = bell_eigenstate(beta, dim);  // (a, r)
  const TwoModeVector epr = epr_state(q, dim);            // (r, b)
  // out[b] = Sum_{a,r} conj(bell(a,r)) psi[a] epr(r,b)
  FockVector out = FockVector::Zero(dim);
  for (int b = 0; b < dim; ++b) {
    Complex acc = 0.0;
    for (int r = 0; r < dim; ++r) {
      if (epr(r, b) == Complex(0.0)) continue;
      Complex contracted_a = 0.0;
      for (int a = 0; a < dim; ++a)
        contracted_a += std::conj(bell(a, r)) * psi(a);
      acc += contracted_a * epr(r, b);
    }
    out(b) = acc;
  }
  return out;
}

AveragedOutput average_output(const TeleportParams& p, const FockVector& psi,
                              const QuadratureGrid& grid) {
  p.validate();
  const int dim = p.truncation;
  if (psi.size() != dim)
    throw std::invalid_argument("average_output: psi truncation mismatch");

  AveragedOutput result;
  result.fidelity = 0.0;
  result.density = Eigen::MatrixXcd::Zero(dim, dim);
  double boundary_density = 0.0;
  const int ppa = grid.points_per_axis;
  for (std::size_t i = 0; i < grid.nodes.size(); ++i) {
    const auto& node = grid.nodes[i];
    const FockVector out = apply_transfer(p, node.beta, psi);
    result.fidelity += node.weight * std::norm(psi.dot(out));
    result.density.noalias() += node.weight * (out * out.adjoint());
    const std::size_t row = i / ppa;
    const std::size_t col = i % ppa;
    if (row == 0 || row + 1 == static_cast<std::size_t>(ppa) || col == 0 ||
        col + 1 == static_cast<std::size_t>(ppa))
      boundary_density = std::max(boundary_density, out.squaredNorm());
  }
  if (boundary_density > 1e-8)
    std::cerr << "cvtel: warning: P(beta) = " << boundary_density
              << " at the grid boundary; enlarge the grid radius\n";
  return result;
}

double average_fidelity(const TeleportParams& p, const FockVector& psi,
                        const QuadratureGrid& grid) {
  return average_output(p, psi, grid).fidelity;
}

Eigen::MatrixXcd average_output_density(const TeleportParams& p,
                                        const FockVector& psi,
                                        const QuadratureGrid& grid) {
  return average_output(p, psi, grid).density;
}

}  // namespace cvtel
