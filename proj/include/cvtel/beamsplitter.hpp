#pragma once

#include <vector>

#include "cvtel/fock.hpp"
#include "cvtel/teleport.hpp"

namespace cvtel {

struct BSParams {
  double q;        // transmission amplitude; reflectivity R = 1 - q^2
  double feedback; // feedback gain f, displacement f*beta on the output
  int truncation;

  void validate() const;
};

// Two-mode beam-splitter unitary with the convention
//   |alpha> (x) |0>  ->  |q alpha> (x) |sqrt(1-q^2) alpha>,
// no extra phase. The mixing generator conserves total photon number, so
// the unitary is built exactly sector by sector; truncation never leaks
// between sectors.
class BeamSplitterUnitary {
 public:
  BeamSplitterUnitary(double q, int dim);

  int dim() const { return dim_; }
  double transmission() const { return q_; }

  // in(n_signal, n_aux) -> out(n_transmitted, n_reflected)
  TwoModeVector apply(const TwoModeVector& in) const;

  // Dense N^2 x N^2 matrix, index = n_first * N + n_second.
  Eigen::MatrixXcd to_matrix() const;

 private:
  double q_;
  int dim_;
  std::vector<Eigen::MatrixXd> blocks_;  // one orthogonal block per total photon number
};

// Shared, lazily built unitary for a given (q, dim). Thread-safe
// single-initialization; read-only afterwards.
const BeamSplitterUnitary& beamsplitter_unitary(double q, int dim);

// |P(beta)> = sqrt((1-q^2)/pi) |sqrt(1-q^2) beta>, the eight-port homodyne
// POVM projection state for the reflected mode.
FockVector povm_projection_state(MeasurementOutcome beta, double q, int dim);

// Evolve psi (x) vacuum through the beam splitter, then contract the
// reflected mode against <P(beta)|. Unnormalized.
FockVector transmitted_state(double q, MeasurementOutcome beta,
                             const FockVector& psi);

// D(f*beta) applied to the transmitted state.
FockVector compensated_output(double q, double feedback, MeasurementOutcome beta,
                              const FockVector& psi);

// Dense matrix of the compensated channel psi -> D(f beta) psi_trans(beta),
// assembled column by column. At f = 1-q this is the g=1 measurement
// operator, which is hermitian.
FockOperator compensated_operator_matrix(double q, double feedback,
                                         MeasurementOutcome beta, int dim);

// || compensated_output(q, g-q, beta, psi) - T_g(beta) psi ||, scalar
// prefactors included: the two routes must agree in amplitude and phase.
double equivalence_residual(double q, double gain, MeasurementOutcome beta,
                            const FockVector& psi);

}  // namespace cvtel
