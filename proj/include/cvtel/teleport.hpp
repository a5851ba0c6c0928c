#pragma once

#include "cvtel/fock.hpp"
#include "cvtel/quadrature.hpp"

namespace cvtel {

// Measurement outcome beta = x_minus + i*y_plus, in the convention where
// D(beta) shifts a coherent amplitude by exactly beta.
using MeasurementOutcome = Complex;

struct TeleportParams {
  double q;           // entanglement coefficient, 0 <= q < 1
  double gain;        // corrective displacement gain, >= 0
  int truncation;     // photon-number basis dimension

  // Throws std::invalid_argument if out of range (q = 1 is rejected: the
  // maximal-entanglement limit is non-normalizable).
  void validate() const;
};

// sqrt(1-q^2) Sum_n q^n |n;n>, entry (n,n) of the result.
TwoModeVector epr_state(double q, int dim);

// (1/sqrt(pi)) Sum_n D_first(beta) |n;n>. Finite-norm only at truncation.
TwoModeVector bell_eigenstate(MeasurementOutcome beta, int dim);

// T_g(beta) = sqrt((1-q^2)/pi) D(g beta) diag(q^n) D(-beta), dense.
FockOperator transfer_operator(const TeleportParams& p, MeasurementOutcome beta);

// T_g(beta) psi without materializing T: displace by -beta, damp amplitude
// n by q^n, displace by g*beta. Result is unnormalized; its squared norm
// is the outcome density P(beta).
FockVector apply_transfer(const TeleportParams& p, MeasurementOutcome beta,
                          const FockVector& psi);

// P(beta) = ||T_g(beta) psi||^2 for normalized psi (density over d^2 beta).
double p_density(const TeleportParams& p, MeasurementOutcome beta,
                 const FockVector& psi);

// T_g(beta)|alpha> = coefficient * |amplitude> in closed form.
struct CoherentTransferResult {
  Complex coefficient;
  Complex amplitude;  // q*alpha + (g-q)*beta
};
CoherentTransferResult coherent_closed_form(const TeleportParams& p,
                                            MeasurementOutcome beta,
                                            Complex alpha);

// T_g(beta)|1> = sqrt((1-q^2)/pi) e^{-(1-q^2)|beta|^2/2}
//                D((g-q)beta) ((1-q^2) conj(beta) |0> + q |1>)
FockVector one_photon_closed_form(const TeleportParams& p,
                                  MeasurementOutcome beta);

// Brute-force three-mode route: builds psi (x) epr_state(q) and contracts
// modes A and R against bell_eigenstate(beta). O(dim^3) work, oracle use
// only; equals the g=0 transfer route before the final displacement.
FockVector conditional_state_bruteforce(double q, MeasurementOutcome beta,
                                        const FockVector& psi, int dim);

// Integral over the grid of |<psi|T_g(beta)|psi>|^2. Warns on stderr if
// the density at the grid boundary is non-negligible.
double average_fidelity(const TeleportParams& p, const FockVector& psi,
                        const QuadratureGrid& grid);

// Integral of (T psi)(T psi)^dagger: the measurement-averaged output
// density matrix. Hermitian PSD; trace = 1 within grid tolerance.
Eigen::MatrixXcd average_output_density(const TeleportParams& p,
                                        const FockVector& psi,
                                        const QuadratureGrid& grid);

// Single grid pass producing both averages above.
struct AveragedOutput {
  double fidelity;
  Eigen::MatrixXcd density;
};
AveragedOutput average_output(const TeleportParams& p, const FockVector& psi,
                              const QuadratureGrid& grid);

}  // namespace cvtel
