#pragma once

#include <complex>

#include <Eigen/Dense>

namespace cvtel {

using Complex = std::complex<double>;

// Single-mode state in the truncated photon-number basis.
// Index = photon number; conditional states may carry probability weight,
// so vectors are not assumed normalized.
using FockVector = Eigen::VectorXcd;

// Dense single-mode operator, row = output photon number.
using FockOperator = Eigen::MatrixXcd;

// Two-mode amplitudes, entry (n_first, n_second).
using TwoModeVector = Eigen::MatrixXcd;

inline constexpr const char* kVersion = "0.1.0";

// log(n!) via lgamma, valid for any n >= 0
double log_factorial(int n);

// |n> in an N-dimensional truncation. Throws std::out_of_range if n >= dim.
FockVector fock_state(int n, int dim);

// Coherent state |alpha> truncated at dim amplitudes. The squared-norm
// deficit equals the Poisson tail of mean |alpha|^2 beyond dim-1.
FockVector coherent_state(Complex alpha, int dim);

// Matrix elements <m|D(alpha)|n> of the displacement unitary, computed
// from the associated-Laguerre closed form with a two-term recurrence
// along each diagonal. Exact per element up to rounding; no truncated
// matrix exponentials.
FockOperator displacement_operator(Complex alpha, int dim);

// <u|v>. Throws std::invalid_argument on dimension mismatch.
Complex inner(const FockVector& u, const FockVector& v);

// |<u|v>|^2 / <v|v> for normalized u and possibly-unnormalized v.
// Throws std::domain_error if v is the zero vector.
double fidelity_pure(const FockVector& u, const FockVector& v);

// Sum n*|v_n|^2 / Sum |v_n|^2. Throws std::domain_error on zero vector.
double mean_photon_number(const FockVector& v);

}  // namespace cvtel
