#include "cvtel/fock.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace cvtel {

double log_factorial(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

FockVector fock_state(int n, int dim) {
  if (dim < 1) throw std::invalid_argument("fock_state: dim must be >= 1");
  if (n < 0 || n >= dim)
    throw std::out_of_range("fock_state: photon number outside truncation");
  FockVector v = FockVector::Zero(dim);
  v(n) = 1.0;
  return v;
}

FockVector coherent_state(Complex alpha, int dim) {
  if (dim < 1) throw std::invalid_argument("coherent_state: dim must be >= 1");
  FockVector v(dim);
  v(0) = std::exp(-0.5 * std::norm(alpha));
  for (int n = 1; n < dim; ++n) v(n) = v(n - 1) * alpha / std::sqrt(static_cast<double>(n));
  return v;
}

FockOperator displacement_operator(Complex alpha, int dim) {
  if (dim < 1) throw std::invalid_argument("displacement_operator: dim must be >= 1");
  if (alpha == Complex(0.0, 0.0)) return FockOperator::Identity(dim, dim);

  const double x = std::norm(alpha);
  FockOperator d(dim, dim);
  // Diagonal offset k = m - n >= 0:
  //   <n+k|D(alpha)|n> = sqrt(n!/(n+k)!) alpha^k e^{-x/2} L_n^{(k)}(x)
  //   <n|D(alpha)|n+k> = sqrt(n!/(n+k)!) (-conj(alpha))^k e^{-x/2} L_n^{(k)}(x)
  for (int k = 0; k < dim; ++k) {
    const Complex lower_phase = std::pow(alpha, k);
    const Complex upper_phase = std::pow(-std::conj(alpha), k);
    double lag_prev = 0.0;  // L_{n-1}^{(k)}(x)
    double lag = 1.0;       // L_n^{(k)}(x)
    for (int n = 0; n + k < dim; ++n) {
      if (n > 0) {
        const double next =
            ((2.0 * (n - 1) + 1.0 + k - x) * lag - (n - 1.0 + k) * lag_prev) / n;
        lag_prev = lag;
        lag = next;
      }
      const double mag =
          std::exp(0.5 * (log_factorial(n) - log_factorial(n + k)) - 0.5 * x) * lag;
      d(n + k, n) = lower_phase * mag;
      d(n, n + k) = upper_phase * mag;
    }
  }
  return d;
}

Complex inner(const FockVector& u, const FockVector& v) {
  if (u.size() != v.size())
    throw std::invalid_argument("inner: truncation mismatch");
  return u.dot(v);  // Eigen's dot conjugates the first argument
}

double fidelity_pure(const FockVector& u, const FockVector& v) {
  const double nv = v.squaredNorm();
  if (nv == 0.0) throw std::domain_error("fidelity_pure: zero vector");
  return std::norm(inner(u, v)) / nv;
}

double mean_photon_number(const FockVector& v) {
  const double nv = v.squaredNorm();
  if (nv == 0.0) throw std::domain_error("mean_photon_number: zero vector");
  double acc = 0.0;
  for (int n = 0; n < v.size(); ++n) acc += n * std::norm(v(n));
  return acc / nv;
}

}  // namespace cvtel
