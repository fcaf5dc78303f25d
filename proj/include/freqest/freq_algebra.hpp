#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace freqest {

/// theta_k = e_k(w_1^2, ..., w_N^2), the elementary symmetric
/// polynomials; equivalently the trailing coefficients of
/// prod_i (z + w_i^2). Output is exactly permutation-invariant (inputs
/// are sorted before accumulation). Throws std::invalid_argument on
/// non-positive or duplicate frequencies.
Eigen::VectorXd theta_from_frequencies(const Eigen::VectorXd& omegas);

struct FrequencyDecoding {
  bool ok = false;
  Eigen::VectorXd omegas;  // ascending, valid iff ok
  /// Roots of z^N + theta_1 z^{N-1} + ... + theta_N that failed
  /// admissibility (complex or non-negative real part); nonempty iff !ok.
  std::vector<std::complex<double>> inadmissible_roots;
};

/// Inverse map: roots z_i of z^N + theta_1 z^{N-1} + ... + theta_N via
/// companion-matrix eigenvalues; w_i = sqrt(-Re z_i). A root is
/// admissible when |Im z| <= 1e-6 * max(1, |z|) and Re z < 0; anything
/// else yields ok = false (expected mid-transient, not an exception).
FrequencyDecoding frequencies_from_theta(const Eigen::VectorXd& theta);

}  // namespace freqest
