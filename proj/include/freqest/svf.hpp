#pragma once

#include <Eigen/Dense>

namespace freqest {

struct SvfConfig {
  int n_freqs = 1;       // N
  double lambda = 1.0;   // filter pole, rad/s, > 0
};

/// Companion-form realization of the filter polynomial
/// a(s) = s^{2N} + a_{2N-1} s^{2N-1} + ... + a_1 s + a_0.
struct SvfMatrices {
  int n_freqs = 0;
  Eigen::VectorXd a_coeffs;  // a_0 .. a_{2N-1}
  Eigen::MatrixXd A;         // 2N x 2N, superdiagonal ones, last row -a
  Eigen::VectorXd B;         // (0, ..., 0, a_0)^T
};

/// Builds the companion matrices for the repeated-pole polynomial
/// a(s) = (s + lambda)^{2N}. Throws std::invalid_argument on
/// lambda <= 0 or n_freqs < 1.
SvfMatrices build_matrices(const SvfConfig& config);

/// Escape hatch: companion matrices for explicit coefficients
/// a_0 .. a_{2N-1} (size must be even and positive).
SvfMatrices build_matrices_from_coeffs(const Eigen::VectorXd& a_coeffs);

/// xi_dot = A xi + B u.
Eigen::VectorXd svf_derivative(const SvfMatrices& m, const Eigen::VectorXd& xi,
                               double u);

/// One time-stamped point of the regression y(t) = phi^T(t) theta + eps(t).
struct RegressorSample {
  double t = 0.0;
  double y = 0.0;
  Eigen::VectorXd phi;  // N entries
};

/// Output map: y = sum a_{i-1} xi_i - a_0 u (algebraic, no
/// differentiation); phi = odd-indexed states in descending index order
/// (xi_{2N-1}, xi_{2N-3}, ..., xi_1).
RegressorSample svf_output(const SvfMatrices& m, const Eigen::VectorXd& xi,
                           double u, double t);

}  // namespace freqest
