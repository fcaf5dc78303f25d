#include "freqest/svf.hpp"

#include <cmath>
#include <stdexcept>

namespace freqest {

SvfMatrices build_matrices(const SvfConfig& config) {
  if (config.n_freqs < 1)
    throw std::invalid_argument("svf: n_freqs must be >= 1");
  if (!(config.lambda > 0.0))
    throw std::invalid_argument("svf: lambda must be > 0 (Hurwitz pole)");

  const int order = 2 * config.n_freqs;
  // Binomial expansion of (s + lambda)^order; a_k = C(order, k) lambda^{order-k}.
  Eigen::VectorXd a(order);
  double binom = 1.0;  // C(order, 0)
  for (int k = 0; k < order; ++k) {
    a[k] = binom * std::pow(config.lambda, static_cast<double>(order - k));
    binom = binom * static_cast<double>(order - k) / static_cast<double>(k + 1);
  }
  return build_matrices_from_coeffs(a);
}

SvfMatrices build_matrices_from_coeffs(const Eigen::VectorXd& a_coeffs) {
  const int order = static_cast<int>(a_coeffs.size());
  if (order < 2 || order % 2 != 0)
    throw std::invalid_argument("svf: coefficient count must be even and >= 2");

  SvfMatrices m;
  m.n_freqs = order / 2;
  m.a_coeffs = a_coeffs;
  m.A = Eigen::MatrixXd::Zero(order, order);
  for (int i = 0; i + 1 < order; ++i) m.A(i, i + 1) = 1.0;
  m.A.row(order - 1) = -a_coeffs.transpose();
  m.B = Eigen::VectorXd::Zero(order);
  m.B[order - 1] = a_coeffs[0];
  return m;
}

Eigen::VectorXd svf_derivative(const SvfMatrices& m, const Eigen::VectorXd& xi,
                               double u) {
  if (xi.size() != m.A.rows())
    throw std::invalid_argument("svf: state dimension mismatch");
  return m.A * xi + m.B * u;
}

RegressorSample svf_output(const SvfMatrices& m, const Eigen::VectorXd& xi,
                           double u, double t) {
  if (xi.size() != m.A.rows())
    throw std::invalid_argument("svf: state dimension mismatch");
  RegressorSample s;
  s.t = t;
  s.y = m.a_coeffs.dot(xi) - m.a_coeffs[0] * u;
  s.phi.resize(m.n_freqs);
  // phi = (xi_{2N-1}, xi_{2N-3}, ..., xi_1), zero-based indices 2N-2, 2N-4, ..., 0.
  for (int j = 0; j < m.n_freqs; ++j) s.phi[j] = xi[2 * (m.n_freqs - 1 - j)];
  return s;
}

}  // namespace freqest
