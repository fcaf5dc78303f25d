#include "freqest/freq_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "freqest/multisine.hpp"

namespace freqest {

Eigen::VectorXd theta_from_frequencies(const Eigen::VectorXd& omegas) {
  const int n = static_cast<int>(omegas.size());
  if (n < 1) throw std::invalid_argument("theta_from_frequencies: empty input");
  for (int i = 0; i < n; ++i)
    if (!(omegas[i] > 0.0))
      throw std::invalid_argument("theta_from_frequencies: non-positive frequency");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!frequencies_distinct(omegas[i], omegas[j]))
        throw std::invalid_argument("theta_from_frequencies: duplicate frequency");

  // Sort the squared frequencies so permuted inputs accumulate in the
  // same order and produce bit-identical coefficients.
  std::vector<double> w2(omegas.data(), omegas.data() + n);
  std::sort(w2.begin(), w2.end());
  for (double& v : w2) v = v * v;

  // Coefficients of prod (z + w2_i), leading coefficient first.
  std::vector<double> c{1.0};
  for (double v : w2) {
    std::vector<double> next(c.size() + 1, 0.0);
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k] += c[k];
      next[k + 1] += c[k] * v;
    }
    c = std::move(next);
  }

  Eigen::VectorXd theta(n);
  for (int k = 0; k < n; ++k) theta[k] = c[k + 1];
  return theta;
}

FrequencyDecoding frequencies_from_theta(const Eigen::VectorXd& theta) {
  const int n = static_cast<int>(theta.size());
  FrequencyDecoding out;
  if (n < 1) return out;

  if (n == 1) {
    // Single root z = -theta_1, no eigen solve needed.
    const double z = -theta[0];
    if (z < 0.0) {
      out.ok = true;
      out.omegas.resize(1);
      out.omegas[0] = std::sqrt(-z);
    } else {
      out.inadmissible_roots.emplace_back(z, 0.0);
    }
    return out;
  }

  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -theta[n - 1 - i];

  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion);
  if (solver.info() != Eigen::Success) {
    out.inadmissible_roots.emplace_back(std::nan(""), std::nan(""));
    return out;
  }

  std::vector<double> omegas;
  for (int i = 0; i < n; ++i) {
    const std::complex<double> z = solver.eigenvalues()[i];
    const bool real_enough = std::abs(z.imag()) <= 1e-6 * std::max(1.0, std::abs(z));
    if (!real_enough || z.real() >= 0.0) {
      out.inadmissible_roots.push_back(z);
      continue;
    }
    omegas.push_back(std::sqrt(-z.real()));
  }
  if (!out.inadmissible_roots.empty()) return out;

  std::sort(omegas.begin(), omegas.end());
  out.ok = true;
  out.omegas = Eigen::Map<Eigen::VectorXd>(omegas.data(), n);
  return out;
}

}  // namespace freqest
