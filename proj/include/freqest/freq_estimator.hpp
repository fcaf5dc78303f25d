#pragma once

#include <Eigen/Dense>
#include <memory>
#include <string>
#include <vector>

#include "freqest/regression_core.hpp"
#include "freqest/svf.hpp"

namespace freqest {

// --- Baseline vector gradient estimator -------------------------------

struct GradientEstimatorConfig {
  Eigen::MatrixXd gain;  // N x N, symmetric positive definite
  double t_on = 5.0;     // adaptation start, s
};

class GradientFrequencyEstimator {
 public:
  GradientFrequencyEstimator(GradientEstimatorConfig config, int n_freqs);

  /// Advances theta_hat over [begin.t, begin.t + dt]; no-op while
  /// begin.t < t_on or phi is all-zero.
  void step(const RegressorSample& begin, const RegressorSample& end, double dt);
  void step(const RegressorSample& sample, double dt) { step(sample, sample, dt); }

  const Eigen::VectorXd& theta_hat() const { return state_.r_hat; }
  Eigen::VectorXd& theta_hat() { return state_.r_hat; }
  double t_on() const { return config_.t_on; }

 private:
  GradientEstimatorConfig config_;
  VectorGradientState state_;
};

// --- Delay-based DREM estimator ---------------------------------------

struct DremEstimatorConfig {
  std::vector<double> delays;  // N - 1 distinct positive delays, s
  Eigen::VectorXd gains;       // N positive per-channel gains
  double t_on = 5.0;           // must be >= max delay
};

/// Default activation time: max(paper's 5 s, max delay, 10 / lambda).
double default_t_on(const std::vector<double>& delays, double lambda);

/// Per-time-step scalar regression set built from the delayed copies of
/// (y, phi). For N = 2 the matrix rows are (xi_3(t), xi_1(t)) and
/// (xi_3(t - d_1), xi_1(t - d_1)).
struct FrequencyDremSample {
  double t = 0.0;
  Eigen::VectorXd Y_e;    // N
  Eigen::MatrixXd Phi_e;  // N x N
  double psi = 0.0;       // det(Phi_e)
  Eigen::VectorXd Y;      // adj(Phi_e) Y_e
  bool warmup = false;
};

class DremFrequencyEstimator {
 public:
  DremFrequencyEstimator(DremEstimatorConfig config, int n_freqs, double dt);

  /// Builds the mixed sample at sample.t; pushes (y, phi) into the
  /// delay history. Must be called once per grid step in order.
  FrequencyDremSample push(const RegressorSample& sample);

  /// Advances the N scalar channels; no-op while either sample is in
  /// warm-up or begin.t < t_on.
  void step(const FrequencyDremSample& begin, const FrequencyDremSample& end,
            double dt);
  void step(const FrequencyDremSample& sample, double dt) { step(sample, sample, dt); }

  const Eigen::VectorXd& theta_hat() const { return state_.r_hat; }
  Eigen::VectorXd& theta_hat() { return state_.r_hat; }
  double t_on() const { return config_.t_on; }
  const std::vector<std::string>& rounding_notes() const {
    return extender_->rounding_notes();
  }

 private:
  DremEstimatorConfig config_;
  int n_freqs_;
  std::unique_ptr<RegressorExtender> extender_;
  ScalarEstimatorState state_;
};

}  // namespace freqest
