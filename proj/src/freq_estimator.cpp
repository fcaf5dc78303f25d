#include "freqest/freq_estimator.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace freqest {

GradientFrequencyEstimator::GradientFrequencyEstimator(
    GradientEstimatorConfig config, int n_freqs)
    : config_(std::move(config)) {
  if (n_freqs < 1)
    throw std::invalid_argument("gradient estimator: n_freqs must be >= 1");
  if (config_.gain.rows() != n_freqs || config_.gain.cols() != n_freqs)
    throw std::invalid_argument("gradient estimator: gain must be N x N");
  if (config_.t_on < 0.0)
    throw std::invalid_argument("gradient estimator: t_on must be >= 0");
  state_.r_hat = Eigen::VectorXd::Zero(n_freqs);
  state_.gain = config_.gain;
  validate(state_);
}

void GradientFrequencyEstimator::step(const RegressorSample& begin,
                                      const RegressorSample& end, double dt) {
  if (begin.t < config_.t_on) return;
  if (begin.phi.isZero(0.0) && end.phi.isZero(0.0)) return;
  vector_gradient_step(state_, begin.y, begin.phi, end.y, end.phi, dt);
}

double default_t_on(const std::vector<double>& delays, double lambda) {
  double t_on = 5.0;
  for (double d : delays) t_on = std::max(t_on, d);
  if (lambda > 0.0) t_on = std::max(t_on, 10.0 / lambda);
  return t_on;
}

DremFrequencyEstimator::DremFrequencyEstimator(DremEstimatorConfig config,
                                               int n_freqs, double dt)
    : config_(std::move(config)), n_freqs_(n_freqs) {
  if (n_freqs_ < 1)
    throw std::invalid_argument("drem estimator: n_freqs must be >= 1");
  if (static_cast<int>(config_.delays.size()) != n_freqs_ - 1)
    throw std::invalid_argument("drem estimator: need N - 1 delays");
  if (config_.gains.size() != n_freqs_)
    throw std::invalid_argument("drem estimator: need N gains");
  double max_delay = 0.0;
  for (double d : config_.delays) max_delay = std::max(max_delay, d);
  if (config_.t_on < max_delay)
    throw std::invalid_argument("drem estimator: t_on must cover the longest delay");

  OperatorBank bank;
  for (double d : config_.delays) bank.operators.push_back(DelayOperator{d});
  extender_ = std::make_unique<RegressorExtender>(std::move(bank), n_freqs_, dt);

  state_.r_hat = Eigen::VectorXd::Zero(n_freqs_);
  state_.gains = config_.gains;
  validate(state_);
}

FrequencyDremSample DremFrequencyEstimator::push(const RegressorSample& sample) {
  ExtendedRegressor ext = extender_->push(sample.y, sample.phi);
  MixedRegression mixed = mix(ext);
  FrequencyDremSample out;
  out.t = sample.t;
  out.Y_e = std::move(ext.R_e);
  out.Phi_e = std::move(ext.M_e);
  out.psi = mixed.psi;
  out.Y = std::move(mixed.R);
  out.warmup = ext.warmup;
  return out;
}

void DremFrequencyEstimator::step(const FrequencyDremSample& begin,
                                  const FrequencyDremSample& end, double dt) {
  if (begin.warmup || end.warmup) return;
  if (begin.t < config_.t_on) return;
  MixedRegression mb{begin.psi, begin.Y, begin.warmup};
  MixedRegression me{end.psi, end.Y, end.warmup};
  scalar_gradient_step(state_, mb, me, dt);
}

}  // namespace freqest
