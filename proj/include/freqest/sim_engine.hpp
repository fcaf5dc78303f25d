#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "freqest/freq_estimator.hpp"
#include "freqest/multisine.hpp"
#include "freqest/svf.hpp"

namespace freqest {

struct SimConfig {
  double dt = 1e-3;         // s
  double t_end = 100.0;     // s
  int record_stride = 1;    // grid steps per recorded trace row
};

/// Uniformly sampled time series of everything an estimator run
/// produces. psi is populated for DREM traces only.
struct EstimatorTrace {
  int n_freqs = 0;
  bool has_psi = false;
  double t_on = 0.0;      // adaptation start of the owning estimator
  double sample_dt = 0.0; // spacing of recorded rows (dt * record_stride)

  std::vector<double> times;
  std::vector<double> u;
  std::vector<double> y;
  std::vector<Eigen::VectorXd> phi;
  std::vector<double> psi;
  std::vector<Eigen::VectorXd> theta_hat;
  std::vector<Eigen::VectorXd> theta_tilde;
  std::vector<char> warmup;

  std::size_t size() const { return times.size(); }
};

/// CSV serialization: header row, 17 significant digits, columns
/// t,u,y,phi_1..N[,psi],theta_hat_1..N,theta_tilde_1..N,warmup.
std::string trace_to_csv(const EstimatorTrace& trace);
void write_trace_csv(const EstimatorTrace& trace, const std::string& path);

struct ExperimentResult {
  Eigen::VectorXd theta_true;
  std::optional<EstimatorTrace> gradient_trace;
  std::optional<EstimatorTrace> drem_trace;
  std::vector<std::string> warnings;
};

/// Deterministic fixed-step simulation: the SVF is advanced with
/// classical RK4 (u evaluated at the stage times), estimators advance
/// on the same clock from the grid samples, delay history lives on the
/// same grid. Both estimators, when configured, share one SVF stream.
/// Throws std::invalid_argument on validation failures before the loop
/// starts and std::runtime_error if any state goes non-finite.
ExperimentResult run_experiment(
    const MultisineSignal& signal, const SvfConfig& svf,
    const std::optional<GradientEstimatorConfig>& gradient,
    const std::optional<DremEstimatorConfig>& drem, const SimConfig& sim);

}  // namespace freqest
