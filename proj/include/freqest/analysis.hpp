#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "freqest/multisine.hpp"
#include "freqest/sim_engine.hpp"

namespace freqest {

/// Steady-state amplitude of xi_1 for one sinusoidal component:
/// B = A * lambda^{2N} / (lambda^2 + w^2)^N, the gain of
/// lambda^{2N} / (s + lambda)^{2N} at jw.
double svf_steady_amplitude(double lambda, int n_freqs,
                            const SinusoidComponent& component);

/// C_lin = 1/2 B1^2 B2^2 (w1^2 - w2^2)^2 (1 - cos(d1 w1) cos(d1 w2)),
/// the linear growth rate of the integral of det^2 for N = 2.
double c_lin_closed_form(double b1, double b2, double omega1, double omega2,
                         double d1);

/// d1 < pi / max(w1, w2). Sufficient for det(Phi_e) not in L2, but
/// conservative; violation does not imply degeneracy.
bool delay_bound_satisfied(double d1, double omega1, double omega2);

struct ExcitationReport {
  double c_lin_empirical = 0.0;  // fitted slope of I(t), >= 0 in practice
  std::optional<double> c_lin_closed_form;  // filled by callers for N = 2
  double psi_rms = 0.0;
  bool excited = false;
};

/// Least-squares line fit of I(t) = cumulative trapezoid of psi^2 over
/// the window [t_start_fit, end]; excited iff the slope clears
/// 1e-9 * psi_rms^2 (per second). psi samples are spaced dt apart
/// starting at t = 0. Throws when the window holds fewer than 10
/// samples or is shorter than min_window seconds.
ExcitationReport fit_excitation(const std::vector<double>& psi, double dt,
                                double t_start_fit, double min_window = 0.0);

struct ConvergenceReport {
  Eigen::VectorXd final_error;      // |theta_tilde_i(t_end)|
  Eigen::VectorXd settle_time;      // first t with relative error < 1%
  std::vector<bool> settled;
  std::vector<bool> monotonic;      // per the non-strict rule below
  Eigen::VectorXd overshoot_ratio;  // max |err| / |err at t_on|
};

/// Per-channel convergence metrics over a trace. Monotonicity compares
/// consecutive recorded samples with t > t_on + 1 s and allows slack
/// 1e-6 * |theta_i| per comparison, absorbing the residual
/// exponentially decaying terms.
ConvergenceReport summarize_convergence(const EstimatorTrace& trace,
                                        const Eigen::VectorXd& theta_true);

/// Flat name=value serialization used for report files.
std::string report_to_text(const ConvergenceReport& convergence,
                           const std::optional<ExcitationReport>& excitation);

}  // namespace freqest
