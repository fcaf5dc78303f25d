#include "freqest/analysis.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "freqest/regression_core.hpp"

namespace freqest {

double svf_steady_amplitude(double lambda, int n_freqs,
                            const SinusoidComponent& component) {
  if (!(lambda > 0.0))
    throw std::invalid_argument("svf_steady_amplitude: lambda must be > 0");
  const double w2 = component.frequency * component.frequency;
  const double ratio = (lambda * lambda) / (lambda * lambda + w2);
  return component.amplitude * std::pow(ratio, n_freqs);
}

double c_lin_closed_form(double b1, double b2, double omega1, double omega2,
                         double d1) {
  const double dw2 = omega1 * omega1 - omega2 * omega2;
  return 0.5 * b1 * b1 * b2 * b2 * dw2 * dw2 *
         (1.0 - std::cos(d1 * omega1) * std::cos(d1 * omega2));
}

bool delay_bound_satisfied(double d1, double omega1, double omega2) {
  return d1 < M_PI / std::max(omega1, omega2);
}

ExcitationReport fit_excitation(const std::vector<double>& psi, double dt,
                                double t_start_fit, double min_window) {
  const std::vector<double> integral = excitation_integral(psi, dt);
  std::size_t start = 0;
  while (start < psi.size() && start * dt < t_start_fit) ++start;
  const std::size_t count = psi.size() - start;
  if (count < 10)
    throw std::invalid_argument("fit_excitation: window too short");
  const double window = (count - 1) * dt;
  if (window < min_window)
    throw std::invalid_argument("fit_excitation: window too short");

  // Least squares for I(t) ~ slope * t + intercept over the window.
  double st = 0.0, si = 0.0, stt = 0.0, sti = 0.0;
  for (std::size_t k = start; k < psi.size(); ++k) {
    const double t = k * dt;
    st += t;
    si += integral[k];
    stt += t * t;
    sti += t * integral[k];
  }
  const double m = static_cast<double>(count);
  const double denom = m * stt - st * st;

  ExcitationReport report;
  report.c_lin_empirical = (m * sti - st * si) / denom;

  double ss = 0.0;
  for (std::size_t k = start; k < psi.size(); ++k) ss += psi[k] * psi[k];
  report.psi_rms = std::sqrt(ss / m);
  report.excited =
      report.c_lin_empirical > 1e-9 * report.psi_rms * report.psi_rms;
  return report;
}

ConvergenceReport summarize_convergence(const EstimatorTrace& trace,
                                        const Eigen::VectorXd& theta_true) {
  if (trace.size() == 0)
    throw std::invalid_argument("summarize_convergence: empty trace");
  const int n = trace.n_freqs;
  if (theta_true.size() != n)
    throw std::invalid_argument("summarize_convergence: theta dimension mismatch");

  ConvergenceReport report;
  report.final_error.resize(n);
  report.settle_time = Eigen::VectorXd::Constant(n, -1.0);
  report.settled.assign(n, false);
  report.monotonic.assign(n, true);
  report.overshoot_ratio = Eigen::VectorXd::Zero(n);

  // Reference index: first recorded sample at or past adaptation start.
  std::size_t ref = 0;
  while (ref + 1 < trace.size() && trace.times[ref] < trace.t_on) ++ref;

  for (int i = 0; i < n; ++i) {
    const double scale = std::abs(theta_true[i]);
    const double err_ref = std::abs(trace.theta_tilde[ref][i]);
    double max_err = 0.0;
    double prev_err = 0.0;
    bool have_prev = false;
    for (std::size_t k = 0; k < trace.size(); ++k) {
      const double err = std::abs(trace.theta_tilde[k][i]);
      if (trace.times[k] >= trace.t_on) {
        max_err = std::max(max_err, err);
        if (!report.settled[i] && err < 0.01 * scale) {
          report.settled[i] = true;
          report.settle_time[i] = trace.times[k];
        }
      }
      if (trace.times[k] > trace.t_on + 1.0) {
        if (have_prev && err > prev_err + 1e-6 * scale)
          report.monotonic[i] = false;
        prev_err = err;
        have_prev = true;
      }
    }
    report.final_error[i] = std::abs(trace.theta_tilde.back()[i]);
    report.overshoot_ratio[i] = err_ref > 0.0 ? max_err / err_ref : 0.0;
  }
  return report;
}

namespace {

void kv(std::ostringstream& os, const std::string& key, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  os << key << "=" << buf << "\n";
}

}  // namespace

std::string report_to_text(const ConvergenceReport& convergence,
                           const std::optional<ExcitationReport>& excitation) {
  std::ostringstream os;
  for (int i = 0; i < convergence.final_error.size(); ++i) {
    const std::string suffix = "_" + std::to_string(i + 1);
    kv(os, "final_error" + suffix, convergence.final_error[i]);
    os << "settled" + suffix << "=" << (convergence.settled[i] ? 1 : 0) << "\n";
    kv(os, "settle_time" + suffix, convergence.settle_time[i]);
    os << "monotonic" + suffix << "=" << (convergence.monotonic[i] ? 1 : 0) << "\n";
    kv(os, "overshoot_ratio" + suffix, convergence.overshoot_ratio[i]);
  }
  if (excitation) {
    kv(os, "c_lin_empirical", excitation->c_lin_empirical);
    if (excitation->c_lin_closed_form)
      kv(os, "c_lin_closed_form", *excitation->c_lin_closed_form);
    kv(os, "psi_rms", excitation->psi_rms);
    os << "verdict=" << (excitation->excited ? "excited" : "degenerate") << "\n";
  }
  return os.str();
}

}  // namespace freqest
