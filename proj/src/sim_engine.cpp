#include "freqest/sim_engine.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "freqest/freq_algebra.hpp"
#include "freqest/ode.hpp"

namespace freqest {

namespace {

void append_num(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out += buf;
}

void record_row(EstimatorTrace& trace, double t, double u,
                const RegressorSample& sample, const Eigen::VectorXd& theta_hat,
                const Eigen::VectorXd& theta_true, double psi, bool warmup) {
  trace.times.push_back(t);
  trace.u.push_back(u);
  trace.y.push_back(sample.y);
  trace.phi.push_back(sample.phi);
  if (trace.has_psi) trace.psi.push_back(psi);
  trace.theta_hat.push_back(theta_hat);
  trace.theta_tilde.push_back(theta_hat - theta_true);
  trace.warmup.push_back(warmup ? 1 : 0);
}

}  // namespace

std::string trace_to_csv(const EstimatorTrace& trace) {
  std::string out;
  out.reserve(trace.size() * 32 * (3 + 2 * trace.n_freqs));
  out += "t,u,y";
  for (int i = 1; i <= trace.n_freqs; ++i) out += ",phi_" + std::to_string(i);
  if (trace.has_psi) out += ",psi";
  for (int i = 1; i <= trace.n_freqs; ++i) out += ",theta_hat_" + std::to_string(i);
  for (int i = 1; i <= trace.n_freqs; ++i) out += ",theta_tilde_" + std::to_string(i);
  out += ",warmup\n";

  for (std::size_t k = 0; k < trace.size(); ++k) {
    append_num(out, trace.times[k]);
    out += ',';
    append_num(out, trace.u[k]);
    out += ',';
    append_num(out, trace.y[k]);
    for (int i = 0; i < trace.n_freqs; ++i) {
      out += ',';
      append_num(out, trace.phi[k][i]);
    }
    if (trace.has_psi) {
      out += ',';
      append_num(out, trace.psi[k]);
    }
    for (int i = 0; i < trace.n_freqs; ++i) {
      out += ',';
      append_num(out, trace.theta_hat[k][i]);
    }
    for (int i = 0; i < trace.n_freqs; ++i) {
      out += ',';
      append_num(out, trace.theta_tilde[k][i]);
    }
    out += ',';
    out += trace.warmup[k] ? '1' : '0';
    out += '\n';
  }
  return out;
}

void write_trace_csv(const EstimatorTrace& trace, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open trace file " + path);
  f << trace_to_csv(trace);
}

ExperimentResult run_experiment(
    const MultisineSignal& signal, const SvfConfig& svf,
    const std::optional<GradientEstimatorConfig>& gradient,
    const std::optional<DremEstimatorConfig>& drem, const SimConfig& sim) {
  ExperimentResult result;

  const ValidationReport signal_report = validate(signal);
  if (!signal_report.ok())
    throw std::invalid_argument("invalid signal: " + signal_report.to_string());
  if (!(sim.dt > 0.0)) throw std::invalid_argument("sim: dt must be > 0");
  if (!(sim.t_end > 0.0)) throw std::invalid_argument("sim: t_end must be > 0");
  if (sim.record_stride < 1)
    throw std::invalid_argument("sim: record_stride must be >= 1");
  if (!gradient && !drem)
    throw std::invalid_argument("sim: configure at least one estimator");

  const int n = static_cast<int>(signal.n_freqs());
  const SvfMatrices matrices = build_matrices(svf);

  double w_max = 0.0;
  for (const auto& c : signal.components()) w_max = std::max(w_max, c.frequency);
  const double dt_limit = std::min(0.1 / svf.lambda, 0.1 / w_max);
  if (sim.dt > dt_limit) {
    std::ostringstream os;
    os << "dt = " << sim.dt << " exceeds the resolution guideline "
       << dt_limit << " for lambda = " << svf.lambda
       << ", max frequency = " << w_max;
    result.warnings.push_back(os.str());
  }

  const std::vector<double> omegas_vec = signal.frequencies();
  result.theta_true = theta_from_frequencies(
      Eigen::Map<const Eigen::VectorXd>(omegas_vec.data(), n));

  std::optional<GradientFrequencyEstimator> grad_est;
  if (gradient) grad_est.emplace(*gradient, n);
  std::optional<DremFrequencyEstimator> drem_est;
  if (drem) drem_est.emplace(*drem, n, sim.dt);
  if (drem_est)
    for (const auto& note : drem_est->rounding_notes())
      result.warnings.push_back("drem: " + note);

  if (grad_est) {
    result.gradient_trace.emplace();
    result.gradient_trace->n_freqs = n;
    result.gradient_trace->has_psi = false;
    result.gradient_trace->t_on = grad_est->t_on();
    result.gradient_trace->sample_dt = sim.dt * sim.record_stride;
  }
  if (drem_est) {
    result.drem_trace.emplace();
    result.drem_trace->n_freqs = n;
    result.drem_trace->has_psi = true;
    result.drem_trace->t_on = drem_est->t_on();
    result.drem_trace->sample_dt = sim.dt * sim.record_stride;
  }

  const long long steps = std::llround(sim.t_end / sim.dt);
  Eigen::VectorXd xi = Eigen::VectorXd::Zero(2 * n);

  const auto deriv = [&](double tt, const Eigen::VectorXd& x) {
    return svf_derivative(matrices, x, signal.evaluate(tt));
  };

  double u = signal.evaluate(0.0);
  RegressorSample sample = svf_output(matrices, xi, u, 0.0);
  FrequencyDremSample drem_sample;
  if (drem_est) drem_sample = drem_est->push(sample);

  const auto record_all = [&](double t, double u_now) {
    if (grad_est)
      record_row(*result.gradient_trace, t, u_now, sample, grad_est->theta_hat(),
                 result.theta_true, 0.0, t < grad_est->t_on());
    if (drem_est)
      record_row(*result.drem_trace, t, u_now, sample, drem_est->theta_hat(),
                 result.theta_true, drem_sample.psi, drem_sample.warmup);
  };

  record_all(0.0, u);

  for (long long k = 0; k < steps; ++k) {
    const double t = k * sim.dt;
    const double t_next = (k + 1) * sim.dt;

    xi = rk4_step(deriv, t, xi, sim.dt);
    const double u_next = signal.evaluate(t_next);
    RegressorSample sample_next = svf_output(matrices, xi, u_next, t_next);

    if (grad_est) grad_est->step(sample, sample_next, sim.dt);
    if (drem_est) {
      FrequencyDremSample drem_next = drem_est->push(sample_next);
      drem_est->step(drem_sample, drem_next, sim.dt);
      drem_sample = std::move(drem_next);
    }
    sample = std::move(sample_next);
    u = u_next;

    const bool finite = xi.allFinite() &&
                        (!grad_est || grad_est->theta_hat().allFinite()) &&
                        (!drem_est || drem_est->theta_hat().allFinite());
    if (!finite) {
      std::ostringstream os;
      os << "non-finite state at t = " << t_next << " s";
      throw std::runtime_error(os.str());
    }

    if ((k + 1) % sim.record_stride == 0) record_all(t_next, u);
  }

  return result;
}

}  // namespace freqest
