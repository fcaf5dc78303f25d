#include "freqest/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "freqest/analysis.hpp"

namespace freqest {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& v, int line) {
  std::size_t pos = 0;
  double out;
  try {
    out = std::stod(v, &pos);
  } catch (const std::exception&) {
    throw ConfigError(line, "expected a number, got '" + v + "'");
  }
  if (pos != v.size())
    throw ConfigError(line, "trailing characters after number in '" + v + "'");
  return out;
}

std::vector<double> parse_list(const std::string& v, int line) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(trim(item), line));
  if (out.empty()) throw ConfigError(line, "expected a comma-separated list");
  return out;
}

struct KeyValue {
  std::string value;
  int line;
};

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
  std::map<std::string, KeyValue> kv;
  {
    std::stringstream ss(text);
    std::string raw;
    int line = 0;
    while (std::getline(ss, raw)) {
      ++line;
      const auto comment = raw.find('#');
      if (comment != std::string::npos) raw.erase(comment);
      const std::string s = trim(raw);
      if (s.empty()) continue;
      const auto eq = s.find('=');
      if (eq == std::string::npos)
        throw ConfigError(line, "expected 'key = value', got '" + s + "'");
      const std::string key = trim(s.substr(0, eq));
      const std::string value = trim(s.substr(eq + 1));
      if (key.empty()) throw ConfigError(line, "empty key");
      if (kv.count(key)) throw ConfigError(line, "duplicate key '" + key + "'");
      kv[key] = {value, line};
    }
  }

  const auto take = [&](const std::string& key) -> std::optional<KeyValue> {
    auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    KeyValue out = it->second;
    kv.erase(it);
    return out;
  };
  const auto require = [&](const std::string& key) -> KeyValue {
    auto v = take(key);
    if (!v) throw ConfigError("missing required key '" + key + "'");
    return *v;
  };

  ExperimentConfig cfg;

  const KeyValue count_kv = require("signal.count");
  const int count = static_cast<int>(parse_double(count_kv.value, count_kv.line));
  if (count < 1) throw ConfigError(count_kv.line, "signal.count must be >= 1");
  for (int i = 1; i <= count; ++i) {
    const std::string prefix = "signal." + std::to_string(i) + ".";
    SinusoidComponent c;
    KeyValue a = require(prefix + "amplitude");
    c.amplitude = parse_double(a.value, a.line);
    KeyValue f = require(prefix + "frequency");
    c.frequency = parse_double(f.value, f.line);
    KeyValue p = require(prefix + "phase");
    c.phase = parse_double(p.value, p.line);
    cfg.signal.push_back(c);
  }

  const KeyValue lambda_kv = require("svf.lambda");
  cfg.lambda = parse_double(lambda_kv.value, lambda_kv.line);

  const KeyValue kind_kv = require("estimator.kind");
  if (kind_kv.value == "gradient")
    cfg.kind = EstimatorKind::gradient;
  else if (kind_kv.value == "drem")
    cfg.kind = EstimatorKind::drem;
  else if (kind_kv.value == "both")
    cfg.kind = EstimatorKind::both;
  else
    throw ConfigError(kind_kv.line,
                      "estimator.kind must be gradient, drem or both");

  if (cfg.kind == EstimatorKind::gradient || cfg.kind == EstimatorKind::both) {
    GradientEstimatorConfig g;
    const KeyValue gain_kv = require("gradient.gain");
    const std::vector<double> entries = parse_list(gain_kv.value, gain_kv.line);
    if (static_cast<int>(entries.size()) == count) {
      g.gain = Eigen::MatrixXd::Zero(count, count);
      for (int i = 0; i < count; ++i) g.gain(i, i) = entries[i];
    } else if (static_cast<int>(entries.size()) == count * count) {
      g.gain.resize(count, count);
      for (int i = 0; i < count; ++i)
        for (int j = 0; j < count; ++j) g.gain(i, j) = entries[i * count + j];
    } else {
      throw ConfigError(gain_kv.line,
                        "gradient.gain needs N (diagonal) or N*N entries");
    }
    if (auto t = take("gradient.t_on")) g.t_on = parse_double(t->value, t->line);
    cfg.gradient = std::move(g);
  }

  if (cfg.kind == EstimatorKind::drem || cfg.kind == EstimatorKind::both) {
    DremEstimatorConfig d;
    if (count > 1) {
      const KeyValue delays_kv = require("drem.delays");
      d.delays = parse_list(delays_kv.value, delays_kv.line);
      if (static_cast<int>(d.delays.size()) != count - 1)
        throw ConfigError(delays_kv.line, "drem.delays needs N - 1 entries");
      for (std::size_t i = 0; i < d.delays.size(); ++i)
        for (std::size_t j = i + 1; j < d.delays.size(); ++j)
          if (d.delays[i] == d.delays[j])
            throw ConfigError(delays_kv.line, "delays must be distinct");
    } else if (auto delays = take("drem.delays")) {
      throw ConfigError(delays->line, "drem.delays must be empty for N = 1");
    }
    const KeyValue gains_kv = require("drem.gains");
    const std::vector<double> gains = parse_list(gains_kv.value, gains_kv.line);
    if (static_cast<int>(gains.size()) != count)
      throw ConfigError(gains_kv.line, "drem.gains needs N entries");
    d.gains = Eigen::Map<const Eigen::VectorXd>(gains.data(), count);
    if (auto t = take("drem.t_on"))
      d.t_on = parse_double(t->value, t->line);
    else
      d.t_on = default_t_on(d.delays, cfg.lambda);
    cfg.drem = std::move(d);
  }

  const KeyValue dt_kv = require("sim.dt");
  cfg.sim.dt = parse_double(dt_kv.value, dt_kv.line);
  const KeyValue tend_kv = require("sim.t_end");
  cfg.sim.t_end = parse_double(tend_kv.value, tend_kv.line);
  if (auto s = take("sim.record_stride"))
    cfg.sim.record_stride = static_cast<int>(parse_double(s->value, s->line));

  if (auto dir = take("output.directory")) cfg.output.directory = dir->value;
  if (auto emit = take("output.emit_reports")) {
    if (emit->value == "true")
      cfg.output.emit_reports = true;
    else if (emit->value == "false")
      cfg.output.emit_reports = false;
    else
      throw ConfigError(emit->line, "output.emit_reports must be true or false");
  }

  if (!kv.empty()) {
    const auto& first = *kv.begin();
    throw ConfigError(first.second.line, "unknown key '" + first.first + "'");
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open config file " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_config_text(ss.str());
}

std::string serialize_config(const ExperimentConfig& config) {
  std::ostringstream os;
  os << "signal.count = " << config.signal.size() << "\n";
  for (std::size_t i = 0; i < config.signal.size(); ++i) {
    const std::string prefix = "signal." + std::to_string(i + 1) + ".";
    os << prefix << "amplitude = " << fmt(config.signal[i].amplitude) << "\n";
    os << prefix << "frequency = " << fmt(config.signal[i].frequency) << "\n";
    os << prefix << "phase = " << fmt(config.signal[i].phase) << "\n";
  }
  os << "svf.lambda = " << fmt(config.lambda) << "\n";
  os << "estimator.kind = "
     << (config.kind == EstimatorKind::gradient
             ? "gradient"
             : config.kind == EstimatorKind::drem ? "drem" : "both")
     << "\n";
  if (config.gradient) {
    os << "gradient.gain = ";
    const auto& k = config.gradient->gain;
    for (int i = 0; i < k.rows(); ++i)
      for (int j = 0; j < k.cols(); ++j)
        os << (i == 0 && j == 0 ? "" : ",") << fmt(k(i, j));
    os << "\n";
    os << "gradient.t_on = " << fmt(config.gradient->t_on) << "\n";
  }
  if (config.drem) {
    if (!config.drem->delays.empty()) {
      os << "drem.delays = ";
      for (std::size_t i = 0; i < config.drem->delays.size(); ++i)
        os << (i ? "," : "") << fmt(config.drem->delays[i]);
      os << "\n";
    }
    os << "drem.gains = ";
    for (int i = 0; i < config.drem->gains.size(); ++i)
      os << (i ? "," : "") << fmt(config.drem->gains[i]);
    os << "\n";
    os << "drem.t_on = " << fmt(config.drem->t_on) << "\n";
  }
  os << "sim.dt = " << fmt(config.sim.dt) << "\n";
  os << "sim.t_end = " << fmt(config.sim.t_end) << "\n";
  os << "sim.record_stride = " << config.sim.record_stride << "\n";
  os << "output.directory = " << config.output.directory << "\n";
  os << "output.emit_reports = " << (config.output.emit_reports ? "true" : "false")
     << "\n";
  return os.str();
}

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;

std::vector<SinusoidComponent> signal_n2() {
  return {{1.2, 2.0, kPi / 3.0}, {2.0, 3.0, kPi / 4.0}};
}

// The N = 3 experiment only pins theta = [38, 361, 900], i.e. the
// frequencies (2, 3, 5); amplitudes and phases are project choices.
std::vector<SinusoidComponent> signal_n3() {
  return {{1.0, 2.0, 0.0}, {1.0, 3.0, kPi / 4.0}, {1.0, 5.0, kPi / 3.0}};
}

ExperimentConfig preset_fig_basic_n2() {
  ExperimentConfig c;
  c.signal = signal_n2();
  c.lambda = 5.0;
  c.kind = EstimatorKind::gradient;
  GradientEstimatorConfig g;
  g.gain = Eigen::Vector2d(30.0, 3.0).asDiagonal();
  g.t_on = 5.0;
  c.gradient = g;
  c.sim = {1e-3, 200.0, 10};
  return c;
}

ExperimentConfig preset_fig_drem_n2() {
  ExperimentConfig c;
  c.signal = signal_n2();
  c.lambda = 5.0;
  c.kind = EstimatorKind::drem;
  DremEstimatorConfig d;
  d.delays = {0.3};
  d.gains = Eigen::Vector2d(0.1, 0.1);
  d.t_on = 5.0;
  c.drem = d;
  c.sim = {1e-3, 150.0, 10};
  return c;
}

ExperimentConfig preset_fig_basic_n3() {
  ExperimentConfig c;
  c.signal = signal_n3();
  c.lambda = 25.0;  // the "l = 25" spelling of this constant means the same
  c.kind = EstimatorKind::gradient;
  GradientEstimatorConfig g;
  g.gain = Eigen::Vector3d(240.0, 40.0, 10.0).asDiagonal();
  g.t_on = 2.0;
  c.gradient = g;
  c.sim = {1e-3, 100.0, 10};
  return c;
}

ExperimentConfig preset_fig_drem_n3() {
  ExperimentConfig c;
  c.signal = signal_n3();
  c.lambda = 25.0;
  c.kind = EstimatorKind::drem;
  DremEstimatorConfig d;
  d.delays = {0.2, 0.5};
  d.gains = Eigen::Vector3d(1e-5, 1e-5, 1e-5);
  d.t_on = 2.0;
  c.drem = d;
  // Finer grid than the N = 2 presets: with lambda^6 ~ 2.4e8 in the
  // output map, the integration residual at dt = 1e-3 is ~1 absolute
  // and the adjugate amplifies it into visible estimate ripple.
  c.sim = {2e-4, 100.0, 10};
  return c;
}

ExperimentConfig preset_singular_delay_n2() {
  ExperimentConfig c = preset_fig_drem_n2();
  // d1 = 2*pi is the common period of the two components, so Phi_e is
  // singular for all t. The grid is chosen commensurate with the delay
  // (dt = 2*pi / 6400) so rounding does not mask the degeneracy, and
  // t_on leaves the delayed row's filter transient time to die out.
  c.drem->delays = {kTwoPi};
  c.drem->t_on = 13.0;
  c.sim.dt = kTwoPi / 6400.0;
  return c;
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"fig-basic-n2", "fig-drem-n2", "fig-gains-n2",
          "fig-basic-n3", "fig-drem-n3", "singular-delay-n2"};
}

std::vector<PresetRun> make_preset(const std::string& name) {
  if (name == "fig-basic-n2") return {{name, preset_fig_basic_n2()}};
  if (name == "fig-drem-n2") return {{name, preset_fig_drem_n2()}};
  if (name == "fig-basic-n3") return {{name, preset_fig_basic_n3()}};
  if (name == "fig-drem-n3") return {{name, preset_fig_drem_n3()}};
  if (name == "singular-delay-n2") return {{name, preset_singular_delay_n2()}};
  if (name == "fig-gains-n2") {
    std::vector<PresetRun> runs;
    for (double gamma : {0.03, 0.1, 0.3}) {
      ExperimentConfig c = preset_fig_drem_n2();
      c.drem->gains = Eigen::Vector2d(gamma, gamma);
      std::ostringstream os;
      os << "fig-gains-n2-gamma" << gamma;
      runs.push_back({os.str(), std::move(c)});
    }
    return runs;
  }
  std::ostringstream os;
  os << "unknown preset '" << name << "'; available:";
  for (const auto& p : preset_names()) os << " " << p;
  throw ConfigError(os.str());
}

RunOutputs run_and_write(const ExperimentConfig& config,
                         const std::string& out_dir,
                         const std::string& run_name) {
  RunOutputs outputs;
  std::filesystem::create_directories(out_dir);

  const MultisineSignal signal(config.signal);
  const SvfConfig svf{static_cast<int>(config.signal.size()), config.lambda};

  // Prop. 4's delay bound is sufficient, not necessary: warn, then run.
  if (config.drem && config.signal.size() == 2 && !config.drem->delays.empty()) {
    const double w1 = config.signal[0].frequency;
    const double w2 = config.signal[1].frequency;
    if (!delay_bound_satisfied(config.drem->delays[0], w1, w2)) {
      std::ostringstream os;
      os << "d1 = " << config.drem->delays[0]
         << " violates the sufficient bound pi/max(w1,w2) = "
         << kPi / std::max(w1, w2) << "; excitation is not guaranteed";
      outputs.warnings.push_back(os.str());
    }
  }

  ExperimentResult result =
      run_experiment(signal, svf, config.gradient, config.drem, config.sim);
  for (auto& w : result.warnings) outputs.warnings.push_back(std::move(w));

  const auto write_text = [&](const std::string& file, const std::string& text) {
    const std::string path = out_dir + "/" + file;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file " + path);
    f << text;
    outputs.files.push_back(path);
  };

  const auto emit = [&](const EstimatorTrace& trace, const std::string& kind) {
    write_text(run_name + "_" + kind + ".csv", trace_to_csv(trace));
    if (!config.output.emit_reports) return;
    const ConvergenceReport conv = summarize_convergence(trace, result.theta_true);
    std::optional<ExcitationReport> exc;
    if (trace.has_psi) {
      double slowest = config.signal[0].frequency;
      for (const auto& c : config.signal) slowest = std::min(slowest, c.frequency);
      try {
        exc = fit_excitation(trace.psi, trace.sample_dt, trace.t_on,
                             10.0 * kTwoPi / slowest);
        if (config.signal.size() == 2 && config.drem) {
          const double b1 =
              svf_steady_amplitude(config.lambda, 2, config.signal[0]);
          const double b2 =
              svf_steady_amplitude(config.lambda, 2, config.signal[1]);
          exc->c_lin_closed_form = c_lin_closed_form(
              b1, b2, config.signal[0].frequency, config.signal[1].frequency,
              config.drem->delays[0]);
        }
      } catch (const std::invalid_argument& e) {
        outputs.warnings.push_back(std::string("excitation fit skipped: ") +
                                   e.what());
      }
    }
    write_text(run_name + "_" + kind + "_report.txt", report_to_text(conv, exc));
  };

  if (result.gradient_trace) emit(*result.gradient_trace, "gradient");
  if (result.drem_trace) emit(*result.drem_trace, "drem");
  write_text(run_name + "_config.txt", serialize_config(config));
  return outputs;
}

}  // namespace freqest
