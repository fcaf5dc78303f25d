#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "freqest/freq_estimator.hpp"
#include "freqest/multisine.hpp"
#include "freqest/sim_engine.hpp"
#include "freqest/svf.hpp"

namespace freqest {

enum class EstimatorKind { gradient, drem, both };

struct OutputConfig {
  std::string directory = "out";
  bool emit_reports = true;
};

/// Everything one run needs: the signal, the filter pole, the
/// estimator(s), and the integration grid.
struct ExperimentConfig {
  std::vector<SinusoidComponent> signal;
  double lambda = 5.0;
  EstimatorKind kind = EstimatorKind::drem;
  std::optional<GradientEstimatorConfig> gradient;
  std::optional<DremEstimatorConfig> drem;
  SimConfig sim;
  OutputConfig output;
};

struct ConfigError : std::invalid_argument {
  ConfigError(int line, const std::string& message)
      : std::invalid_argument("config line " + std::to_string(line) + ": " + message),
        line_number(line) {}
  explicit ConfigError(const std::string& message)
      : std::invalid_argument(message), line_number(0) {}
  int line_number;
};

/// Flat key = value text; see the README for the key set. Throws
/// ConfigError with line diagnostics on parse failure and on schema
/// violations.
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config(const std::string& path);

/// Inverse of parse_config_text: parse(serialize(c)) runs byte-identically.
std::string serialize_config(const ExperimentConfig& config);

struct PresetRun {
  std::string name;
  ExperimentConfig config;
};

std::vector<std::string> preset_names();

/// Expands a preset into one or more concrete runs (the gain-study
/// preset fans out over a small gamma grid). Throws ConfigError listing
/// the available names on an unknown preset.
std::vector<PresetRun> make_preset(const std::string& name);

struct RunOutputs {
  std::vector<std::string> files;
  std::vector<std::string> warnings;
};

/// Runs one experiment and writes its trace CSV(s), report file(s) and
/// the serialized config under out_dir, all prefixed with run_name.
RunOutputs run_and_write(const ExperimentConfig& config,
                         const std::string& out_dir,
                         const std::string& run_name);

}  // namespace freqest
