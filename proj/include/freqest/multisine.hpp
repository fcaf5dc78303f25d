#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace freqest {

inline constexpr double kTwoPi = 6.2831853071795864769252867665590;

/// One sinusoidal term A*sin(w*t + phase) of the measured signal.
struct SinusoidComponent {
  double amplitude = 1.0;  // > 0
  double frequency = 1.0;  // rad/s, > 0
  double phase = 0.0;      // rad, stored in [0, 2*pi)
};

/// Wraps an arbitrary phase into [0, 2*pi).
double normalize_phase(double phase);

/// Two frequencies count as distinct when their gap exceeds
/// 1e-9 * max(w1, w2); near-collisions degrade excitation as badly
/// as exact ones.
bool frequencies_distinct(double w1, double w2);

/// Sum of N sinusoids with pairwise distinct frequencies.
/// Immutable after construction; phases are normalized on entry.
class MultisineSignal {
 public:
  explicit MultisineSignal(std::vector<SinusoidComponent> components);

  double evaluate(double t) const;

  const std::vector<SinusoidComponent>& components() const { return components_; }
  std::size_t n_freqs() const { return components_.size(); }

  /// Upper bound sum(A_i) on |u(t)|.
  double amplitude_bound() const;

  std::vector<double> frequencies() const;

 private:
  std::vector<SinusoidComponent> components_;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
  std::string to_string() const;
};

/// Checks positive amplitudes, positive pairwise-distinct frequencies.
/// Violations are reported, not thrown.
ValidationReport validate(const MultisineSignal& signal);

}  // namespace freqest
