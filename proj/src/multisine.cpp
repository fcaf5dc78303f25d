#include "freqest/multisine.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace freqest {

double normalize_phase(double phase) {
  double p = std::fmod(phase, kTwoPi);
  if (p < 0.0) p += kTwoPi;
  return p;
}

bool frequencies_distinct(double w1, double w2) {
  return std::abs(w1 - w2) > 1e-9 * std::max(w1, w2);
}

MultisineSignal::MultisineSignal(std::vector<SinusoidComponent> components)
    : components_(std::move(components)) {
  for (auto& c : components_) c.phase = normalize_phase(c.phase);
}

double MultisineSignal::evaluate(double t) const {
  double u = 0.0;
  for (const auto& c : components_)
    u += c.amplitude * std::sin(c.frequency * t + c.phase);
  return u;
}

double MultisineSignal::amplitude_bound() const {
  double s = 0.0;
  for (const auto& c : components_) s += c.amplitude;
  return s;
}

std::vector<double> MultisineSignal::frequencies() const {
  std::vector<double> w;
  w.reserve(components_.size());
  for (const auto& c : components_) w.push_back(c.frequency);
  return w;
}

std::string ValidationReport::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < violations.size(); ++i) {
    if (i) os << "; ";
    os << violations[i];
  }
  return os.str();
}

ValidationReport validate(const MultisineSignal& signal) {
  ValidationReport report;
  const auto& cs = signal.components();
  if (cs.empty()) report.violations.push_back("signal has no components");
  for (std::size_t i = 0; i < cs.size(); ++i) {
    std::ostringstream os;
    if (!(cs[i].amplitude > 0.0)) {
      os << "component " << i + 1 << ": non-positive amplitude " << cs[i].amplitude;
      report.violations.push_back(os.str());
      continue;
    }
    if (!(cs[i].frequency > 0.0)) {
      os << "component " << i + 1 << ": non-positive frequency " << cs[i].frequency;
      report.violations.push_back(os.str());
    }
  }
  for (std::size_t i = 0; i < cs.size(); ++i)
    for (std::size_t j = i + 1; j < cs.size(); ++j)
      if (!frequencies_distinct(cs[i].frequency, cs[j].frequency)) {
        std::ostringstream os;
        os << "components " << i + 1 << " and " << j + 1
           << ": duplicate frequency " << cs[i].frequency;
        report.violations.push_back(os.str());
      }
  return report;
}

}  // namespace freqest
