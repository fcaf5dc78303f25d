#pragma once

#include <Eigen/Dense>
#include <string>
#include <variant>
#include <vector>

namespace freqest {

// --- Operator bank (the H_i of the extension step) -------------------

struct DelayOperator {
  double delay = 0.0;  // s, > 0
};

struct FilterOperator {
  double alpha = 1.0;  // != 0
  double beta = 1.0;   // > 0
};

using Operator = std::variant<DelayOperator, FilterOperator>;

struct OperatorBank {
  std::vector<Operator> operators;  // q - 1 entries
};

/// Throws std::invalid_argument on non-positive delays, duplicate
/// delays, alpha == 0 or beta <= 0.
void validate(const OperatorBank& bank);

// --- Extended regressor ----------------------------------------------

/// Row 0 holds the instantaneous (rho, m^T); row i the i-th operator's
/// output. warmup is set while any delay operator still lacks history
/// (its rows read zero until then).
struct ExtendedRegressor {
  Eigen::VectorXd R_e;
  Eigen::MatrixXd M_e;
  bool warmup = false;
};

/// Stream-based operator application on a uniform time grid. Feed one
/// (rho, m) per step of size dt; delays are realized as ring buffers
/// with the delay rounded to the nearest grid multiple, filters carry
/// their own internal state advanced with RK4.
class RegressorExtender {
 public:
  RegressorExtender(OperatorBank bank, int dim, double dt);

  ExtendedRegressor push(double rho, const Eigen::VectorXd& m);

  /// Grid-rounded delay of operator i (delay operators only).
  double rounded_delay(std::size_t op_index) const;

  /// Human-readable notes for delays whose grid rounding exceeded 1e-9 s.
  const std::vector<std::string>& rounding_notes() const { return rounding_notes_; }

 private:
  struct DelayChannel {
    int steps = 0;
    std::size_t op_index = 0;
  };
  struct FilterChannel {
    double alpha = 0.0, beta = 0.0;
    double rho_state = 0.0;
    Eigen::VectorXd m_state;
    std::size_t op_index = 0;
  };

  OperatorBank bank_;
  int dim_;
  double dt_;
  std::vector<DelayChannel> delays_;
  std::vector<FilterChannel> filters_;
  // Shared sample history for the delay channels, ring-indexed by push count.
  std::vector<double> rho_hist_;
  std::vector<Eigen::VectorXd> m_hist_;
  int capacity_ = 0;
  long long pushes_ = 0;
  std::vector<std::string> rounding_notes_;
};

// --- Mixing -----------------------------------------------------------

/// psi = det(M_e), R = adj(M_e) R_e; each R_i equals psi * r_i when
/// R_e = M_e r exactly. psi = 0 is a legal output (adaptation stalls).
struct MixedRegression {
  double psi = 0.0;
  Eigen::VectorXd R;
  bool warmup = false;
};

MixedRegression mix(const ExtendedRegressor& ext);

/// Determinant by closed form for q <= 3, cofactor expansion for
/// q <= 5. Throws on larger sizes.
double det_small(const Eigen::MatrixXd& m);

/// adj(M) with adj(M) * M = det(M) * I; same size limits as det_small.
Eigen::MatrixXd adjugate_small(const Eigen::MatrixXd& m);

// --- Estimators -------------------------------------------------------

/// q decoupled channels r_hat_i driven by
/// d/dt r_hat_i = k_i psi (R_i - psi r_hat_i).
struct ScalarEstimatorState {
  Eigen::VectorXd r_hat;
  Eigen::VectorXd gains;  // k_i > 0
};

void validate(const ScalarEstimatorState& state);

/// Advances each channel over dt with (psi, R) held constant. The
/// frozen ODE is linear and scalar, so the step is its exact
/// exponential propagation; |error| never increases within a step.
void scalar_gradient_step(ScalarEstimatorState& state,
                          const MixedRegression& mixed, double dt);

/// Two-sample variant: uses the trapezoidal average of psi^2 (and of
/// the drive term) over the step, so the accumulated decay exponent
/// equals the trapezoidal integral of k_i psi^2.
void scalar_gradient_step(ScalarEstimatorState& state,
                          const MixedRegression& begin,
                          const MixedRegression& end, double dt);

/// d/dt r_hat = K m (rho - m^T r_hat), K symmetric positive definite.
struct VectorGradientState {
  Eigen::VectorXd r_hat;
  Eigen::MatrixXd gain;
};

/// Throws unless gain is symmetric positive definite.
void validate(const VectorGradientState& state);

/// Advances over dt with (rho, m) held constant, using the trapezoidal
/// implicit rule; unconditionally stable for any gain magnitude.
void vector_gradient_step(VectorGradientState& state, double rho,
                          const Eigen::VectorXd& m, double dt);

/// Two-sample variant averaging the regressor over the step.
void vector_gradient_step(VectorGradientState& state, double rho_begin,
                          const Eigen::VectorXd& m_begin, double rho_end,
                          const Eigen::VectorXd& m_end, double dt);

// --- Excitation -------------------------------------------------------

/// Cumulative trapezoidal integral of psi^2 on a uniform grid;
/// monotone non-decreasing, I[0] = 0. Throws on an empty trace.
std::vector<double> excitation_integral(const std::vector<double>& psi,
                                        double dt);

}  // namespace freqest
