#include "freqest/regression_core.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace freqest {

void validate(const OperatorBank& bank) {
  std::vector<double> delays;
  for (const auto& op : bank.operators) {
    if (const auto* d = std::get_if<DelayOperator>(&op)) {
      if (!(d->delay > 0.0))
        throw std::invalid_argument("operator bank: delay must be > 0");
      delays.push_back(d->delay);
    } else {
      const auto& f = std::get<FilterOperator>(op);
      if (f.alpha == 0.0)
        throw std::invalid_argument("operator bank: filter alpha must be nonzero");
      if (!(f.beta > 0.0))
        throw std::invalid_argument("operator bank: filter beta must be > 0");
    }
  }
  for (std::size_t i = 0; i < delays.size(); ++i)
    for (std::size_t j = i + 1; j < delays.size(); ++j)
      if (delays[i] == delays[j])
        throw std::invalid_argument("operator bank: delays must be distinct");
}

RegressorExtender::RegressorExtender(OperatorBank bank, int dim, double dt)
    : bank_(std::move(bank)), dim_(dim), dt_(dt) {
  if (dim_ < 1) throw std::invalid_argument("regressor extender: dim must be >= 1");
  if (!(dt_ > 0.0)) throw std::invalid_argument("regressor extender: dt must be > 0");
  validate(bank_);

  int max_steps = 0;
  for (std::size_t i = 0; i < bank_.operators.size(); ++i) {
    if (const auto* d = std::get_if<DelayOperator>(&bank_.operators[i])) {
      DelayChannel ch;
      ch.steps = static_cast<int>(std::llround(d->delay / dt_));
      if (ch.steps < 1) ch.steps = 1;
      ch.op_index = i;
      const double rounding = std::abs(ch.steps * dt_ - d->delay);
      if (rounding > 1e-9) {
        std::ostringstream os;
        os << "delay " << d->delay << " s rounded to grid multiple "
           << ch.steps * dt_ << " s (off by " << rounding << " s)";
        rounding_notes_.push_back(os.str());
      }
      max_steps = std::max(max_steps, ch.steps);
      delays_.push_back(ch);
    } else {
      const auto& f = std::get<FilterOperator>(bank_.operators[i]);
      FilterChannel ch;
      ch.alpha = f.alpha;
      ch.beta = f.beta;
      ch.m_state = Eigen::VectorXd::Zero(dim_);
      ch.op_index = i;
      filters_.push_back(ch);
    }
  }
  capacity_ = max_steps + 1;
  rho_hist_.assign(capacity_, 0.0);
  m_hist_.assign(capacity_, Eigen::VectorXd::Zero(dim_));
}

double RegressorExtender::rounded_delay(std::size_t op_index) const {
  for (const auto& ch : delays_)
    if (ch.op_index == op_index) return ch.steps * dt_;
  throw std::invalid_argument("regressor extender: not a delay operator");
}

ExtendedRegressor RegressorExtender::push(double rho, const Eigen::VectorXd& m) {
  if (m.size() != dim_)
    throw std::invalid_argument("regressor extender: regressor dimension mismatch");

  const int q = static_cast<int>(bank_.operators.size()) + 1;
  ExtendedRegressor ext;
  ext.R_e = Eigen::VectorXd::Zero(q);
  ext.M_e = Eigen::MatrixXd::Zero(q, dim_);
  ext.R_e[0] = rho;
  ext.M_e.row(0) = m.transpose();

  rho_hist_[pushes_ % capacity_] = rho;
  m_hist_[pushes_ % capacity_] = m;

  for (const auto& ch : delays_) {
    const int row = static_cast<int>(ch.op_index) + 1;
    if (pushes_ >= ch.steps) {
      const long long idx = (pushes_ - ch.steps) % capacity_;
      ext.R_e[row] = rho_hist_[idx];
      ext.M_e.row(row) = m_hist_[idx].transpose();
    } else {
      ext.warmup = true;  // rows stay zero until history fills
    }
  }

  for (auto& ch : filters_) {
    const int row = static_cast<int>(ch.op_index) + 1;
    if (pushes_ > 0) {
      // Exact zero-order-hold update of x' = -beta x + alpha u.
      const double decay = std::exp(-ch.beta * dt_);
      const double gain = ch.alpha / ch.beta * (1.0 - decay);
      ch.rho_state = ch.rho_state * decay + gain * rho;
      ch.m_state = ch.m_state * decay + gain * m;
    }
    ext.R_e[row] = ch.rho_state;
    ext.M_e.row(row) = ch.m_state.transpose();
  }

  ++pushes_;
  return ext;
}

// --- det / adjugate ---------------------------------------------------

namespace {

double det_cofactor(const Eigen::MatrixXd& m) {
  const int n = static_cast<int>(m.rows());
  if (n == 1) return m(0, 0);
  if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  if (n == 3)
    return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
           m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
           m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
  // Expansion along the first row for q = 4, 5.
  double det = 0.0;
  double sign = 1.0;
  Eigen::MatrixXd minor(n - 1, n - 1);
  for (int j = 0; j < n; ++j) {
    for (int r = 1; r < n; ++r) {
      int cc = 0;
      for (int c = 0; c < n; ++c) {
        if (c == j) continue;
        minor(r - 1, cc++) = m(r, c);
      }
    }
    det += sign * m(0, j) * det_cofactor(minor);
    sign = -sign;
  }
  return det;
}

}  // namespace

double det_small(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols() || m.rows() < 1 || m.rows() > 5)
    throw std::invalid_argument("det_small: square matrices of size 1..5 only");
  return det_cofactor(m);
}

Eigen::MatrixXd adjugate_small(const Eigen::MatrixXd& m) {
  const int n = static_cast<int>(m.rows());
  if (m.cols() != n || n < 1 || n > 5)
    throw std::invalid_argument("adjugate_small: square matrices of size 1..5 only");
  Eigen::MatrixXd adj(n, n);
  if (n == 1) {
    adj(0, 0) = 1.0;
    return adj;
  }
  if (n == 2) {
    adj << m(1, 1), -m(0, 1), -m(1, 0), m(0, 0);
    return adj;
  }
  Eigen::MatrixXd minor(n - 1, n - 1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      int rr = 0;
      for (int r = 0; r < n; ++r) {
        if (r == i) continue;
        int cc = 0;
        for (int c = 0; c < n; ++c) {
          if (c == j) continue;
          minor(rr, cc++) = m(r, c);
        }
        ++rr;
      }
      const double cof = (((i + j) % 2) ? -1.0 : 1.0) * det_cofactor(minor);
      adj(j, i) = cof;  // transpose of the cofactor matrix
    }
  }
  return adj;
}

MixedRegression mix(const ExtendedRegressor& ext) {
  if (!ext.M_e.allFinite())
    throw std::invalid_argument("mix: non-finite extended regressor");
  if (ext.M_e.rows() != ext.M_e.cols())
    throw std::invalid_argument("mix: extended regressor matrix must be square");
  MixedRegression out;
  out.psi = det_small(ext.M_e);
  out.R = adjugate_small(ext.M_e) * ext.R_e;
  out.warmup = ext.warmup;
  return out;
}

// --- estimator steps --------------------------------------------------

namespace {

// (1 - exp(-x)) / x, stable near zero.
double phi1(double x) {
  if (std::abs(x) < 1e-8) return 1.0 - 0.5 * x;
  return -std::expm1(-x) / x;
}

}  // namespace

void validate(const ScalarEstimatorState& state) {
  if (state.r_hat.size() != state.gains.size())
    throw std::invalid_argument("scalar estimator: gain count must match r_hat");
  for (int i = 0; i < state.gains.size(); ++i)
    if (!(state.gains[i] > 0.0))
      throw std::invalid_argument("scalar estimator: gains must be > 0");
}

void scalar_gradient_step(ScalarEstimatorState& state,
                          const MixedRegression& mixed, double dt) {
  scalar_gradient_step(state, mixed, mixed, dt);
}

void scalar_gradient_step(ScalarEstimatorState& state,
                          const MixedRegression& begin,
                          const MixedRegression& end, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("scalar_gradient_step: dt must be > 0");
  const int q = static_cast<int>(state.r_hat.size());
  if (begin.R.size() != q || end.R.size() != q)
    throw std::invalid_argument("scalar_gradient_step: dimension mismatch");
  const double psi2 = 0.5 * (begin.psi * begin.psi + end.psi * end.psi);
  for (int i = 0; i < q; ++i) {
    const double k = state.gains[i];
    const double a = k * psi2;
    const double b = 0.5 * k * (begin.psi * begin.R[i] + end.psi * end.R[i]);
    // Exact step of r' = -a r + b over dt.
    state.r_hat[i] += dt * phi1(a * dt) * (b - a * state.r_hat[i]);
  }
}

void validate(const VectorGradientState& state) {
  const auto& k = state.gain;
  if (k.rows() != k.cols() || k.rows() != state.r_hat.size())
    throw std::invalid_argument("vector estimator: gain must be q x q");
  if (!k.isApprox(k.transpose(), 1e-12))
    throw std::invalid_argument("vector estimator: gain must be symmetric");
  Eigen::LLT<Eigen::MatrixXd> llt(k);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument("vector estimator: gain must be positive definite");
}

void vector_gradient_step(VectorGradientState& state, double rho,
                          const Eigen::VectorXd& m, double dt) {
  vector_gradient_step(state, rho, m, rho, m, dt);
}

void vector_gradient_step(VectorGradientState& state, double rho_begin,
                          const Eigen::VectorXd& m_begin, double rho_end,
                          const Eigen::VectorXd& m_end, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("vector_gradient_step: dt must be > 0");
  const int q = static_cast<int>(state.r_hat.size());
  if (m_begin.size() != q || m_end.size() != q || state.gain.rows() != q)
    throw std::invalid_argument("vector_gradient_step: dimension mismatch");

  // Trapezoidal implicit step of r' = K m (rho - m^T r); stiff-safe for
  // the large phi^T K phi rates the paper's gains produce.
  const Eigen::MatrixXd ks =
      0.5 * state.gain * (m_begin * m_begin.transpose() + m_end * m_end.transpose());
  const Eigen::VectorXd kc =
      0.5 * state.gain * (m_begin * rho_begin + m_end * rho_end);
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(q, q);
  const Eigen::VectorXd rhs =
      (eye - 0.5 * dt * ks) * state.r_hat + dt * kc;
  state.r_hat = (eye + 0.5 * dt * ks).partialPivLu().solve(rhs);
}

std::vector<double> excitation_integral(const std::vector<double>& psi,
                                        double dt) {
  if (psi.empty())
    throw std::invalid_argument("excitation_integral: empty trace");
  std::vector<double> integral(psi.size(), 0.0);
  for (std::size_t k = 1; k < psi.size(); ++k)
    integral[k] = integral[k - 1] +
                  0.5 * dt * (psi[k - 1] * psi[k - 1] + psi[k] * psi[k]);
  return integral;
}

}  // namespace freqest
