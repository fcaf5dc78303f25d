#pragma once

#include <Eigen/Dense>

namespace freqest {

/// Classical fixed-step 4th-order Runge-Kutta for xdot = f(t, x).
/// The derivative callable is evaluated at the stage times; callers
/// that want a zero-order-held input simply capture a constant.
template <class Deriv>
Eigen::VectorXd rk4_step(Deriv&& f, double t, const Eigen::VectorXd& x,
                         double dt) {
  const Eigen::VectorXd k1 = f(t, x);
  const Eigen::VectorXd k2 = f(t + 0.5 * dt, Eigen::VectorXd(x + 0.5 * dt * k1));
  const Eigen::VectorXd k3 = f(t + 0.5 * dt, Eigen::VectorXd(x + 0.5 * dt * k2));
  const Eigen::VectorXd k4 = f(t + dt, Eigen::VectorXd(x + dt * k3));
  return x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace freqest
