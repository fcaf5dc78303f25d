#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "freqest/freq_algebra.hpp"
#include "freqest/multisine.hpp"
#include "freqest/ode.hpp"
#include "freqest/svf.hpp"
#include "oracles.hpp"

using namespace freqest;

TEST_CASE("companion matrices for (s + lambda)^{2N}") {
  const SvfMatrices m = build_matrices({2, 5.0});
  REQUIRE(m.a_coeffs.size() == 4);
  CHECK(m.a_coeffs[0] == doctest::Approx(625.0));
  CHECK(m.a_coeffs[1] == doctest::Approx(500.0));
  CHECK(m.a_coeffs[2] == doctest::Approx(150.0));
  CHECK(m.a_coeffs[3] == doctest::Approx(20.0));

  const SvfMatrices m1 = build_matrices({1, 1.0});
  CHECK(m1.a_coeffs[0] == doctest::Approx(1.0));
  CHECK(m1.a_coeffs[1] == doctest::Approx(2.0));

  CHECK_THROWS_AS(build_matrices({2, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(build_matrices({0, 1.0}), std::invalid_argument);
}

TEST_CASE("coefficients match the convolution oracle") {
  for (int n : {1, 2, 3, 4}) {
    for (double lambda : {0.5, 1.0, 5.0, 25.0}) {
      const SvfMatrices m = build_matrices({n, lambda});
      const auto poly = oracles::expand_repeated_pole(lambda, 2 * n);
      REQUIRE(poly.size() == static_cast<std::size_t>(2 * n + 1));
      for (int k = 0; k < 2 * n; ++k)
        CHECK(m.a_coeffs[k] == doctest::Approx(poly[k]).epsilon(1e-13));
      CHECK(poly.back() == 1.0);
    }
  }
}

TEST_CASE("companion structure and B vector") {
  const SvfMatrices m = build_matrices({2, 5.0});
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 4; ++j)
      CHECK(m.A(i, j) == (j == i + 1 ? 1.0 : 0.0));
  for (int j = 0; j < 4; ++j) CHECK(m.A(3, j) == -m.a_coeffs[j]);
  CHECK(m.B[0] == 0.0);
  CHECK(m.B[3] == m.a_coeffs[0]);
}

TEST_CASE("det(sI - A) equals (s + lambda)^{2N}") {
  for (int n : {1, 2, 3}) {
    const double lambda = 3.0;
    const SvfMatrices m = build_matrices({n, lambda});
    for (double s : {0.0, 1.0, -1.5, 7.0}) {
      const Eigen::MatrixXd si =
          s * Eigen::MatrixXd::Identity(2 * n, 2 * n) - m.A;
      CHECK(si.determinant() ==
            doctest::Approx(std::pow(s + lambda, 2 * n)).epsilon(1e-9));
    }
  }
}

TEST_CASE("derivative is A xi + B u") {
  const SvfMatrices m1 = build_matrices({1, 1.0});
  CHECK(svf_derivative(m1, Eigen::VectorXd::Zero(2), 0.0).isZero());

  Eigen::VectorXd xi(2);
  xi << 1.0, 0.0;
  const Eigen::VectorXd d = svf_derivative(m1, xi, 0.0);
  CHECK(d[0] == doctest::Approx(0.0));
  CHECK(d[1] == doctest::Approx(-1.0));

  const Eigen::VectorXd df = svf_derivative(m1, Eigen::VectorXd::Zero(2), 1.0);
  CHECK(df[0] == doctest::Approx(0.0));
  CHECK(df[1] == doctest::Approx(1.0));

  CHECK_THROWS_AS(svf_derivative(m1, Eigen::VectorXd::Zero(3), 0.0),
                  std::invalid_argument);
}

TEST_CASE("output map y and phi") {
  const SvfMatrices m = build_matrices({2, 5.0});
  const RegressorSample zero = svf_output(m, Eigen::VectorXd::Zero(4), 0.0, 0.0);
  CHECK(zero.y == 0.0);
  CHECK(zero.phi.isZero());

  Eigen::VectorXd xi(4);
  xi << 1.0, 2.0, 3.0, 4.0;
  const RegressorSample s = svf_output(m, xi, 0.0, 1.0);
  CHECK(s.t == 1.0);
  CHECK(s.y == doctest::Approx(2155.0));
  REQUIRE(s.phi.size() == 2);
  CHECK(s.phi[0] == 3.0);
  CHECK(s.phi[1] == 1.0);
}

namespace {

// Runs the SVF on a signal and returns the worst regression residual
// |y - phi^T theta| over [t_check, t_end].
double worst_residual(const MultisineSignal& u, int n, double lambda,
                      double t_check, double t_end, double dt) {
  const SvfMatrices m = build_matrices({n, lambda});
  const std::vector<double> w = u.frequencies();
  const Eigen::VectorXd theta =
      theta_from_frequencies(Eigen::Map<const Eigen::VectorXd>(w.data(), n));
  Eigen::VectorXd xi = Eigen::VectorXd::Zero(2 * n);
  const auto deriv = [&](double t, const Eigen::VectorXd& x) {
    return svf_derivative(m, x, u.evaluate(t));
  };
  double worst = 0.0;
  const long long steps = std::llround(t_end / dt);
  for (long long k = 0; k < steps; ++k) {
    xi = rk4_step(deriv, k * dt, xi, dt);
    const double t = (k + 1) * dt;
    if (t < t_check) continue;
    const RegressorSample s = svf_output(m, xi, u.evaluate(t), t);
    worst = std::max(worst, std::abs(s.y - s.phi.dot(theta)));
  }
  return worst;
}

}  // namespace

TEST_CASE("regression identity holds after the filter transient") {
  const double pi = 3.14159265358979323846;
  // N = 2 paper signal.
  {
    MultisineSignal u({{1.2, 2.0, pi / 3.0}, {2.0, 3.0, pi / 4.0}});
    CHECK(worst_residual(u, 2, 5.0, 8.0, 12.0, 1e-3) < 1e-6);
  }
  // N = 1 and N = 3 with random-ish parameters.
  {
    MultisineSignal u({{1.5, 4.0, 0.3}});
    CHECK(worst_residual(u, 1, 4.0, 10.0, 14.0, 1e-3) < 1e-6);
  }
  {
    MultisineSignal u({{1.0, 1.5, 0.1}, {0.7, 2.5, 1.0}, {1.3, 4.0, 2.0}});
    CHECK(worst_residual(u, 3, 4.0, 12.0, 16.0, 1e-3) < 1e-5);
  }
}

TEST_CASE("residual decays exponentially") {
  const double pi = 3.14159265358979323846;
  MultisineSignal u({{1.2, 2.0, pi / 3.0}, {2.0, 3.0, pi / 4.0}});
  // Envelope check |y - phi^T theta| <= c exp(-lambda t / 2): the
  // residual at 2 s bounds c; by 6 s it must have shrunk accordingly.
  const double r2 = worst_residual(u, 2, 5.0, 1.9, 2.0, 1e-3);
  const double r6 = worst_residual(u, 2, 5.0, 5.9, 6.0, 1e-3);
  CHECK(r6 < r2 * std::exp(-5.0 * (6.0 - 2.0) / 2.0) + 1e-12);
}

TEST_CASE("phi stays bounded for bounded input") {
  MultisineSignal u({{1.0, 2.0, 0.0}, {1.0, 3.0, 0.5}});
  const SvfMatrices m = build_matrices({2, 5.0});
  Eigen::VectorXd xi = Eigen::VectorXd::Zero(4);
  const auto deriv = [&](double t, const Eigen::VectorXd& x) {
    return svf_derivative(m, x, u.evaluate(t));
  };
  double peak = 0.0;
  for (int k = 0; k < 60000; ++k) {
    xi = rk4_step(deriv, k * 1e-3, xi, 1e-3);
    peak = std::max(peak, xi.cwiseAbs().maxCoeff());
  }
  CHECK(std::isfinite(peak));
  CHECK(peak < 1e3);
}
