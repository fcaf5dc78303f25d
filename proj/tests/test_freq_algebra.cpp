#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "freqest/freq_algebra.hpp"
#include "freqest/multisine.hpp"

using namespace freqest;

TEST_CASE("theta from the experiment frequency sets") {
  {
    const Eigen::VectorXd theta = theta_from_frequencies(Eigen::Vector2d(2.0, 3.0));
    CHECK(theta[0] == 13.0);  // exact in doubles
    CHECK(theta[1] == 36.0);
  }
  {
    const Eigen::VectorXd theta =
        theta_from_frequencies(Eigen::Vector3d(2.0, 3.0, 5.0));
    CHECK(theta[0] == 38.0);
    CHECK(theta[1] == 361.0);
    CHECK(theta[2] == 900.0);
  }
  {
    Eigen::VectorXd w(1);
    w << 7.0;
    CHECK(theta_from_frequencies(w)[0] == 49.0);
  }
}

TEST_CASE("invalid frequency sets are rejected") {
  CHECK_THROWS_AS(theta_from_frequencies(Eigen::Vector2d(2.0, 2.0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(theta_from_frequencies(Eigen::Vector2d(-1.0, 2.0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(theta_from_frequencies(Eigen::VectorXd()), std::invalid_argument);
}

TEST_CASE("frequencies from theta") {
  {
    const FrequencyDecoding d = frequencies_from_theta(Eigen::Vector2d(13.0, 36.0));
    REQUIRE(d.ok);
    CHECK(d.omegas[0] == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(d.omegas[1] == doctest::Approx(3.0).epsilon(1e-10));
  }
  {
    Eigen::VectorXd theta(1);
    theta << 6.25;
    const FrequencyDecoding d = frequencies_from_theta(theta);
    REQUIRE(d.ok);
    CHECK(d.omegas[0] == doctest::Approx(2.5).epsilon(1e-12));
  }
}

TEST_CASE("inadmissible theta is reported, not clamped") {
  // z^2 + 0 z + 1 has roots +-i: complex, no frequency decoding.
  const FrequencyDecoding complex_roots =
      frequencies_from_theta(Eigen::Vector2d(0.0, 1.0));
  CHECK_FALSE(complex_roots.ok);
  CHECK_FALSE(complex_roots.inadmissible_roots.empty());

  // z + (-4): positive real root.
  Eigen::VectorXd theta(1);
  theta << -4.0;
  const FrequencyDecoding positive = frequencies_from_theta(theta);
  CHECK_FALSE(positive.ok);
  REQUIRE(positive.inadmissible_roots.size() == 1);
  CHECK(positive.inadmissible_roots[0].real() == doctest::Approx(4.0));
}

TEST_CASE("round trip on random frequency sets") {
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> dist(0.1, 100.0);
  std::uniform_int_distribution<int> ndist(1, 4);
  int accepted = 0;
  while (accepted < 1000) {
    const int n = ndist(rng);
    Eigen::VectorXd w(n);
    for (int i = 0; i < n; ++i) w[i] = dist(rng);
    std::sort(w.data(), w.data() + n);
    bool separated = true;
    for (int i = 0; i + 1 < n; ++i)
      if (w[i + 1] - w[i] < 0.01 * w[i + 1]) separated = false;
    if (!separated) continue;
    ++accepted;

    const FrequencyDecoding d = frequencies_from_theta(theta_from_frequencies(w));
    REQUIRE(d.ok);
    for (int i = 0; i < n; ++i)
      CHECK(d.omegas[i] == doctest::Approx(w[i]).epsilon(1e-6));
  }
}

TEST_CASE("theta is exactly permutation invariant") {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> dist(0.2, 50.0);
  for (int trial = 0; trial < 200; ++trial) {
    Eigen::VectorXd w(4);
    for (int i = 0; i < 4; ++i) w[i] = dist(rng);
    bool ok = true;
    for (int i = 0; i < 4 && ok; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (!frequencies_distinct(w[i], w[j])) ok = false;
    if (!ok) continue;
    const Eigen::VectorXd base = theta_from_frequencies(w);
    Eigen::VectorXd shuffled = w;
    std::shuffle(shuffled.data(), shuffled.data() + 4, rng);
    const Eigen::VectorXd permuted = theta_from_frequencies(shuffled);
    for (int i = 0; i < 4; ++i) CHECK(base[i] == permuted[i]);  // bitwise
  }
}
