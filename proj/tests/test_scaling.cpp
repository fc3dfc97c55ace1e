#include <doctest.h>

#include <cmath>
#include <random>

#include "wireqfi/scaling.hpp"

using namespace wireqfi;

TEST_CASE("fit_power_law: exact data is recovered to rounding") {
  const int n = 9;
  RealVector x(n), y(n);
  for (int i = 0; i < n; ++i) {
    x(i) = 40.0 + 20.0 * i;
    y(i) = 2.7 * std::pow(x(i), 2.13);
  }
  const auto fit = scaling::fit_power_law(x, y);
  CHECK(fit.exponent == doctest::Approx(2.13).epsilon(1e-12));
  CHECK(std::exp(fit.log_prefactor) == doctest::Approx(2.7).epsilon(1e-10));
  CHECK(fit.r2 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fit.stderr_exponent < 1e-10);
}

TEST_CASE("fit_power_law: tolerates multiplicative noise") {
  std::mt19937 rng(17);
  std::normal_distribution<Real> noise(0.0, 0.01);
  const int n = 12;
  RealVector x(n), y(n);
  for (int i = 0; i < n; ++i) {
    x(i) = 20.0 * (i + 2);
    y(i) = 0.8 * std::pow(x(i), 1.95) * std::exp(noise(rng));
  }
  const auto fit = scaling::fit_power_law(x, y);
  CHECK(fit.exponent == doctest::Approx(1.95).epsilon(0.02));
  CHECK(fit.r2 > 0.999);
  CHECK(fit.stderr_exponent > 0.0);
}

TEST_CASE("fit_power_law: input validation") {
  RealVector x(3), y(3);
  x << 1, 2, 3;
  y << 1, 4, 9;
  CHECK_THROWS_AS(scaling::fit_power_law(x, y), std::invalid_argument);
  RealVector x4(4), y4(4);
  x4 << 1, 2, 3, 4;
  y4 << 1, 4, -9, 16;
  CHECK_THROWS_AS(scaling::fit_power_law(x4, y4), std::invalid_argument);
}

TEST_CASE("fit_gap_law: exact offset power law is recovered") {
  const int n = 9;
  RealVector x(n), y(n);
  for (int i = 0; i < n; ++i) {
    x(i) = 40.0 + 20.0 * i;
    y(i) = 1.9 * std::pow(x(i), -1.97) + 0.0123;
  }
  const auto fit = scaling::fit_gap_law(x, y);
  CHECK(fit.converged);
  CHECK(fit.mu == doctest::Approx(1.97).epsilon(1e-6));
  CHECK(fit.a == doctest::Approx(1.9).epsilon(1e-5));
  CHECK(fit.b == doctest::Approx(0.0123).epsilon(1e-5));
  CHECK(fit.r2 == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("fit_gap_law: pure power law gives a vanishing offset") {
  const int n = 8;
  RealVector x(n), y(n);
  for (int i = 0; i < n; ++i) {
    x(i) = 30.0 * (i + 1);
    y(i) = 3.4 * std::pow(x(i), -2.05);
  }
  const auto fit = scaling::fit_gap_law(x, y);
  CHECK(fit.converged);
  CHECK(fit.mu == doctest::Approx(2.05).epsilon(1e-4));
  CHECK(std::abs(fit.b) < 1e-6);
}

TEST_CASE("fit_gap_law: noisy gap data stays near the true exponent") {
  std::mt19937 rng(23);
  std::normal_distribution<Real> noise(0.0, 0.005);
  const int n = 9;
  RealVector x(n), y(n);
  for (int i = 0; i < n; ++i) {
    x(i) = 40.0 + 20.0 * i;
    y(i) = (2.2 * std::pow(x(i), -1.9) + 0.004) * std::exp(noise(rng));
  }
  const auto fit = scaling::fit_gap_law(x, y);
  CHECK(fit.converged);
  CHECK(fit.mu == doctest::Approx(1.9).epsilon(0.15));
  CHECK(fit.stderr_mu > 0.0);
}

TEST_CASE("fit_gap_law: input validation") {
  RealVector x(3), y(3);
  x << 1, 2, 3;
  y << 3, 2, 1;
  CHECK_THROWS_AS(scaling::fit_gap_law(x, y), std::invalid_argument);
}
