#include <doctest.h>

#include <boost/math/special_functions/expint.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "molgrating/numerics/quadrature.hpp"
#include "molgrating/numerics/special_functions.hpp"

using namespace molgrating::numerics;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("integrate_radial on exponential moments") {
  const QuadratureSpec spec;
  auto r1 = integrate_radial([](double r) { return std::exp(-r); }, 1.0, spec);
  CHECK(r1.value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r1.error <= std::max(spec.relative_tolerance * std::abs(r1.value),
                             spec.absolute_tolerance));

  auto r2 = integrate_radial([](double r) { return r * std::exp(-2.0 * r); }, 2.0, spec);
  CHECK(r2.value == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("integrate_radial handles a log singularity at the origin") {
  // int_0^inf e^-r ln(1/r) dr = Euler's gamma
  const auto r = integrate_radial([](double x) { return -std::exp(-x) * std::log(x); }, 1.0,
                                  QuadratureSpec{});
  CHECK(rel(r.value, std::numbers::egamma) < 1e-8);
}

TEST_CASE("integrate_radial handles an r^-1/2 singularity") {
  // int_0^inf e^-r / sqrt(r) dr = sqrt(pi)
  const auto r = integrate_radial([](double x) { return std::exp(-x) / std::sqrt(x); }, 1.0,
                                  QuadratureSpec{});
  CHECK(rel(r.value, std::sqrt(std::numbers::pi)) < 1e-8);
}

TEST_CASE("integrate_oscillatory closed forms") {
  const QuadratureSpec spec;
  const auto one = [](double) { return 1.0; };

  auto a = integrate_oscillatory(one, 1.0, 0.0, std::numbers::pi, OscillatoryKernel::Sine, spec);
  CHECK(a.value == doctest::Approx(2.0).epsilon(1e-12));

  auto b = integrate_oscillatory(one, 1e4, 0.0, 1.0, OscillatoryKernel::Sine, spec);
  CHECK(std::abs(b.value - (1.0 - std::cos(1e4)) / 1e4) < 1e-13);

  // int_0^20 e^-x sin(5x) dx from the antiderivative -e^-x (sin 5x + 5 cos 5x) / 26
  const double exact = (5.0 - std::exp(-20.0) * (std::sin(100.0) + 5.0 * std::cos(100.0))) / 26.0;
  auto c = integrate_oscillatory([](double x) { return std::exp(-x); }, 5.0, 0.0, 20.0,
                                 OscillatoryKernel::Sine, spec);
  CHECK(rel(c.value, exact) < 1e-11);

  // cosine kernel: int_0^20 e^-x cos(5x) dx = (1 + e^-20 (5 sin 100 - cos 100)) / 26
  const double exact_cos = (1.0 + std::exp(-20.0) * (5.0 * std::sin(100.0) - std::cos(100.0))) / 26.0;
  auto d = integrate_oscillatory([](double x) { return std::exp(-x); }, 5.0, 0.0, 20.0,
                                 OscillatoryKernel::Cosine, spec);
  CHECK(rel(d.value, exact_cos) < 1e-11);
}

TEST_CASE("integrate_oscillatory with zero wave number is plain quadrature") {
  const QuadratureSpec spec;
  const auto f = [](double x) { return 1.0 / (1.0 + x * x); };
  const auto osc = integrate_oscillatory(f, 0.0, -2.0, 3.0, OscillatoryKernel::Cosine, spec);
  const auto plain = integrate(f, -2.0, 3.0, spec);
  CHECK(rel(osc.value, plain.value) < 1e-12);
  CHECK(rel(plain.value, std::atan(3.0) + std::atan(2.0)) < 1e-12);
  CHECK(integrate_oscillatory(f, 0.0, -2.0, 3.0, OscillatoryKernel::Sine, spec).value == 0.0);
}

TEST_CASE("tightening tolerances moves the value by less than the error estimate") {
  QuadratureSpec loose;
  loose.relative_tolerance = 1e-6;
  loose.absolute_tolerance = 1e-9;
  const auto tight = loose.tightened(10.0);

  const ScalarFunction cases[] = {
      [](double r) { return std::exp(-r) * std::cos(3.0 * r); },
      [](double r) { return -std::exp(-r) * std::log(r); },
      [](double r) { return r * r * std::exp(-0.5 * r) / (1.0 + r); },
  };
  const double rates[] = {1.0, 1.0, 0.5};
  for (int i = 0; i < 3; ++i) {
    const auto a = integrate_radial(cases[i], rates[i], loose);
    const auto b = integrate_radial(cases[i], rates[i], tight);
    CHECK(std::abs(a.value - b.value) < a.error);
    CHECK(a.error <= std::max(loose.relative_tolerance * std::abs(a.value),
                              loose.absolute_tolerance));
  }
}

TEST_CASE("non-convergence raises QuadratureError with the best estimate") {
  QuadratureSpec spec;
  spec.max_subdivisions = 8;
  const auto f = [](double x) { return std::sin(1.0 / x) / x; };
  try {
    (void)integrate(f, 1e-3, 1.0, spec);
    FAIL("expected QuadratureError");
  } catch (const QuadratureError& e) {
    CHECK(std::isfinite(e.best_value()));
    CHECK(e.achieved_error() > 0.0);
  }
}

TEST_CASE("QuadratureSpec validation") {
  QuadratureSpec spec;
  spec.relative_tolerance = 0.0;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec = {};
  spec.absolute_tolerance = -1.0;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec = {};
  spec.max_subdivisions = 0;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  CHECK_THROWS_AS(integrate_radial([](double) { return 1.0; }, 0.0, QuadratureSpec{}),
                  std::invalid_argument);
}

TEST_CASE("tail cutoff leaves less than the tolerance behind") {
  const TailCutoff cut;
  const double r = cut.upper_limit(2.0, 1e-14);
  CHECK(std::exp(-2.0 * r) < 1e-15 * 1.0000001);
}

TEST_CASE("E1 against high-precision values") {
  // mpmath.e1 at 40 digits
  CHECK(rel(exponential_integral_e1(1.0), 0.21938393439552027368) < 1e-12);
  CHECK(rel(exponential_integral_e1(0.5), 0.55977359477616081175) < 1e-12);
  CHECK(rel(exponential_integral_e1(0.1), 1.8229239584193906159) < 1e-12);
  CHECK(rel(exponential_integral_e1(1e-3), 6.3315393641361493112) < 1e-12);
  CHECK(rel(exponential_integral_e1(10.0), 4.1569689296853242774e-06) < 1e-12);
  CHECK(rel(exponential_integral_e1(50.0), 3.7832640295504590187e-24) < 1e-12);
}

TEST_CASE("E1 agrees with Boost.Math across branches") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> log_x(std::log(1e-8), std::log(300.0));
  for (int i = 0; i < 2000; ++i) {
    const double x = std::exp(log_x(rng));
    CHECK(rel(exponential_integral_e1(x), boost::math::expint(1, x)) < 1e-12);
  }
}

TEST_CASE("E1 derivative and asymptotics") {
  for (double x : {0.1, 1.0, 10.0}) {
    const double h = 1e-5 * x;
    const double derivative =
        (exponential_integral_e1(x + h) - exponential_integral_e1(x - h)) / (2.0 * h);
    CHECK(rel(derivative, -std::exp(-x) / x) < 1e-6);
  }
  for (double x : {50.0, 200.0, 600.0}) {
    const double scaled = x * std::exp(x) * exponential_integral_e1(x);
    CHECK(std::abs(scaled - 1.0) < 2.0 / x);
    CHECK(scaled < 1.0);
  }
  CHECK_THROWS_AS(exponential_integral_e1(0.0), std::domain_error);
  CHECK_THROWS_AS(exponential_integral_e1(-1.0), std::domain_error);
}

TEST_CASE("sinc") {
  CHECK(sinc(0.0) == 1.0);
  CHECK(sinc(1e-5) == doctest::Approx(1.0 - 1e-10 / 6.0).epsilon(1e-16));
  CHECK(sinc(std::numbers::pi) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(sinc(-2.0) == sinc(2.0));
}
