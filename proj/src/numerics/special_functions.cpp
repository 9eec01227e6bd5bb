#include "molgrating/numerics/special_functions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace molgrating::numerics {

double exponential_integral_e1(double x) {
  if (!(x > 0.0)) throw std::domain_error("E1(x) requires x > 0");
  constexpr double eps = std::numeric_limits<double>::epsilon();

  if (x <= 1.0) {
    // E1(x) = -gamma - ln x - sum_{k>=1} (-x)^k / (k k!)
    double term = 1.0;
    double sum = 0.0;
    for (int k = 1; k < 200; ++k) {
      term *= -x / k;
      const double contribution = term / k;
      sum += contribution;
      if (std::abs(contribution) < eps * std::abs(sum)) break;
    }
    return -std::numbers::egamma - std::log(x) - sum;
  }

  if (x > 740.0) return 0.0;

  // Continued fraction E1(x) = e^-x / (x + 1 - 1/(x + 3 - 4/(x + 5 - ...)))
  constexpr double tiny = 1e-300;
  double b = x + 1.0;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 10000; ++i) {
    const double an = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (an * d + b);
    c = b + an / c;
    const double delta = c * d;
    h *= delta;
    if (std::abs(delta - 1.0) < eps) break;
  }
  return h * std::exp(-x);
}

double sinc(double x) {
  const double ax = std::abs(x);
  if (ax < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0);
  }
  return std::sin(x) / x;
}

}  // namespace molgrating::numerics
