#pragma once

namespace molgrating::numerics {

/// Exponential integral E1(x) = int_x^inf exp(-t)/t dt for x > 0.
/// Power series below x = 1, modified Lentz continued fraction above.
/// Throws std::domain_error for x <= 0.
double exponential_integral_e1(double x);

/// sin(x)/x with sinc(0) = 1, accurate near zero.
double sinc(double x);

}  // namespace molgrating::numerics
