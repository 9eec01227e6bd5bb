#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>

namespace molgrating::numerics {

using ScalarFunction = std::function<double(double)>;

/// Maps an exponential decay rate to the finite upper limit used in place of
/// infinity: the smallest R with exp(-rate*R) < absolute_tolerance / safety.
struct TailCutoff {
  double safety = 10.0;

  double upper_limit(double decay_rate, double absolute_tolerance) const;
};

struct QuadratureSpec {
  double relative_tolerance = 1e-10;
  double absolute_tolerance = 1e-14;
  std::size_t max_subdivisions = std::size_t{1} << 16;
  TailCutoff tail_cutoff{};
  // Number of dyadic levels R*2^-j placed next to r = 0 by integrate_radial.
  int graded_levels = 48;

  void validate() const;
  QuadratureSpec tightened(double factor) const;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  std::size_t evaluations = 0;
  std::size_t panels = 0;
};

/// Thrown when the requested tolerance cannot be met within
/// max_subdivisions. Carries the best estimate reached.
class QuadratureError : public std::runtime_error {
public:
  QuadratureError(const std::string& what, double best_value,
                  double achieved_error);

  double best_value() const noexcept { return best_value_; }
  double achieved_error() const noexcept { return achieved_error_; }

private:
  double best_value_;
  double achieved_error_;
};

enum class OscillatoryKernel { Sine, Cosine };

/// Globally adaptive Gauss-Kronrod (10/21) quadrature over [a, b] starting
/// from the partition given by `breakpoints` (sorted, inside (a, b)).
QuadratureResult integrate(const ScalarFunction& f, double a, double b,
                           const QuadratureSpec& spec,
                           std::span<const double> breakpoints = {});

/// Integral of f over (0, inf). The domain is truncated where
/// exp(-decay_rate*r) drops below the tail tolerance, and the first panel is
/// graded dyadically so r^-1 and log-type endpoint singularities converge.
QuadratureResult integrate_radial(const ScalarFunction& f, double decay_rate,
                                  const QuadratureSpec& spec,
                                  std::span<const double> breakpoints = {});

/// Integral of f(x)*sin(kx) or f(x)*cos(kx) over [a, b]. Panels are split at
/// the kernel zeros (spacing pi/k) before adaptive refinement starts.
QuadratureResult integrate_oscillatory(const ScalarFunction& envelope,
                                       double wave_number, double a, double b,
                                       OscillatoryKernel kernel,
                                       const QuadratureSpec& spec);

}  // namespace molgrating::numerics
