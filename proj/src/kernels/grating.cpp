#include "molgrating/kernels/grating.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "molgrating/numerics/special_functions.hpp"
#include "molgrating/units.hpp"

namespace molgrating {

GratingGeometry::GratingGeometry(double period_nm, double slit_nm, int bar_count)
    : period_(period_nm), slit_(slit_nm), bar_count_(bar_count) {
  if (!std::isfinite(period_nm) || !std::isfinite(slit_nm))
    throw std::invalid_argument("grating lengths must be finite");
  if (!(slit_nm > 0.0)) throw std::invalid_argument("slit width s must be > 0");
  if (!(slit_nm < period_nm))
    throw std::invalid_argument("slit width s must be smaller than period d (bar width d - s > 0)");
  if (bar_count < 1) throw std::invalid_argument("bar count N must be >= 1");
}

double GratingGeometry::order_position(int order) const noexcept {
  return 2.0 * std::numbers::pi * order / period_;
}

BeamState::BeamState(double wavenumber_per_nm) : wavenumber_(wavenumber_per_nm) {
  if (!(wavenumber_per_nm > 0.0) || !std::isfinite(wavenumber_per_nm))
    throw std::invalid_argument("incident wave number K must be > 0");
}

BeamState BeamState::from_speed(double total_mass_u, double speed_m_per_s) {
  if (!(speed_m_per_s > 0.0)) throw std::invalid_argument("beam speed must be > 0");
  return BeamState(units::wavenumber_from_speed(total_mass_u, speed_m_per_s));
}

double grating_function(double k2, const GratingGeometry& geometry) {
  const double n_bars = geometry.bar_count();
  const double x = 0.5 * k2 * geometry.period();
  // x = n pi + delta with |delta| <= pi/2; sin(N x)/sin(x) reduces to
  // (-1)^(n(N-1)) sin(N delta)/sin(delta).
  const double n = std::nearbyint(x / std::numbers::pi);
  const double delta = x - n * std::numbers::pi;
  const auto parity = static_cast<long long>(std::fmod(std::abs(n), 2.0)) *
                      ((geometry.bar_count() - 1) % 2);
  const double sign = parity == 0 ? 1.0 : -1.0;
  double ratio = 0.0;
  if (std::abs(delta) < 0.25) {
    ratio = n_bars * numerics::sinc(n_bars * delta) / numerics::sinc(delta);
  } else {
    ratio = std::sin(n_bars * delta) / std::sin(delta);
  }
  return sign * std::clamp(ratio, -n_bars, n_bars);
}

}  // namespace molgrating
