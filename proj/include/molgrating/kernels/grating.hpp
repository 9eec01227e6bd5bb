#pragma once

namespace molgrating {

/// Transmission grating of N reflecting bars: period d, slit width s,
/// bar width d - s. Lengths in nm.
class GratingGeometry {
public:
  GratingGeometry(double period_nm, double slit_nm, int bar_count);

  double period() const noexcept { return period_; }
  double slit() const noexcept { return slit_; }
  double bar_width() const noexcept { return period_ - slit_; }
  int bar_count() const noexcept { return bar_count_; }

  /// Lateral wave number of diffraction order n, 2 pi n / d.
  double order_position(int order) const noexcept;

private:
  double period_;
  double slit_;
  int bar_count_;
};

/// Incident centre-of-mass wave number K = P'/hbar (nm^-1), normal incidence.
class BeamState {
public:
  explicit BeamState(double wavenumber_per_nm);
  static BeamState from_speed(double total_mass_u, double speed_m_per_s);

  double wavenumber() const noexcept { return wavenumber_; }

private:
  double wavenumber_;
};

/// H(k2) = sin(N k2 d / 2) / sin(k2 d / 2). At the removable singularities
/// k2 d / 2 = n pi the limit (-1)^(n(N-1)) N is returned exactly.
double grating_function(double k2, const GratingGeometry& geometry);

}  // namespace molgrating
