#pragma once

// Physical constants (CODATA 2018) and the unit conversions used at the
// library boundary. Internally lengths are in nm, wave numbers in nm^-1,
// masses in u and energies in micro-eV.

namespace molgrating::units {

inline constexpr double hbar_J_s = 1.054571817e-34;
inline constexpr double atomic_mass_kg = 1.66053906660e-27;
inline constexpr double boltzmann_J_per_K = 1.380649e-23;
inline constexpr double elementary_charge_C = 1.602176634e-19;

inline constexpr double helium4_mass_u = 4.002602;

inline constexpr double micro_ev_to_joule = 1e-6 * elementary_charge_C;

constexpr double millikelvin_to_micro_ev(double millikelvin) {
  return millikelvin * 1e-3 * boltzmann_J_per_K / micro_ev_to_joule;
}

/// de Broglie wave number K = M v / hbar in nm^-1.
double wavenumber_from_speed(double mass_u, double speed_m_per_s);

/// Kinetic energy (hbar K)^2 / 2M in micro-eV for K in nm^-1.
double kinetic_energy_micro_ev(double mass_u, double wavenumber_per_nm);

}  // namespace molgrating::units
