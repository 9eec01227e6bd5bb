#include "molgrating/units.hpp"

namespace molgrating::units {

double wavenumber_from_speed(double mass_u, double speed_m_per_s) {
  return mass_u * atomic_mass_kg * speed_m_per_s / hbar_J_s * 1e-9;
}

double kinetic_energy_micro_ev(double mass_u, double wavenumber_per_nm) {
  const double momentum = hbar_J_s * wavenumber_per_nm * 1e9;
  return momentum * momentum / (2.0 * mass_u * atomic_mass_kg) /
         micro_ev_to_joule;
}

}  // namespace molgrating::units
