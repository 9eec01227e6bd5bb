#include "molgrating/species.hpp"

#include <cmath>
#include <stdexcept>

#include "molgrating/units.hpp"

namespace molgrating {

DimerSpecies::DimerSpecies(double mass_1_u, double mass_2_u,
                           double binding_energy_micro_ev,
                           RadialWaveFunction wavefunction)
    : mass_1_(mass_1_u),
      mass_2_(mass_2_u),
      binding_energy_(binding_energy_micro_ev),
      wavefunction_(std::move(wavefunction)) {
  if (!(mass_1_ > 0.0) || !(mass_2_ > 0.0) || !std::isfinite(mass_1_) ||
      !std::isfinite(mass_2_))
    throw std::invalid_argument("constituent masses must be > 0");
  if (!(binding_energy_ < 0.0))
    throw std::invalid_argument("binding energy must be negative");
}

DimerSpecies DimerSpecies::helium_dimer() {
  const double m = units::helium4_mass_u;
  const double eb = units::millikelvin_to_micro_ev(-1.3);
  const double kappa = kappa_from_binding_energy(eb, 0.5 * m);
  return DimerSpecies(m, m, eb, RadialWaveFunction::zero_range(kappa));
}

DimerSpecies DimerSpecies::with_wavefunction(RadialWaveFunction wf) const {
  return DimerSpecies(mass_1_, mass_2_, binding_energy_, std::move(wf));
}

}  // namespace molgrating
