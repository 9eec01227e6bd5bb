#pragma once

#include "molgrating/wavefunction.hpp"

namespace molgrating {

/// Two-particle molecule: constituent masses (u), binding energy (micro-eV,
/// negative) and the bound-state wave function.
class DimerSpecies {
public:
  DimerSpecies(double mass_1_u, double mass_2_u, double binding_energy_micro_ev,
               RadialWaveFunction wavefunction);

  /// 4He2 with E_b/k_B = -1.3 mK and the zero-range wave function.
  static DimerSpecies helium_dimer();

  double mass_1() const noexcept { return mass_1_; }
  double mass_2() const noexcept { return mass_2_; }
  double total_mass() const noexcept { return mass_1_ + mass_2_; }
  double reduced_mass() const noexcept { return mass_1_ * mass_2_ / total_mass(); }
  double binding_energy() const noexcept { return binding_energy_; }
  const RadialWaveFunction& wavefunction() const noexcept { return wavefunction_; }

  DimerSpecies with_wavefunction(RadialWaveFunction wf) const;

private:
  double mass_1_;
  double mass_2_;
  double binding_energy_;
  RadialWaveFunction wavefunction_;
};

}  // namespace molgrating
