#pragma once

#include <complex>

#include "molgrating/kernels/grating.hpp"
#include "molgrating/numerics/quadrature.hpp"
#include "molgrating/species.hpp"

namespace molgrating {

/// Literal keeps the single-bar prefactor 2K / ((2 pi)^2 M) (hbar = 1,
/// K in nm^-1, M in u); Reduced replaces it by 1.
enum class AmplitudeMode { Literal, Reduced };

/// Complex scattering amplitude tagged with its prefactor convention.
/// Combining amplitudes of different modes throws std::logic_error.
struct ComplexAmplitude {
  std::complex<double> value;
  AmplitudeMode mode = AmplitudeMode::Reduced;

  double norm_squared() const noexcept { return std::norm(value); }

  ComplexAmplitude& operator+=(const ComplexAmplitude& other);
  friend ComplexAmplitude operator+(ComplexAmplitude lhs, const ComplexAmplitude& rhs) {
    return lhs += rhs;
  }
  friend ComplexAmplitude operator*(ComplexAmplitude lhs, double factor) {
    lhs.value *= factor;
    return lhs;
  }
};

/// Ratio of two amplitudes; the modes must agree.
std::complex<double> ratio(const ComplexAmplitude& numerator,
                           const ComplexAmplitude& denominator);

double bar_prefactor(AmplitudeMode mode, const BeamState& beam, double mass_u);

/// Point particle off a single reflecting bar:
/// t = -i prefactor sin(k2 (d - s) / 2) / k2, with limit -i prefactor (d - s)/2.
ComplexAmplitude point_bar_amplitude(double k2, const GratingGeometry& geometry,
                                     const BeamState& beam, double mass_u,
                                     AmplitudeMode mode);

/// F(q) = int 4 pi r^2 phi_a phi_b sin(q r)/(q r) dr; even in q.
double form_factor(const RadialWaveFunction& wf_a, const RadialWaveFunction& wf_b,
                   double q, const numerics::QuadratureSpec& spec = {});
double form_factor(const RadialWaveFunction& wf, double q,
                   const numerics::QuadratureSpec& spec = {});

/// The four pieces of the single-bar molecular amplitude, already multiplied
/// by the mode prefactor. form_factor_1 carries F(m1 k2 / M), sine_1 the
/// sin[k2((d-s)/2 - m2 x2 / M)] term; the *_2 members swap m1 and m2.
struct MolecularBarTerms {
  ComplexAmplitude form_factor_1;
  ComplexAmplitude form_factor_2;
  ComplexAmplitude sine_1;
  ComplexAmplitude sine_2;

  ComplexAmplitude total() const;
};

MolecularBarTerms molecular_bar_terms(const DimerSpecies& species,
                                      const GratingGeometry& geometry,
                                      const BeamState& beam, double k2,
                                      AmplitudeMode mode,
                                      const numerics::QuadratureSpec& spec = {});

/// Single-bar amplitude of the bound molecule. The x1/x3 planar integrals
/// and the x2 integral over the bar are reduced to radial integrals using
/// the rotational symmetry of the s-state.
ComplexAmplitude molecular_bar_amplitude(const DimerSpecies& species,
                                         const GratingGeometry& geometry,
                                         const BeamState& beam, double k2,
                                         AmplitudeMode mode,
                                         const numerics::QuadratureSpec& spec = {});

/// Coherent grating amplitude: single-bar amplitude times H(k2) (the
/// delta(P3) factor is dropped; k3 = 0).
ComplexAmplitude coherent_amplitude(const DimerSpecies& species,
                                    const GratingGeometry& geometry,
                                    const BeamState& beam, double k2,
                                    AmplitudeMode mode,
                                    const numerics::QuadratureSpec& spec = {});

/// Point-particle comparison path with the molecule's total mass.
ComplexAmplitude point_coherent_amplitude(const DimerSpecies& species,
                                          const GratingGeometry& geometry,
                                          const BeamState& beam, double k2,
                                          AmplitudeMode mode);

}  // namespace molgrating
