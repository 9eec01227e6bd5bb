#include "molgrating/kernels/amplitude.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "molgrating/numerics/special_functions.hpp"

namespace molgrating {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::complex<double> kI{0.0, 1.0};

void require_same_mode(AmplitudeMode a, AmplitudeMode b) {
  if (a != b) throw std::logic_error("cannot combine literal and reduced amplitudes");
}

}  // namespace

ComplexAmplitude& ComplexAmplitude::operator+=(const ComplexAmplitude& other) {
  require_same_mode(mode, other.mode);
  value += other.value;
  return *this;
}

std::complex<double> ratio(const ComplexAmplitude& numerator,
                           const ComplexAmplitude& denominator) {
  require_same_mode(numerator.mode, denominator.mode);
  return numerator.value / denominator.value;
}

double bar_prefactor(AmplitudeMode mode, const BeamState& beam, double mass_u) {
  if (mode == AmplitudeMode::Reduced) return 1.0;
  if (!(mass_u > 0.0)) throw std::invalid_argument("mass must be > 0");
  return 2.0 * beam.wavenumber() / (4.0 * kPi * kPi * mass_u);
}

ComplexAmplitude point_bar_amplitude(double k2, const GratingGeometry& geometry,
                                     const BeamState& beam, double mass_u,
                                     AmplitudeMode mode) {
  const double half_bar = 0.5 * geometry.bar_width();
  // sin(k2 a)/k2 = a sinc(k2 a) covers the k2 -> 0 limit.
  const double shape = half_bar * numerics::sinc(k2 * half_bar);
  return {-kI * (bar_prefactor(mode, beam, mass_u) * shape), mode};
}

double form_factor(const RadialWaveFunction& wf_a, const RadialWaveFunction& wf_b,
                   double q, const numerics::QuadratureSpec& spec) {
  const double k = std::abs(q);
  const double rate = wf_a.decay_rate() + wf_b.decay_rate();
  const double upper = spec.tail_cutoff.upper_limit(rate, spec.absolute_tolerance);

  if (k * upper <= 2.0 * kPi) {
    return numerics::integrate_radial(
               [&, k](double r) {
                 return 4.0 * kPi * wf_a.reduced(r) * wf_b.reduced(r) *
                        numerics::sinc(k * r);
               },
               rate, spec)
        .value;
  }
  return numerics::integrate_oscillatory(
             [&, k](double r) {
               return 4.0 * kPi * wf_a.reduced(r) * wf_b.reduced(r) / (k * r);
             },
             k, 0.0, upper, numerics::OscillatoryKernel::Sine, spec)
      .value;
}

double form_factor(const RadialWaveFunction& wf, double q,
                   const numerics::QuadratureSpec& spec) {
  return form_factor(wf, wf, q, spec);
}

ComplexAmplitude MolecularBarTerms::total() const {
  return form_factor_1 + form_factor_2 + sine_1 + sine_2;
}

namespace {

// int_0^{d-s} rho(x2) sin[k2 (a - c x2)] / k2 dx2, with a = (d-s)/2 and
// rho the marginal density. Exchanging the x2 and r integrations gives
// 2 pi int_0^inf r |phi|^2 G(min(r, d-s)) dr, where
// G(y) = int_0^y sin[k2 (a - c x)] / k2 dx
//      = y (a - c y / 2) sinc(k2 (a - c y / 2)) sinc(k2 c y / 2).
double bar_sine_integral(const RadialWaveFunction& wf, double bar_width, double k2,
                         double mass_fraction, const numerics::QuadratureSpec& spec) {
  const double half_bar = 0.5 * bar_width;
  const double c = mass_fraction;
  auto integrand = [&](double r) {
    const double y = std::min(r, bar_width);
    const double centre = half_bar - 0.5 * c * y;
    const double u = wf.reduced(r);
    // r |phi|^2 * y = u^2 * (y / r)
    return 2.0 * kPi * u * u * (y / r) * centre * numerics::sinc(k2 * centre) *
           numerics::sinc(0.5 * k2 * c * y);
  };
  const double breaks[] = {bar_width};
  return numerics::integrate_radial(integrand, 2.0 * wf.decay_rate(), spec, breaks)
      .value;
}

}  // namespace

MolecularBarTerms molecular_bar_terms(const DimerSpecies& species,
                                      const GratingGeometry& geometry,
                                      const BeamState& beam, double k2,
                                      AmplitudeMode mode,
                                      const numerics::QuadratureSpec& spec) {
  const auto& wf = species.wavefunction();
  const double total = species.total_mass();
  const double c1 = species.mass_1() / total;
  const double c2 = species.mass_2() / total;
  const bool equal_masses = species.mass_1() == species.mass_2();

  const ComplexAmplitude pp = point_bar_amplitude(k2, geometry, beam, total, mode);
  const double prefactor = bar_prefactor(mode, beam, total);

  const double f1 = form_factor(wf, c1 * k2, spec);
  const double f2 = equal_masses ? f1 : form_factor(wf, c2 * k2, spec);

  const double bar = geometry.bar_width();
  const double s1 = bar_sine_integral(wf, bar, k2, c2, spec);
  const double s2 = equal_masses ? s1 : bar_sine_integral(wf, bar, k2, c1, spec);

  return {pp * f1, pp * f2, {kI * (prefactor * s1), mode}, {kI * (prefactor * s2), mode}};
}

ComplexAmplitude molecular_bar_amplitude(const DimerSpecies& species,
                                         const GratingGeometry& geometry,
                                         const BeamState& beam, double k2,
                                         AmplitudeMode mode,
                                         const numerics::QuadratureSpec& spec) {
  return molecular_bar_terms(species, geometry, beam, k2, mode, spec).total();
}

ComplexAmplitude coherent_amplitude(const DimerSpecies& species,
                                    const GratingGeometry& geometry,
                                    const BeamState& beam, double k2,
                                    AmplitudeMode mode,
                                    const numerics::QuadratureSpec& spec) {
  return molecular_bar_amplitude(species, geometry, beam, k2, mode, spec) *
         grating_function(k2, geometry);
}

ComplexAmplitude point_coherent_amplitude(const DimerSpecies& species,
                                          const GratingGeometry& geometry,
                                          const BeamState& beam, double k2,
                                          AmplitudeMode mode) {
  return point_bar_amplitude(k2, geometry, beam, species.total_mass(), mode) *
         grating_function(k2, geometry);
}

}  // namespace molgrating
