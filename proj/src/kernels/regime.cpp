#include "molgrating/kernels/regime.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "molgrating/units.hpp"

namespace molgrating {

namespace {

std::string format(double v) {
  std::ostringstream out;
  out.precision(4);
  out << v;
  return out.str();
}

}  // namespace

std::vector<RegimeWarning> regime_check(const DimerSpecies& species,
                                        const GratingGeometry& geometry,
                                        const BeamState& beam,
                                        std::optional<double> k2_max) {
  std::vector<RegimeWarning> out;
  const double k = beam.wavenumber();

  if (k * geometry.slit() < kRegimeFactor)
    out.push_back({RegimeIssue::SlitNotWideInWavelengths,
                   "K*s = " + format(k * geometry.slit()) +
                       " < 100: slit not wide compared to the wavelength"});
  if (k * geometry.bar_width() < kRegimeFactor)
    out.push_back({RegimeIssue::BarNotWideInWavelengths,
                   "K*(d-s) = " + format(k * geometry.bar_width()) +
                       " < 100: bar not wide compared to the wavelength"});

  const double kinetic = units::kinetic_energy_micro_ev(species.total_mass(), k);
  const double binding = std::abs(species.binding_energy());
  if (kinetic <= kRegimeFactor * binding)
    out.push_back({RegimeIssue::EnergyNotHigh,
                   "kinetic energy " + format(kinetic) + " ueV <= 100 |E_b| = " +
                       format(kRegimeFactor * binding) + " ueV"});

  const double heavy = std::max(species.mass_1(), species.mass_2());
  const double light = std::min(species.mass_1(), species.mass_2());
  if (heavy / light > kMaxMassRatio)
    out.push_back({RegimeIssue::MassRatio,
                   "mass ratio " + format(heavy / light) +
                       " > 4: constituent masses not comparable"});

  const double size = mean_internuclear_distance(species.wavefunction());
  if (geometry.slit() < 2.0 * size)
    out.push_back({RegimeIssue::IncoherentTerm,
                   "slit width " + format(geometry.slit()) + " nm < 2<r> = " +
                       format(2.0 * size) +
                       " nm: multi-bar (incoherent) contributions not negligible"});

  if (k2_max && kRegimeFactor * std::abs(*k2_max) > k)
    out.push_back({RegimeIssue::LargeAngle,
                   "k2_max = " + format(std::abs(*k2_max)) + " /nm is not << K = " +
                       format(k) + " /nm: small-angle approximation strained"});
  return out;
}

std::string to_string(RegimeIssue issue) {
  switch (issue) {
    case RegimeIssue::SlitNotWideInWavelengths: return "slit_not_wide";
    case RegimeIssue::BarNotWideInWavelengths: return "bar_not_wide";
    case RegimeIssue::EnergyNotHigh: return "energy_not_high";
    case RegimeIssue::MassRatio: return "mass_ratio";
    case RegimeIssue::IncoherentTerm: return "incoherent_term";
    case RegimeIssue::LargeAngle: return "large_angle";
  }
  return "unknown";
}

}  // namespace molgrating
