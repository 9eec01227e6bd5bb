#pragma once

#include <optional>
#include <string>
#include <vector>

#include "molgrating/kernels/grating.hpp"
#include "molgrating/species.hpp"

namespace molgrating {

// "Much greater than" is read as a factor of 100 throughout.
inline constexpr double kRegimeFactor = 100.0;
inline constexpr double kMaxMassRatio = 4.0;

enum class RegimeIssue {
  SlitNotWideInWavelengths,  // K s < 100
  BarNotWideInWavelengths,   // K (d - s) < 100
  EnergyNotHigh,             // (hbar K)^2 / 2M <= 100 |E_b|
  MassRatio,                 // max(m1, m2) / min(m1, m2) > 4
  IncoherentTerm,            // s < 2 <r>
  LargeAngle,                // 100 k2_max > K
};

struct RegimeWarning {
  RegimeIssue issue;
  std::string message;
};

/// Advisory checks of the conditions under which the single-bar coherent
/// amplitude is valid. Never throws on physics grounds.
std::vector<RegimeWarning> regime_check(const DimerSpecies& species,
                                        const GratingGeometry& geometry,
                                        const BeamState& beam,
                                        std::optional<double> k2_max = std::nullopt);

std::string to_string(RegimeIssue issue);

}  // namespace molgrating
