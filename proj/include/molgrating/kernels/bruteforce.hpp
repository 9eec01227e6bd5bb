#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "molgrating/kernels/amplitude.hpp"

namespace molgrating {

class ResourceLimitError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct BruteForceOptions {
  int gauss_points = 10;
  // Dyadic panels L*2^-j (j = 1..levels) next to each coordinate origin, with
  // L = 1/decay_rate of the wave function.
  int graded_levels = 36;
  // Panel width beyond L, in units of L.
  double panel_width = 1.0;
  // x2 panels are also capped at this many radians of the fastest phase.
  double max_phase_per_panel = 3.0;
  // The grid stops where |phi|^2 has decayed by this factor.
  double tail_tolerance = 1e-15;
  // Upper bound on (x2 nodes) x (transverse node pairs).
  double max_evaluations = 2e9;
};

/// Single-bar molecular amplitude evaluated straight from its
/// three-dimensional integrals on a Cartesian tensor-product Gauss-Legendre
/// grid, with no use of the radial reduction, the marginal density or the
/// form factor. Only the reflection evenness of |phi|^2 in x1 and x3 is used
/// to fold the transverse plane onto one quadrant.
///
/// The transverse plane sums are computed once per x2 node at construction;
/// evaluate() is then cheap for any |k2| <= k2_max.
class BruteForceBarOracle {
public:
  BruteForceBarOracle(const DimerSpecies& species, const GratingGeometry& geometry,
                      double k2_max, const BruteForceOptions& options = {});

  ComplexAmplitude evaluate(double k2, const BeamState& beam, AmplitudeMode mode) const;

  /// Probability captured by the grid, sum w(x2) P(x2); 1 up to tail losses.
  double captured_norm() const;
  std::size_t x2_nodes() const noexcept { return x2_.size(); }
  std::size_t transverse_nodes() const noexcept { return transverse_nodes_; }

private:
  double mass_fraction_1_;
  double mass_fraction_2_;
  double total_mass_;
  double k2_max_;
  GratingGeometry geometry_;
  std::vector<double> x2_;
  std::vector<double> weight_;
  std::vector<double> plane_;  // int dx1 dx3 |phi|^2 at each x2 node
  std::size_t transverse_nodes_ = 0;
};

ComplexAmplitude molecular_bar_amplitude_bruteforce(
    const DimerSpecies& species, const GratingGeometry& geometry,
    const BeamState& beam, double k2, AmplitudeMode mode,
    const BruteForceOptions& options = {});

}  // namespace molgrating
