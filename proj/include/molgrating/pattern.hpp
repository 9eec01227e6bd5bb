#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "molgrating/kernels/amplitude.hpp"

namespace molgrating {

enum class Normalization { RawReduced, UnitZerothOrder };

std::string to_string(Normalization n);
Normalization parse_normalization(const std::string& text);

struct PatternSample {
  double k2;             // nm^-1
  double intensity_mol;  // |t_mol H|^2
  double intensity_pp;   // |t_PP H|^2
  double h_squared;
};

struct DiffractionPattern {
  std::vector<PatternSample> samples;
  Normalization normalization;
  GratingGeometry geometry;
  DimerSpecies species;
  BeamState beam;
};

struct SamplingOptions {
  // Sample [-k2_max, k2_max] instead of [0, k2_max].
  bool symmetric = false;
  unsigned threads = 1;
  numerics::QuadratureSpec quadrature{};
};

class PatternEvaluationError : public std::runtime_error {
public:
  PatternEvaluationError(const std::string& what, double k2, std::size_t completed,
                         std::size_t total);
  double k2() const noexcept { return k2_; }
  std::size_t completed() const noexcept { return completed_; }
  std::size_t total() const noexcept { return total_; }

private:
  double k2_;
  std::size_t completed_;
  std::size_t total_;
};

/// Strictly increasing grid: num_samples uniform points merged with k2 = 0,
/// the grating orders 2 pi n / d and the point-bar zeros 2 pi m / (d - s).
std::vector<double> pattern_grid(const GratingGeometry& geometry, double k2_max,
                                 std::size_t num_samples, bool symmetric);

/// Coherent intensities of molecule and point particle (reduced mode) over
/// the grid. Samples are evaluated concurrently when options.threads > 1
/// and assembled in grid order.
DiffractionPattern sample_pattern(const DimerSpecies& species,
                                  const GratingGeometry& geometry,
                                  const BeamState& beam, double k2_max,
                                  std::size_t num_samples, Normalization normalization,
                                  const SamplingOptions& options = {});

/// Divides each curve by its value at k2 = 0. Idempotent.
DiffractionPattern normalize_to_zeroth_order(DiffractionPattern pattern);

struct PeakReport {
  int order;
  double location_k2;
  double intensity_mol;
  double intensity_pp;
  std::optional<double> ratio_mol_over_pp;  // empty when pp_zero
  bool pp_zero;
};

struct PeakListing {
  std::vector<PeakReport> reports;
  std::optional<std::string> notice;
};

/// Reports orders 0..max_order read at the exact positions 2 pi n / d.
PeakListing find_peaks(const DiffractionPattern& pattern, int max_order);

/// Grid search for the largest molecular intensity within half an order
/// spacing of order n. Returns the k2 of that sample.
double locate_peak_by_search(const DiffractionPattern& pattern, int order);

struct SuppressionSummary {
  std::vector<int> odd_orders;
  std::vector<double> odd_ratios;
  bool non_increasing;
  std::vector<int> even_orders;
  std::vector<double> even_intensity_mol;
};

/// Odd-order ratio sequence with a non-increasing verdict (each step may rise
/// by at most `tolerance`) plus even-order molecular intensities.
SuppressionSummary compare_suppression(const std::vector<PeakReport>& reports,
                                       double tolerance = 1e-3);

}  // namespace molgrating
