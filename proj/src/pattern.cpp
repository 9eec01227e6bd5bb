#include "molgrating/pattern.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <thread>

namespace molgrating {

std::string to_string(Normalization n) {
  return n == Normalization::RawReduced ? "raw-reduced" : "unit-zeroth-order";
}

Normalization parse_normalization(const std::string& text) {
  if (text == "raw-reduced") return Normalization::RawReduced;
  if (text == "unit-zeroth-order") return Normalization::UnitZerothOrder;
  throw std::invalid_argument("normalization must be raw-reduced or unit-zeroth-order, got '" +
                              text + "'");
}

PatternEvaluationError::PatternEvaluationError(const std::string& what, double k2,
                                               std::size_t completed, std::size_t total)
    : std::runtime_error(what), k2_(k2), completed_(completed), total_(total) {}

std::vector<double> pattern_grid(const GratingGeometry& geometry, double k2_max,
                                 std::size_t num_samples, bool symmetric) {
  if (!(k2_max > 0.0) || !std::isfinite(k2_max))
    throw std::invalid_argument("k2_max must be > 0");
  if (num_samples < 2) throw std::invalid_argument("num_samples must be >= 2");

  const double lo = symmetric ? -k2_max : 0.0;
  const double step = (k2_max - lo) / static_cast<double>(num_samples - 1);

  std::vector<double> analytic{0.0};
  auto add_series = [&](double length) {
    const auto count = static_cast<long long>(
        std::floor(k2_max * length / (2.0 * std::numbers::pi) * (1 + 1e-12)));
    for (long long n = 1; n <= count; ++n) {
      const double k = 2.0 * std::numbers::pi * static_cast<double>(n) / length;
      analytic.push_back(k);
      if (symmetric) analytic.push_back(-k);
    }
  };
  // Orders at 2 pi n / d, point-bar zeros at 2 pi m / (d - s).
  add_series(geometry.period());
  add_series(geometry.bar_width());

  std::vector<double> grid;
  grid.reserve(num_samples + analytic.size());
  // Symmetric grids are built from signed integer offsets so that the two
  // halves mirror each other bit for bit.
  const auto last = static_cast<long long>(num_samples - 1);
  for (long long i = 0; i <= last; ++i) {
    if (i == last) {
      grid.push_back(k2_max);
    } else if (symmetric) {
      grid.push_back(i == 0 ? -k2_max : 0.5 * step * static_cast<double>(2 * i - last));
    } else {
      grid.push_back(step * static_cast<double>(i));
    }
  }
  std::sort(analytic.begin(), analytic.end());

  // Uniform points closer than a tiny fraction of a step to an analytic
  // point are replaced by it.
  const double merge = 1e-9 * step;
  std::vector<double> merged;
  merged.reserve(grid.size() + analytic.size());
  std::merge(grid.begin(), grid.end(), analytic.begin(), analytic.end(),
             std::back_inserter(merged));
  std::vector<double> out;
  out.reserve(merged.size());
  auto is_analytic = [&analytic](double k) {
    return std::binary_search(analytic.begin(), analytic.end(), k);
  };
  for (double k : merged) {
    if (!out.empty() && std::abs(k - out.back()) <= merge) {
      if (is_analytic(k) && !is_analytic(out.back())) out.back() = k;
      continue;
    }
    out.push_back(k);
  }
  return out;
}

DiffractionPattern sample_pattern(const DimerSpecies& species,
                                  const GratingGeometry& geometry,
                                  const BeamState& beam, double k2_max,
                                  std::size_t num_samples, Normalization normalization,
                                  const SamplingOptions& options) {
  const auto grid = pattern_grid(geometry, k2_max, num_samples, options.symmetric);
  std::vector<PatternSample> samples(grid.size());
  std::vector<std::exception_ptr> failures(grid.size());

  auto evaluate = [&](std::size_t i) {
    try {
      const double k2 = grid[i];
      const double h = grating_function(k2, geometry);
      const auto mol = molecular_bar_amplitude(species, geometry, beam, k2,
                                               AmplitudeMode::Reduced, options.quadrature);
      const auto pp = point_bar_amplitude(k2, geometry, beam, species.total_mass(),
                                          AmplitudeMode::Reduced);
      samples[i] = {k2, (mol * h).norm_squared(), (pp * h).norm_squared(), h * h};
    } catch (...) {
      failures[i] = std::current_exception();
    }
  };

  const unsigned threads =
      std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(grid.size())));
  if (threads == 1) {
    for (std::size_t i = 0; i < grid.size(); ++i) evaluate(i);
  } else {
    std::vector<std::jthread> workers;
    workers.reserve(threads);
    for (unsigned w = 0; w < threads; ++w)
      workers.emplace_back([&, w] {
        for (std::size_t i = w; i < grid.size(); i += threads) evaluate(i);
      });
  }

  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!failures[i]) continue;
    const auto completed = static_cast<std::size_t>(
        std::count(failures.begin(), failures.end(), nullptr));
    std::string reason = "unknown error";
    try {
      std::rethrow_exception(failures[i]);
    } catch (const std::exception& e) {
      reason = e.what();
    } catch (...) {
    }
    throw PatternEvaluationError("pattern evaluation failed at k2 = " +
                                     std::to_string(grid[i]) + " /nm: " + reason,
                                 grid[i], completed, grid.size());
  }

  DiffractionPattern pattern{std::move(samples), Normalization::RawReduced, geometry,
                             species, beam};
  if (normalization == Normalization::UnitZerothOrder)
    return normalize_to_zeroth_order(std::move(pattern));
  return pattern;
}

DiffractionPattern normalize_to_zeroth_order(DiffractionPattern pattern) {
  const auto zero = std::find_if(pattern.samples.begin(), pattern.samples.end(),
                                 [](const PatternSample& s) { return s.k2 == 0.0; });
  if (zero == pattern.samples.end())
    throw std::invalid_argument("pattern has no k2 = 0 sample to normalize against");
  const double mol0 = zero->intensity_mol;
  const double pp0 = zero->intensity_pp;
  if (!(mol0 > 0.0) || !(pp0 > 0.0))
    throw std::invalid_argument("zeroth-order intensity vanishes; cannot normalize");
  for (auto& s : pattern.samples) {
    s.intensity_mol /= mol0;
    s.intensity_pp /= pp0;
  }
  pattern.normalization = Normalization::UnitZerothOrder;
  return pattern;
}

namespace {

// Point-particle intensities below this fraction of the pattern maximum are
// zeros of sin(k2 (d - s) / 2) up to rounding of the argument.
constexpr double kPointZeroRelative = 1e-24;
constexpr double kPointZeroAbsolute = 1e-300;

}  // namespace

PeakListing find_peaks(const DiffractionPattern& pattern, int max_order) {
  if (max_order < 0) throw std::invalid_argument("max_order must be >= 0");
  if (pattern.samples.empty()) throw std::invalid_argument("pattern is empty");
  const double k2_top = pattern.samples.back().k2;
  double pp_max = 0.0;
  for (const auto& s : pattern.samples) pp_max = std::max(pp_max, s.intensity_pp);

  PeakListing listing;
  for (int n = 0; n <= max_order; ++n) {
    const double location = pattern.geometry.order_position(n);
    if (location > k2_top * (1.0 + 1e-12)) {
      listing.notice = "orders above " + std::to_string(n - 1) +
                       " lie beyond k2_max; list truncated";
      break;
    }
    const auto it = std::min_element(
        pattern.samples.begin(), pattern.samples.end(),
        [location](const PatternSample& a, const PatternSample& b) {
          return std::abs(a.k2 - location) < std::abs(b.k2 - location);
        });
    if (std::abs(it->k2 - location) > 1e-12 * std::max(1.0, location))
      throw std::invalid_argument("pattern grid lacks the analytic position of order " +
                                  std::to_string(n));
    PeakReport report{n, it->k2, it->intensity_mol, it->intensity_pp, std::nullopt, false};
    report.pp_zero = it->intensity_pp < kPointZeroAbsolute ||
                     it->intensity_pp <= kPointZeroRelative * pp_max;
    if (!report.pp_zero) report.ratio_mol_over_pp = it->intensity_mol / it->intensity_pp;
    listing.reports.push_back(report);
  }
  return listing;
}

double locate_peak_by_search(const DiffractionPattern& pattern, int order) {
  const double centre = pattern.geometry.order_position(order);
  const double half_window = std::numbers::pi / pattern.geometry.period();
  const PatternSample* best = nullptr;
  for (const auto& s : pattern.samples) {
    if (std::abs(s.k2 - centre) > half_window) continue;
    if (!best || s.intensity_mol > best->intensity_mol) best = &s;
  }
  if (!best) throw std::invalid_argument("no samples near order " + std::to_string(order));
  return best->k2;
}

SuppressionSummary compare_suppression(const std::vector<PeakReport>& reports,
                                       double tolerance) {
  SuppressionSummary summary{};
  for (const auto& r : reports) {
    if (r.order % 2 == 1 && r.ratio_mol_over_pp) {
      summary.odd_orders.push_back(r.order);
      summary.odd_ratios.push_back(*r.ratio_mol_over_pp);
    } else if (r.order > 0 && r.order % 2 == 0) {
      summary.even_orders.push_back(r.order);
      summary.even_intensity_mol.push_back(r.intensity_mol);
    }
  }
  if (summary.odd_ratios.size() < 2)
    throw std::invalid_argument("insufficient orders: need at least two odd-order ratios");
  summary.non_increasing = true;
  for (std::size_t i = 1; i < summary.odd_ratios.size(); ++i)
    if (summary.odd_ratios[i] > summary.odd_ratios[i - 1] + tolerance)
      summary.non_increasing = false;
  return summary;
}

}  // namespace molgrating
