#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "molgrating/pattern.hpp"

namespace molgrating::cli {

/// Invalid or inconsistent configuration. `field` is the dotted key path,
/// `line` the 1-based source line when known (0 otherwise).
class ConfigError : public std::runtime_error {
public:
  ConfigError(std::string field, int line, const std::string& message);
  const std::string& field() const noexcept { return field_; }
  int line() const noexcept { return line_; }

private:
  std::string field_;
  int line_;
};

enum class AxisUnit { PerNm, Per100Nm };

struct RunConfig {
  // species
  double mass_1_u = 0.0;
  double mass_2_u = 0.0;
  double binding_energy_micro_ev = 0.0;
  std::string wavefunction_model = "zero_range";
  std::optional<double> kappa_per_nm;  // zero_range; derived from E_b when absent
  std::vector<std::pair<double, double>> exponential_terms;  // (weight, rate)
  std::filesystem::path table_path;

  // grating
  double period_nm = 0.0;
  double slit_nm = 0.0;
  int bar_count = 0;

  // beam: exactly one is set
  std::optional<double> speed_m_per_s;
  std::optional<double> wavenumber_per_nm;

  // sampling
  double k2_max_per_nm = 0.0;
  std::size_t num_samples = 2001;
  Normalization normalization = Normalization::UnitZerothOrder;
  int max_order = 9;
  bool symmetric = false;

  // output
  std::string format = "csv";
  std::filesystem::path output_path;
  AxisUnit axis_unit = AxisUnit::PerNm;

  DimerSpecies species() const;
  GratingGeometry geometry() const;
  BeamState beam() const;

  /// Resolved configuration; parse_config accepts it back unchanged.
  nlohmann::json to_json() const;
};

/// Parses the YAML (or JSON) text of a run configuration. A document whose
/// top level holds a `config` mapping (the JSON sidecar) is read from there.
/// Relative table paths resolve against `base_dir`.
RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path);

}  // namespace molgrating::cli
