#include "molgrating/cli/config.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "molgrating/units.hpp"

namespace molgrating::cli {

ConfigError::ConfigError(std::string field, int line, const std::string& message)
    : std::runtime_error((line > 0 ? "line " + std::to_string(line) + ": " : std::string()) +
                         field + ": " + message),
      field_(std::move(field)),
      line_(line) {}

namespace {

int line_of(const YAML::Node& node) {
  const auto mark = node.Mark();
  return mark.line >= 0 ? mark.line + 1 : 0;
}

// A mapping block with a fixed set of allowed keys.
class Block {
public:
  Block(const YAML::Node& node, std::string path, std::set<std::string> allowed)
      : node_(node), path_(std::move(path)) {
    // A missing block, or a key with no value, falls back to defaults.
    if (!node_ || node_.IsNull()) {
      present_ = false;
      return;
    }
    if (!node_.IsMap()) throw ConfigError(path_, line_of(node_), "expected a mapping");
    for (const auto& kv : node_) {
      const auto key = kv.first.as<std::string>();
      if (!allowed.contains(key))
        throw ConfigError(path_ + "." + key, line_of(kv.first), "unknown key");
    }
  }

  bool has(const std::string& key) const { return present_ && node_[key]; }
  YAML::Node child(const std::string& key) const {
    return present_ ? node_[key] : YAML::Node();
  }
  std::string field(const std::string& key) const { return path_ + "." + key; }
  int line(const std::string& key) const {
    return has(key) ? line_of(node_[key]) : (present_ ? line_of(node_) : 0);
  }

  template <class T>
  T get(const std::string& key) const {
    if (!has(key)) throw ConfigError(field(key), line_of(node_), "required key missing");
    try {
      return node_[key].as<T>();
    } catch (const YAML::Exception&) {
      throw ConfigError(field(key), line(key), "has the wrong type");
    }
  }

  template <class T>
  std::optional<T> find(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    return get<T>(key);
  }

private:
  YAML::Node node_;
  std::string path_;
  bool present_ = true;
};

void require_positive(const Block& b, const std::string& key, double value) {
  if (!(value > 0.0) || !std::isfinite(value))
    throw ConfigError(b.field(key), b.line(key), "must be a positive number");
}

}  // namespace

RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError("<document>", e.mark.line + 1, e.msg);
  }
  if (root.IsMap() && root["config"] && root["config"].IsMap()) root = root["config"];
  if (!root.IsMap()) throw ConfigError("<document>", 0, "expected a mapping of blocks");

  Block top(root, "config", {"species", "grating", "beam", "sampling", "output"});
  RunConfig cfg;

  // species
  Block species(top.child("species"), "species",
                {"mass_1_u", "mass_2_u", "binding_energy_mK", "binding_energy_ueV",
                 "wavefunction"});
  cfg.mass_1_u = species.find<double>("mass_1_u").value_or(units::helium4_mass_u);
  cfg.mass_2_u = species.find<double>("mass_2_u").value_or(units::helium4_mass_u);
  require_positive(species, "mass_1_u", cfg.mass_1_u);
  require_positive(species, "mass_2_u", cfg.mass_2_u);
  if (species.has("binding_energy_mK") && species.has("binding_energy_ueV"))
    throw ConfigError("species.binding_energy", species.line("binding_energy_ueV"),
                      "give binding_energy_mK or binding_energy_ueV, not both");
  if (species.has("binding_energy_ueV")) {
    cfg.binding_energy_micro_ev = species.get<double>("binding_energy_ueV");
  } else {
    cfg.binding_energy_micro_ev = units::millikelvin_to_micro_ev(
        species.find<double>("binding_energy_mK").value_or(-1.3));
  }
  if (!(cfg.binding_energy_micro_ev < 0.0))
    throw ConfigError("species.binding_energy", species.line("binding_energy_mK"),
                      "binding energy must be negative");

  Block wf(species.child("wavefunction"), "species.wavefunction",
           {"model", "kappa_per_nm", "terms", "table"});
  cfg.wavefunction_model = wf.find<std::string>("model").value_or("zero_range");
  if (cfg.wavefunction_model == "zero_range") {
    cfg.kappa_per_nm = wf.find<double>("kappa_per_nm");
    if (cfg.kappa_per_nm) require_positive(wf, "kappa_per_nm", *cfg.kappa_per_nm);
  } else if (cfg.wavefunction_model == "sum_of_exponentials") {
    const auto terms = wf.child("terms");
    if (!terms || !terms.IsSequence() || terms.size() == 0)
      throw ConfigError(wf.field("terms"), wf.line("terms"),
                        "expected a list of [weight, decay_rate_per_nm] pairs");
    for (const auto& t : terms) {
      if (!t.IsSequence() || t.size() != 2)
        throw ConfigError(wf.field("terms"), line_of(t),
                          "each term must be [weight, decay_rate_per_nm]");
      try {
        cfg.exponential_terms.emplace_back(t[0].as<double>(), t[1].as<double>());
      } catch (const YAML::Exception&) {
        throw ConfigError(wf.field("terms"), line_of(t), "term entries must be numbers");
      }
      if (!(cfg.exponential_terms.back().second > 0.0))
        throw ConfigError(wf.field("terms"), line_of(t), "decay rates must be > 0");
    }
  } else if (cfg.wavefunction_model == "tabulated") {
    std::filesystem::path table = wf.get<std::string>("table");
    if (table.is_relative() && !base_dir.empty()) table = base_dir / table;
    if (!std::filesystem::exists(table))
      throw ConfigError(wf.field("table"), wf.line("table"),
                        "table file does not exist: " + table.string());
    cfg.table_path = std::filesystem::absolute(table);
  } else {
    throw ConfigError(wf.field("model"), wf.line("model"),
                      "model must be zero_range, sum_of_exponentials or tabulated");
  }

  // grating
  if (!top.has("grating")) throw ConfigError("grating", 0, "required block missing");
  Block grating(top.child("grating"), "grating", {"d_nm", "s_nm", "N"});
  cfg.period_nm = grating.get<double>("d_nm");
  cfg.slit_nm = grating.get<double>("s_nm");
  cfg.bar_count = grating.get<int>("N");
  require_positive(grating, "d_nm", cfg.period_nm);
  require_positive(grating, "s_nm", cfg.slit_nm);
  if (!(cfg.slit_nm < cfg.period_nm))
    throw ConfigError(grating.field("s_nm"), grating.line("s_nm"),
                      "slit width s must be smaller than period d (s < d)");
  if (cfg.bar_count < 1)
    throw ConfigError(grating.field("N"), grating.line("N"), "bar count N must be >= 1");

  // beam
  if (!top.has("beam")) throw ConfigError("beam", 0, "required block missing");
  Block beam(top.child("beam"), "beam", {"speed_m_per_s", "wavenumber_per_nm"});
  cfg.speed_m_per_s = beam.find<double>("speed_m_per_s");
  cfg.wavenumber_per_nm = beam.find<double>("wavenumber_per_nm");
  if (cfg.speed_m_per_s.has_value() == cfg.wavenumber_per_nm.has_value())
    throw ConfigError("beam", line_of(top.child("beam")),
                      "give exactly one of speed_m_per_s or wavenumber_per_nm");
  if (cfg.speed_m_per_s) require_positive(beam, "speed_m_per_s", *cfg.speed_m_per_s);
  if (cfg.wavenumber_per_nm)
    require_positive(beam, "wavenumber_per_nm", *cfg.wavenumber_per_nm);

  // sampling
  Block sampling(top.child("sampling"), "sampling",
                 {"k2_max_per_nm", "num_samples", "normalization", "max_order", "symmetric"});
  cfg.max_order = sampling.find<int>("max_order").value_or(9);
  if (cfg.max_order < 0)
    throw ConfigError(sampling.field("max_order"), sampling.line("max_order"),
                      "must be >= 0");
  cfg.k2_max_per_nm = sampling.find<double>("k2_max_per_nm")
                          .value_or(2.0 * std::numbers::pi * (cfg.max_order + 0.5) /
                                    cfg.period_nm);
  require_positive(sampling, "k2_max_per_nm", cfg.k2_max_per_nm);
  const long long samples = sampling.find<long long>("num_samples").value_or(2001);
  if (samples < 2)
    throw ConfigError(sampling.field("num_samples"), sampling.line("num_samples"),
                      "must be >= 2");
  cfg.num_samples = static_cast<std::size_t>(samples);
  try {
    cfg.normalization = parse_normalization(
        sampling.find<std::string>("normalization").value_or("unit-zeroth-order"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(sampling.field("normalization"), sampling.line("normalization"),
                      e.what());
  }
  cfg.symmetric = sampling.find<bool>("symmetric").value_or(false);

  // output
  Block output(top.child("output"), "output", {"format", "path", "axis_unit"});
  cfg.format = output.find<std::string>("format").value_or("csv");
  if (cfg.format != "csv" && cfg.format != "json")
    throw ConfigError(output.field("format"), output.line("format"), "must be csv or json");
  if (auto p = output.find<std::string>("path")) {
    cfg.output_path = *p;
    if (cfg.output_path.is_relative() && !base_dir.empty())
      cfg.output_path = base_dir / cfg.output_path;
  }
  const auto axis = output.find<std::string>("axis_unit").value_or("per-nm");
  if (axis == "per-nm")
    cfg.axis_unit = AxisUnit::PerNm;
  else if (axis == "per-100nm")
    cfg.axis_unit = AxisUnit::Per100Nm;
  else
    throw ConfigError(output.field("axis_unit"), output.line("axis_unit"),
                      "must be per-nm or per-100nm");
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("<file>", 0, "cannot open config file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  auto base = path.parent_path();
  if (base.empty()) base = ".";
  return parse_config(buffer.str(), base);
}

DimerSpecies RunConfig::species() const {
  const double mu = mass_1_u * mass_2_u / (mass_1_u + mass_2_u);
  if (wavefunction_model == "sum_of_exponentials") {
    std::vector<RadialWaveFunction::ExponentialTerm> terms;
    for (const auto& [w, b] : exponential_terms) terms.push_back({w, b});
    return DimerSpecies(mass_1_u, mass_2_u, binding_energy_micro_ev,
                        RadialWaveFunction::sum_of_exponentials(std::move(terms)));
  }
  if (wavefunction_model == "tabulated")
    return DimerSpecies(mass_1_u, mass_2_u, binding_energy_micro_ev,
                        load_tabulated_wavefunction(table_path));
  const double kappa =
      kappa_per_nm.value_or(kappa_from_binding_energy(binding_energy_micro_ev, mu));
  return DimerSpecies(mass_1_u, mass_2_u, binding_energy_micro_ev,
                      RadialWaveFunction::zero_range(kappa));
}

GratingGeometry RunConfig::geometry() const {
  return GratingGeometry(period_nm, slit_nm, bar_count);
}

BeamState RunConfig::beam() const {
  if (wavenumber_per_nm) return BeamState(*wavenumber_per_nm);
  return BeamState::from_speed(mass_1_u + mass_2_u, speed_m_per_s.value_or(0.0));
}

nlohmann::json RunConfig::to_json() const {
  nlohmann::json wf{{"model", wavefunction_model}};
  if (kappa_per_nm) wf["kappa_per_nm"] = *kappa_per_nm;
  if (wavefunction_model == "sum_of_exponentials") {
    wf["terms"] = nlohmann::json::array();
    for (const auto& [w, b] : exponential_terms) wf["terms"].push_back({w, b});
  }
  if (wavefunction_model == "tabulated") wf["table"] = table_path.string();

  nlohmann::json beam_block = nlohmann::json::object();
  if (speed_m_per_s) beam_block["speed_m_per_s"] = *speed_m_per_s;
  if (wavenumber_per_nm) beam_block["wavenumber_per_nm"] = *wavenumber_per_nm;

  nlohmann::json out{{"format", format},
                     {"axis_unit", axis_unit == AxisUnit::PerNm ? "per-nm" : "per-100nm"}};
  if (!output_path.empty()) out["path"] = output_path.string();

  return {{"species",
           {{"mass_1_u", mass_1_u},
            {"mass_2_u", mass_2_u},
            {"binding_energy_ueV", binding_energy_micro_ev},
            {"wavefunction", wf}}},
          {"grating", {{"d_nm", period_nm}, {"s_nm", slit_nm}, {"N", bar_count}}},
          {"beam", beam_block},
          {"sampling",
           {{"k2_max_per_nm", k2_max_per_nm},
            {"num_samples", num_samples},
            {"normalization", to_string(normalization)},
            {"max_order", max_order},
            {"symmetric", symmetric}}},
          {"output", out}};
}

}  // namespace molgrating::cli
