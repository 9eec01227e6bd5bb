#include "molgrating/cli/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <system_error>

#include "molgrating/kernels/bruteforce.hpp"
#include "molgrating/kernels/regime.hpp"
#include "molgrating/version.hpp"

namespace molgrating::cli {

namespace {

using nlohmann::json;

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

std::string resolved_format(const RunConfig& cfg, const CommandOptions& opts) {
  const std::string f = opts.format.value_or(cfg.format);
  if (f != "csv" && f != "json") throw UsageError("--format must be csv or json");
  return f;
}

std::filesystem::path resolved_out(const RunConfig& cfg, const CommandOptions& opts) {
  return opts.out.value_or(cfg.output_path);
}

double per_100nm(double k2) { return 100.0 * k2; }

double in_axis_unit(const RunConfig& cfg, double k2) {
  return cfg.axis_unit == AxisUnit::PerNm ? k2 : per_100nm(k2);
}

// Writes through a temporary file so a failed run never leaves a partial
// artifact at `path`; an empty path means `fallback`.
void emit(const std::filesystem::path& path, const std::string& content,
          std::ostream& fallback) {
  if (path.empty()) {
    fallback << content;
    return;
  }
  auto tmp = path;
  tmp += ".partial";
  {
    std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
    if (!file) throw std::runtime_error("cannot write " + tmp.string());
    file << content;
    file.flush();
    if (!file) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw std::runtime_error("failed writing " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

json warnings_json(const std::vector<RegimeWarning>& warnings) {
  json out = json::array();
  for (const auto& w : warnings)
    out.push_back({{"issue", to_string(w.issue)}, {"message", w.message}});
  return out;
}

json peaks_json(const RunConfig& cfg, const PeakListing& listing) {
  json reports = json::array();
  for (const auto& r : listing.reports) {
    reports.push_back({{"order", r.order},
                       {"k2_per_nm", r.location_k2},
                       {"k2_per_100nm", per_100nm(r.location_k2)},
                       {"location", in_axis_unit(cfg, r.location_k2)},
                       {"intensity_mol", r.intensity_mol},
                       {"intensity_pp", r.intensity_pp},
                       {"ratio_mol_over_pp", r.ratio_mol_over_pp
                                                 ? json(*r.ratio_mol_over_pp)
                                                 : json(nullptr)},
                       {"pp_zero", r.pp_zero}});
  }
  return reports;
}

json suppression_json(const PeakListing& listing) {
  try {
    const auto s = compare_suppression(listing.reports);
    return {{"odd_orders", s.odd_orders},
            {"odd_ratios", s.odd_ratios},
            {"non_increasing", s.non_increasing},
            {"even_orders", s.even_orders},
            {"even_intensity_mol", s.even_intensity_mol}};
  } catch (const std::invalid_argument& e) {
    return {{"unavailable", e.what()}};
  }
}

std::string axis_label(const RunConfig& cfg) {
  return cfg.axis_unit == AxisUnit::PerNm ? "per-nm" : "per-100nm";
}

json report_document(const std::string& command, const RunConfig& cfg,
                     const DiffractionPattern& pattern, const PeakListing& listing) {
  json doc{{"version", kVersion},
           {"command", command},
           {"config", cfg.to_json()},
           {"normalization", to_string(pattern.normalization)},
           {"axis_unit", axis_label(cfg)},
           {"regime_warnings",
            warnings_json(regime_check(pattern.species, pattern.geometry, pattern.beam,
                                       cfg.k2_max_per_nm))},
           {"peaks", peaks_json(cfg, listing)},
           {"suppression", suppression_json(listing)}};
  doc["peak_notice"] = listing.notice ? json(*listing.notice) : json(nullptr);
  return doc;
}

DiffractionPattern compute_pattern(const RunConfig& cfg, const CommandOptions& opts) {
  SamplingOptions sampling;
  sampling.symmetric = cfg.symmetric;
  sampling.threads = opts.threads;
  return sample_pattern(cfg.species(), cfg.geometry(), cfg.beam(), cfg.k2_max_per_nm,
                        cfg.num_samples, cfg.normalization, sampling);
}

int run_pattern(const RunConfig& cfg, const CommandOptions& opts, std::ostream& out,
                std::ostream& err) {
  const auto format = resolved_format(cfg, opts);
  const auto path = resolved_out(cfg, opts);
  const auto pattern = compute_pattern(cfg, opts);
  const auto listing = find_peaks(pattern, cfg.max_order);
  auto doc = report_document("pattern", cfg, pattern, listing);

  if (format == "json") {
    json samples = json::array();
    for (const auto& s : pattern.samples)
      samples.push_back({s.k2, per_100nm(s.k2), s.intensity_mol, s.intensity_pp, s.h_squared});
    doc["columns"] = {"k2_per_nm", "k2_per_100nm", "I_mol", "I_pp", "H_sq"};
    doc["samples"] = std::move(samples);
    emit(path, doc.dump(2) + "\n", out);
    return kExitOk;
  }

  std::string csv = "k2_per_nm,k2_per_100nm,I_mol,I_pp,H_sq\n";
  for (const auto& s : pattern.samples)
    csv += format_number(s.k2) + "," + format_number(per_100nm(s.k2)) + "," +
           format_number(s.intensity_mol) + "," + format_number(s.intensity_pp) + "," +
           format_number(s.h_squared) + "\n";
  emit(path, csv, out);
  if (path.empty()) {
    err << doc.dump(2) << "\n";
  } else {
    emit(sidecar_path(path), doc.dump(2) + "\n", out);
  }
  return kExitOk;
}

int run_peaks(const RunConfig& cfg, const CommandOptions& opts, std::ostream& out,
              std::ostream&) {
  const auto format = resolved_format(cfg, opts);
  const auto pattern = compute_pattern(cfg, opts);
  const auto listing = find_peaks(pattern, cfg.max_order);
  if (format == "json") {
    emit(resolved_out(cfg, opts),
         report_document("peaks", cfg, pattern, listing).dump(2) + "\n", out);
    return kExitOk;
  }
  std::string csv = "order,k2_per_nm,k2_per_100nm,I_mol,I_pp,ratio_mol_over_pp,pp_zero\n";
  for (const auto& r : listing.reports)
    csv += std::to_string(r.order) + "," + format_number(r.location_k2) + "," +
           format_number(per_100nm(r.location_k2)) + "," + format_number(r.intensity_mol) +
           "," + format_number(r.intensity_pp) + "," +
           (r.ratio_mol_over_pp ? format_number(*r.ratio_mol_over_pp) : "pp-zero") + "," +
           (r.pp_zero ? "true" : "false") + "\n";
  emit(resolved_out(cfg, opts), csv, out);
  return kExitOk;
}

int run_bar(const RunConfig& cfg, const CommandOptions& opts, std::ostream& out,
            std::ostream&) {
  const auto format = resolved_format(cfg, opts);
  const auto species = cfg.species();
  const auto geometry = cfg.geometry();
  const auto beam = cfg.beam();
  const auto grid = pattern_grid(geometry, cfg.k2_max_per_nm, cfg.num_samples, cfg.symmetric);

  json rows = json::array();
  std::string csv = "k2_per_nm,k2_per_100nm,abs2_t_mol,abs2_t_pp\n";
  for (double k2 : grid) {
    const double mol =
        molecular_bar_amplitude(species, geometry, beam, k2, AmplitudeMode::Reduced)
            .norm_squared();
    const double pp = point_bar_amplitude(k2, geometry, beam, species.total_mass(),
                                          AmplitudeMode::Reduced)
                          .norm_squared();
    csv += format_number(k2) + "," + format_number(per_100nm(k2)) + "," +
           format_number(mol) + "," + format_number(pp) + "\n";
    rows.push_back({k2, per_100nm(k2), mol, pp});
  }
  if (format == "json") {
    json doc{{"version", kVersion},
             {"command", "bar"},
             {"config", cfg.to_json()},
             {"columns", {"k2_per_nm", "k2_per_100nm", "abs2_t_mol", "abs2_t_pp"}},
             {"samples", rows}};
    emit(resolved_out(cfg, opts), doc.dump(2) + "\n", out);
  } else {
    emit(resolved_out(cfg, opts), csv, out);
  }
  return kExitOk;
}

int run_formfactor(const RunConfig& cfg, const CommandOptions& opts, std::ostream& out,
                   std::ostream&) {
  const auto format = resolved_format(cfg, opts);
  const auto species = cfg.species();
  const auto& wf = species.wavefunction();
  const double step = cfg.k2_max_per_nm / static_cast<double>(cfg.num_samples - 1);
  json rows = json::array();
  std::string csv = "q_per_nm,F\n";
  for (std::size_t i = 0; i < cfg.num_samples; ++i) {
    const double q = i + 1 == cfg.num_samples ? cfg.k2_max_per_nm : step * static_cast<double>(i);
    const double f = form_factor(wf, q);
    csv += format_number(q) + "," + format_number(f) + "\n";
    rows.push_back({q, f});
  }
  if (format == "json") {
    json doc{{"version", kVersion},
             {"command", "formfactor"},
             {"config", cfg.to_json()},
             {"columns", {"q_per_nm", "F"}},
             {"samples", rows}};
    emit(resolved_out(cfg, opts), doc.dump(2) + "\n", out);
  } else {
    emit(resolved_out(cfg, opts), csv, out);
  }
  return kExitOk;
}

int run_check(const RunConfig& cfg, const CommandOptions& opts, std::ostream& out,
              std::ostream&) {
  const auto format = resolved_format(cfg, opts);
  const auto warnings =
      regime_check(cfg.species(), cfg.geometry(), cfg.beam(), cfg.k2_max_per_nm);
  if (format == "json") {
    json doc{{"version", kVersion},
             {"command", "check"},
             {"config", cfg.to_json()},
             {"regime_warnings", warnings_json(warnings)}};
    emit(resolved_out(cfg, opts), doc.dump(2) + "\n", out);
    return kExitOk;
  }
  std::string text;
  if (warnings.empty()) text = "ok: no regime warnings\n";
  for (const auto& w : warnings) text += "warning[" + to_string(w.issue) + "]: " + w.message + "\n";
  emit(resolved_out(cfg, opts), text, out);
  return kExitOk;
}

int run_oracle(const RunConfig& cfg, const CommandOptions& opts, std::ostream& out,
               std::ostream& err) {
  const auto format = resolved_format(cfg, opts);
  const auto species = cfg.species();
  const auto geometry = cfg.geometry();
  const auto beam = cfg.beam();

  auto k2_list = opts.k2_list;
  if (k2_list.empty())
    for (int n = 1; n <= 3; ++n) k2_list.push_back(geometry.order_position(n));
  if (k2_list.size() > kMaxOraclePoints)
    throw UsageError("oracle accepts at most " + std::to_string(kMaxOraclePoints) +
                     " k2 points, got " + std::to_string(k2_list.size()));

  double k2_max = 0.0;
  for (double k : k2_list) k2_max = std::max(k2_max, std::abs(k));
  const BruteForceBarOracle oracle(species, geometry, k2_max);

  bool mismatch = false;
  json rows = json::array();
  std::string csv = "k2_per_nm,fast_re,fast_im,brute_re,brute_im,rel_diff\n";
  for (double k2 : k2_list) {
    const auto fast = molecular_bar_amplitude(species, geometry, beam, k2, AmplitudeMode::Reduced);
    const auto brute = oracle.evaluate(k2, beam, AmplitudeMode::Reduced);
    const double rel = std::abs(fast.value - brute.value) / std::abs(brute.value);
    if (!(rel <= kOracleTolerance)) mismatch = true;
    csv += format_number(k2) + "," + format_number(fast.value.real()) + "," +
           format_number(fast.value.imag()) + "," + format_number(brute.value.real()) + "," +
           format_number(brute.value.imag()) + "," + format_number(rel) + "\n";
    rows.push_back({{"k2_per_nm", k2},
                    {"fast", {fast.value.real(), fast.value.imag()}},
                    {"brute_force", {brute.value.real(), brute.value.imag()}},
                    {"rel_diff", rel}});
  }
  if (format == "json") {
    json doc{{"version", kVersion},
             {"command", "oracle"},
             {"config", cfg.to_json()},
             {"tolerance", kOracleTolerance},
             {"rows", rows}};
    emit(resolved_out(cfg, opts), doc.dump(2) + "\n", out);
  } else {
    emit(resolved_out(cfg, opts), csv, out);
  }
  if (mismatch) {
    err << "oracle mismatch: relative difference above " << kOracleTolerance << "\n";
    return kExitOracleMismatch;
  }
  return kExitOk;
}

}  // namespace

std::string format_number(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

std::filesystem::path sidecar_path(const std::filesystem::path& csv_path) {
  auto p = csv_path;
  if (p.extension() == ".json") p += ".json";
  else p.replace_extension(".json");
  return p;
}

int run_command(const std::string& command, const RunConfig& config,
                const CommandOptions& options, std::ostream& out, std::ostream& err) {
  try {
    (void)config.species();
    (void)config.geometry();
    (void)config.beam();
  } catch (const std::exception& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfigError;
  }
  try {
    if (command == "pattern") return run_pattern(config, options, out, err);
    if (command == "peaks") return run_peaks(config, options, out, err);
    if (command == "bar") return run_bar(config, options, out, err);
    if (command == "formfactor") return run_formfactor(config, options, out, err);
    if (command == "check") return run_check(config, options, out, err);
    if (command == "oracle") return run_oracle(config, options, out, err);
    err << "error: unknown command '" << command << "'\n";
    return kExitConfigError;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const numerics::QuadratureError& e) {
    err << "numerical failure: " << e.what() << " (best estimate " << e.best_value()
        << ", error bound " << e.achieved_error() << ")\n";
    return kExitNumericalFailure;
  } catch (const PatternEvaluationError& e) {
    err << "numerical failure: " << e.what() << " (" << e.completed() << " of " << e.total()
        << " samples completed)\n";
    return kExitNumericalFailure;
  } catch (const ResourceLimitError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumericalFailure;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumericalFailure;
  }
}

int run_command(const std::string& command, const std::filesystem::path& config_path,
                const CommandOptions& options, std::ostream& out, std::ostream& err) {
  RunConfig config;
  try {
    config = load_config(config_path);
  } catch (const ConfigError& e) {
    err << "config error: " << config_path.string() << ": " << e.what() << "\n";
    return kExitConfigError;
  }
  return run_command(command, config, options, out, err);
}

}  // namespace molgrating::cli
