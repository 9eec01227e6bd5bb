#include <CLI11.hpp>

#include <iostream>
#include <sstream>
#include <string>

#include "molgrating/cli/commands.hpp"
#include "molgrating/version.hpp"

namespace {

std::vector<double> parse_k2_list(const std::string& text) {
  std::vector<double> values;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    const double v = std::stod(item, &used);
    if (used != item.size()) throw std::invalid_argument("bad k2 value '" + item + "'");
    values.push_back(v);
  }
  return values;
}

}  // namespace

int main(int argc, char** argv) {
  using molgrating::cli::CommandOptions;

  CLI::App app{"Elastic diffraction of weakly bound dimers by transmission gratings"};
  app.set_version_flag("--version", molgrating::kVersion);
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::string format;
  std::string k2_text;
  unsigned threads = 1;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "Run configuration (YAML or JSON sidecar)")
        ->required();
    sub->add_option("--out", out_path, "Output path (stdout when omitted)");
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--threads", threads, "Worker threads for pattern sampling")
        ->check(CLI::Range(1u, 1024u));
  };

  const std::pair<const char*, const char*> commands[] = {
      {"pattern", "Coherent diffraction pattern (CSV + JSON sidecar)"},
      {"peaks", "Peak heights at the grating orders"},
      {"bar", "Single-bar |t_mol|^2 and |t_PP|^2 over k2"},
      {"formfactor", "Molecular form factor F(q)"},
      {"check", "Diffraction-regime warnings"},
      {"oracle", "Fast single-bar amplitude against brute-force 3D quadrature"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    add_common(sub);
    if (std::string(name) == "oracle")
      sub->add_option("--k2", k2_text, "Comma-separated k2 values in nm^-1 (max 32)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return molgrating::cli::kExitConfigError;
  }

  CommandOptions options;
  if (!out_path.empty()) options.out = out_path;
  if (!format.empty()) options.format = format;
  options.threads = threads;
  try {
    options.k2_list = parse_k2_list(k2_text);
  } catch (const std::exception& e) {
    std::cerr << "usage error: --k2: " << e.what() << "\n";
    return molgrating::cli::kExitConfigError;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  return molgrating::cli::run_command(command, std::filesystem::path(config_path), options,
                                      std::cout, std::cerr);
}
