#include <doctest.h>

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "molgrating/cli/commands.hpp"
#include "molgrating/cli/config.hpp"

using namespace molgrating;
using namespace molgrating::cli;
namespace fs = std::filesystem;

namespace {

const std::string kBase = R"(species:
  mass_1_u: 4.002602
  mass_2_u: 4.002602
  binding_energy_mK: -1.3
  wavefunction:
    model: zero_range
grating:
  d_nm: 50
  s_nm: 25
  N: 30
beam:
  speed_m_per_s: 1000
sampling:
  k2_max_per_nm: 0.8
  num_samples: 121
  normalization: unit-zeroth-order
  max_order: 5
output:
  format: csv
)";

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("molgrating_cli_" + std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::string& command, const RunConfig& cfg, CommandOptions opts = {}) {
  std::ostringstream out, err;
  const int code = run_command(command, cfg, opts, out, err);
  return {code, out.str(), err.str()};
}

Run run_text(const std::string& command, const std::string& yaml, CommandOptions opts = {}) {
  TempDir dir;
  const auto path = dir.path / "run.yaml";
  std::ofstream(path) << yaml;
  std::ostringstream out, err;
  const int code = run_command(command, path, opts, out, err);
  return {code, out.str(), err.str()};
}

std::string replace(std::string text, const std::string& from, const std::string& to) {
  const auto pos = text.find(from);
  REQUIRE(pos != std::string::npos);
  return text.replace(pos, from.size(), to);
}

}  // namespace

TEST_CASE("config parsing fills defaults and derived values") {
  const auto cfg = parse_config(kBase);
  CHECK(cfg.period_nm == 50.0);
  CHECK(cfg.bar_count == 30);
  CHECK(cfg.binding_energy_micro_ev == doctest::Approx(-0.112025).epsilon(1e-5));
  CHECK(cfg.beam().wavenumber() == doctest::Approx(126.05).epsilon(1e-4));
  CHECK(cfg.axis_unit == AxisUnit::PerNm);

  const auto minimal = parse_config("grating: {d_nm: 100, s_nm: 50, N: 30}\nbeam: {speed_m_per_s: 1000}\n");
  CHECK(minimal.species().total_mass() == doctest::Approx(8.005204));
  CHECK(minimal.k2_max_per_nm == doctest::Approx(2.0 * 3.141592653589793 * 9.5 / 100.0));
  CHECK(minimal.num_samples == 2001);
}

TEST_CASE("config errors name the field and line") {
  try {
    (void)parse_config(replace(kBase, "  N: 30\n", "  N: 30\n  bars: 4\n"));
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.line() == 11);
    CHECK(std::string(e.what()).find("bars") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_config(replace(kBase, "s_nm: 25", "s_nm: 60")), ConfigError);
  CHECK_THROWS_AS(parse_config(replace(kBase, "speed_m_per_s: 1000",
                                       "speed_m_per_s: 1000\n  wavenumber_per_nm: 126")),
                  ConfigError);
  CHECK_THROWS_AS(parse_config(replace(kBase, "speed_m_per_s: 1000", "{}")), ConfigError);
  CHECK_THROWS_AS(parse_config(replace(kBase, "d_nm: 50", "d_nm: fifty")), ConfigError);
  CHECK_THROWS_AS(parse_config(replace(kBase, "zero_range", "gaussian")), ConfigError);
  CHECK_THROWS_AS(parse_config(replace(kBase, "binding_energy_mK: -1.3",
                                       "binding_energy_mK: -1.3\n  binding_energy_ueV: -0.1")),
                  ConfigError);
  CHECK_THROWS_AS(parse_config("grating: [1, 2"), ConfigError);
}

TEST_CASE("invalid geometry exits with the configuration code") {
  const auto r = run_text("pattern", replace(kBase, "s_nm: 25", "s_nm: 50"));
  CHECK(r.code == kExitConfigError);
  CHECK(r.err.find("s_nm") != std::string::npos);
  CHECK(run_text("pattern", "grating: {d_nm: 1}\n").code == kExitConfigError);
  CHECK(run_text("launch", kBase).code == kExitConfigError);
  std::ostringstream out, err;
  CHECK(run_command("pattern", fs::path("/nonexistent/cfg.yaml"), {}, out, err) ==
        kExitConfigError);
}

TEST_CASE("pattern writes a CSV and a JSON sidecar that reproduces it") {
  TempDir dir;
  const auto cfg = parse_config(kBase);
  CommandOptions opts;
  opts.out = dir.path / "p.csv";
  REQUIRE(run("pattern", cfg, opts).code == kExitOk);
  const auto csv = slurp(dir.path / "p.csv");
  CHECK(csv.rfind("k2_per_nm,k2_per_100nm,I_mol,I_pp,H_sq\n", 0) == 0);
  CHECK(!fs::exists(dir.path / "p.csv.partial"));

  const auto sidecar = nlohmann::json::parse(slurp(sidecar_path(*opts.out)));
  CHECK(sidecar["command"] == "pattern");
  CHECK(sidecar["normalization"] == "unit-zeroth-order");
  CHECK(sidecar["regime_warnings"].is_array());
  CHECK(sidecar["peaks"].size() == 6);
  CHECK(sidecar["peaks"][2]["pp_zero"] == true);
  CHECK(sidecar["suppression"]["odd_orders"].size() == 3);

  CommandOptions again;
  again.out = dir.path / "q.csv";
  std::ostringstream out, err;
  REQUIRE(run_command("pattern", sidecar_path(*opts.out), again, out, err) == kExitOk);
  CHECK(slurp(dir.path / "q.csv") == csv);

  // identical inputs give byte-identical output, also across thread counts
  CommandOptions threaded;
  threaded.out = dir.path / "r.csv";
  threaded.threads = 2;
  REQUIRE(run("pattern", cfg, threaded).code == kExitOk);
  CHECK(slurp(dir.path / "r.csv") == csv);
}

TEST_CASE("json output and stdout fallback") {
  const auto cfg = parse_config(kBase);
  CommandOptions opts;
  opts.format = "json";
  const auto r = run("pattern", cfg, opts);
  REQUIRE(r.code == kExitOk);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["samples"].size() >= 121);
  CHECK(doc["columns"][2] == "I_mol");

  const auto csv = run("pattern", cfg);
  CHECK(csv.out.rfind("k2_per_nm,", 0) == 0);
  CHECK(nlohmann::json::parse(csv.err)["command"] == "pattern");

  opts.format = "xml";
  CHECK(run("pattern", cfg, opts).code == kExitConfigError);
}

TEST_CASE("peaks, bar, formfactor and check commands") {
  const auto cfg = parse_config(kBase);
  const auto peaks = run("peaks", cfg);
  REQUIRE(peaks.code == kExitOk);
  CHECK(peaks.out.rfind("order,k2_per_nm,k2_per_100nm,I_mol,I_pp,ratio_mol_over_pp,pp_zero\n", 0) == 0);
  CHECK(peaks.out.find("\n2,") != std::string::npos);
  CHECK(peaks.out.find("pp-zero,true") != std::string::npos);

  const auto bar = run("bar", cfg);
  REQUIRE(bar.code == kExitOk);
  CHECK(bar.out.rfind("k2_per_nm,k2_per_100nm,abs2_t_mol,abs2_t_pp\n0,0,", 0) == 0);

  const auto ff = run("formfactor", cfg);
  REQUIRE(ff.code == kExitOk);
  std::istringstream lines(ff.out);
  std::string header, first;
  std::getline(lines, header);
  std::getline(lines, first);
  CHECK(header == "q_per_nm,F");
  CHECK(std::stod(first.substr(first.find(',') + 1)) == doctest::Approx(1.0).epsilon(1e-12));

  const auto ok = run("check", cfg);
  CHECK(ok.code == kExitOk);
  CHECK(ok.out.find("ok") != std::string::npos);

  auto tight = cfg;
  tight.period_nm = 10.0;
  tight.slit_nm = 5.0;
  const auto warn = run("check", tight);
  CHECK(warn.code == kExitOk);
  CHECK(warn.out.find("warning[incoherent_term]") != std::string::npos);
}

TEST_CASE("oracle command") {
  const auto cfg = parse_config(kBase);
  CommandOptions opts;
  opts.k2_list = {0.0, 0.1257};
  const auto r = run("oracle", cfg, opts);
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.rfind("k2_per_nm,fast_re,fast_im,brute_re,brute_im,rel_diff\n", 0) == 0);

  opts.k2_list.assign(kMaxOraclePoints + 1, 0.1);
  const auto refused = run("oracle", cfg, opts);
  CHECK(refused.code == kExitConfigError);
  CHECK(refused.err.find("32") != std::string::npos);
}

TEST_CASE("number formatting round-trips") {
  for (double x : {0.1, 1.0 / 3.0, 6.02214076e23, -2.5e-300, 0.0}) CHECK(std::stod(format_number(x)) == x);
  CHECK(sidecar_path("out/p.csv") == fs::path("out/p.json"));
}
