// Black-box driver tests: exit codes, strict config validation, output file
// sets, and determinism of numeric outputs across re-runs. The binary path
// arrives through GLKDV_CLI_PATH.
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string cli_path() {
#ifdef GLKDV_CLI_PATH
  return GLKDV_CLI_PATH;
#else
  const char* p = std::getenv("GLKDV_CLI_PATH");
  REQUIRE(p != nullptr);
  return p;
#endif
}

fs::path scratch_root() {
  static const fs::path root = [] {
    fs::path r = fs::temp_directory_path() / "glkdv_cli_scratch";
    fs::remove_all(r);
    fs::create_directories(r);
    return r;
  }();
  return root;
}

struct RunResult {
  int exit_code = -1;
  std::string out, err;
};

RunResult run_cli(const std::string& command, const json& cfg, const std::string& tag) {
  const fs::path dir = scratch_root() / tag;
  fs::create_directories(dir);
  const fs::path cfg_path = dir / "config.json";
  {
    std::ofstream f(cfg_path);
    f << cfg.dump(2) << "\n";
  }
  const fs::path out_path = dir / "stdout.txt";
  const fs::path err_path = dir / "stderr.txt";
  const std::string cmd = cli_path() + " " + command + " " + cfg_path.string() + " > " +
                          out_path.string() + " 2> " + err_path.string();
  const int rc = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  auto slurp = [](const fs::path& p) {
    std::ifstream f(p);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
  };
  r.out = slurp(out_path);
  r.err = slurp(err_path);
  return r;
}

std::string file_bytes(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("cli rejects malformed invocations with exit code 2") {
  const std::string devnull = " > /dev/null 2>&1";
  int rc = std::system((cli_path() + devnull).c_str());
  CHECK(WEXITSTATUS(rc) == 2);  // no arguments
  rc = std::system((cli_path() + " spectrum /nonexistent/config.json" + devnull).c_str());
  CHECK(WEXITSTATUS(rc) == 2);  // unreadable config
  const fs::path bad = scratch_root() / "bad.json";
  {
    std::ofstream f(bad);
    f << "{ not json";
  }
  rc = std::system((cli_path() + " spectrum " + bad.string() + devnull).c_str());
  CHECK(WEXITSTATUS(rc) == 2);  // unparsable config
  rc = std::system((cli_path() + " frobnicate " + bad.string() + devnull).c_str());
  CHECK(WEXITSTATUS(rc) == 2);  // unknown command
}

TEST_CASE("cli rejects unknown and missing keys with exit code 2") {
  const fs::path out = scratch_root() / "spectrum_badcfg_out";
  json cfg{{"alpha", 1.0}, {"beta", 0.0}, {"out_dir", out.string()}, {"bogus_knob", 3}};
  CHECK(run_cli("spectrum", cfg, "unknown_key").exit_code == 2);
  json cfg2{{"beta", 0.0}, {"out_dir", out.string()}};
  CHECK(run_cli("spectrum", cfg2, "missing_key").exit_code == 2);
  json cfg3{{"alpha", 1.0}, {"beta", 0.0}};
  CHECK(run_cli("spectrum", cfg3, "missing_outdir").exit_code == 2);
}

TEST_CASE("spectrum writes its output set and is deterministic") {
  auto make_cfg = [&](const std::string& tag) {
    const fs::path out = scratch_root() / tag / "out";
    return json{{"alpha", 1.0}, {"beta", 0.0}, {"epsilon", 0.1}, {"n_k", 801},
                {"out_dir", out.string()}};
  };
  const json c1 = make_cfg("spec_run1"), c2 = make_cfg("spec_run2");
  REQUIRE(run_cli("spectrum", c1, "spec_run1").exit_code == 0);
  REQUIRE(run_cli("spectrum", c2, "spec_run2").exit_code == 0);
  const fs::path d1 = c1.at("out_dir").get<std::string>();
  const fs::path d2 = c2.at("out_dir").get<std::string>();
  for (const char* f : {"dispersion.csv", "summary.json", "resolved_config.json",
                        "manifest.json"})
    CHECK(fs::exists(d1 / f));
  // Numeric artifacts are bit-identical across runs; only the manifest halts
  // determinism through its runtime entry.
  CHECK(file_bytes(d1 / "dispersion.csv") == file_bytes(d2 / "dispersion.csv"));
  CHECK(file_bytes(d1 / "summary.json") == file_bytes(d2 / "summary.json"));

  const json summary = json::parse(file_bytes(d1 / "summary.json"));
  CHECK(summary.at("region").get<std::string>() == "sideband_stable_As");
  CHECK(summary.at("lambda_minus_bound_holds").get<bool>());
}

TEST_CASE("coeffs prints the reduction constants and honors out_dir") {
  const fs::path out = scratch_root() / "coeffs_out";
  const json cfg{{"alpha", 1.0}, {"beta", 0.0}, {"sigma", 2.0}, {"out_dir", out.string()}};
  const RunResult r = run_cli("coeffs", cfg, "coeffs_run");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("gamma_lin=-1") != std::string::npos);
  CHECK(r.out.find("nu0=-0.5") != std::string::npos);
  REQUIRE(fs::exists(out / "coeffs.json"));
  const json j = json::parse(file_bytes(out / "coeffs.json"));
  CHECK(j.at("ansatz").at("nu3").get<double>() == doctest::Approx(-0.5));
  CHECK(j.at("expansion").at("c2").get<double>() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("coeffs wants exactly one parameterization") {
  json cfg{{"alpha", 1.0}, {"beta", 0.0}, {"sigma", 2.0}, {"epsilon", 0.1}};
  CHECK(run_cli("coeffs", cfg, "coeffs_two_params").exit_code == 2);
  json cfg2{{"alpha", 1.0}, {"beta", 0.0}};
  CHECK(run_cli("coeffs", cfg2, "coeffs_no_params").exit_code == 2);
}

TEST_CASE("simulate runs the modulation system and reports zero drift at rest") {
  const fs::path out = scratch_root() / "sim_zero_out";
  const json cfg{{"system", "modulation"}, {"alpha", 1.0},   {"beta", 0.0},
                 {"epsilon", 0.2},         {"t_end", 0.1},   {"records", 2},
                 {"n_x", 64},              {"l_x", 10.0},
                 {"initial", {{"type", "zero"}}},            {"out_dir", out.string()}};
  const RunResult r = run_cli("simulate", cfg, "sim_zero");
  REQUIRE(r.exit_code == 0);
  REQUIRE(fs::exists(out / "manifest.json"));
  const json m = json::parse(file_bytes(out / "manifest.json"));
  CHECK(m.at("status").at("outcome").get<std::string>() == "completed");
  CHECK(m.at("drift_metric").get<double>() == 0.0);
  CHECK(fs::exists(out / "trajectory.csv"));
  CHECK(fs::exists(out / "final_psi.bin"));
  CHECK(fs::exists(out / "final_s.bin"));
}

TEST_CASE("simulate propagates a wave train with tiny rotation-compensated drift") {
  const fs::path out = scratch_root() / "sim_wt_out";
  const json cfg{{"system", "cgl"},
                 {"alpha", 1.0},
                 {"beta", 0.0},
                 {"epsilon", 0.1},
                 {"t_end", 1.0},
                 {"dt", 1e-2},
                 {"records", 4},
                 {"n_x", 64},
                 {"l_x", 8.0 * M_PI},
                 {"initial", {{"type", "wave_train"}}},
                 {"out_dir", out.string()}};
  const RunResult r = run_cli("simulate", cfg, "sim_wt");
  REQUIRE(r.exit_code == 0);
  const json m = json::parse(file_bytes(out / "manifest.json"));
  CHECK(m.at("drift_metric").get<double>() < 1e-8);
}

TEST_CASE("simulate surfaces a tripped guard as a numerical failure") {
  const fs::path out = scratch_root() / "sim_guard_out";
  const json cfg{{"system", "cgl"},      {"alpha", 1.0},  {"beta", 0.0},
                 {"epsilon", 0.1},       {"t_end", 0.5},  {"records", 2},
                 {"n_x", 64},            {"l_x", 8.0 * M_PI},
                 {"guard_sup", 0.5},  // below the wave-train amplitude
                 {"initial", {{"type", "wave_train"}}},   {"out_dir", out.string()}};
  const RunResult r = run_cli("simulate", cfg, "sim_guard");
  CHECK(r.exit_code == 3);
  const json m = json::parse(file_bytes(out / "manifest.json"));
  CHECK(m.at("status").at("outcome").get<std::string>() == "guard_tripped");
}

TEST_CASE("validate end_to_end emits a coherent report") {
  const fs::path out = scratch_root() / "e2e_out";
  const json cfg{{"mode", "end_to_end"}, {"alpha", 1.0},  {"beta", 0.0},
                 {"epsilon", 0.2},       {"t_end", 0.25}, {"n_xi", 64},
                 {"n_records", 10},      {"kdv_dt", 1e-3},
                 {"out_dir", out.string()}};
  const RunResult r = run_cli("validate", cfg, "e2e");
  REQUIRE(r.exit_code == 0);
  const json rep = json::parse(file_bytes(out / "report.json"));
  CHECK(rep.at("cgl_status").at("outcome").get<std::string>() == "completed");
  CHECK(rep.at("mod_status").at("outcome").get<std::string>() == "completed");
  CHECK(rep.at("chain_sup_err").get<double>() < 1e-3);
  CHECK(rep.at("chain_sup_err").get<double>() > 0.0);
  CHECK(fs::exists(out / "window.csv"));
  CHECK(fs::exists(out / "phase.csv"));
}

TEST_CASE("validate rejects an unknown mode") {
  const fs::path out = scratch_root() / "badmode_out";
  const json cfg{{"mode", "wat"}, {"out_dir", out.string()}};
  CHECK(run_cli("validate", cfg, "badmode").exit_code == 2);
}
