// End-to-end checks that drive the installed binary through a shell.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "thetavol/serialize.hpp"

#ifndef THETAVOL_CLI_PATH
#error "THETAVOL_CLI_PATH must be defined by the build"
#endif

namespace {

namespace fs = std::filesystem;
using thetavol::json;

struct Sandbox {
  fs::path dir;
  Sandbox() {
    dir = fs::temp_directory_path() /
          ("thetavol_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~Sandbox() { fs::remove_all(dir); }
};

int run(const std::string& args) {
  std::string cmd = std::string(THETAVOL_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_fs_config(const fs::path& p, const json& extra_scan = {}) {
  json seg = {{"dim", 1}, {"vertices", {{0}, {1}}}};
  json cfg = {{"model",
               {{"polytope", seg},
                {"weight", {{"polytope", seg}, {"kind", "fubini_study"}}},
                {"measure",
                 {{"kind", "monge_ampere"},
                  {"weight", {{"polytope", seg}, {"kind", "fubini_study"}}}}}}}};
  cfg["scan"] = {{"k_list", {2, 4, 6, 8, 10}}};
  for (auto& [key, val] : extra_scan.items()) cfg["scan"][key] = val;
  std::ofstream out(p);
  out << cfg.dump(2);
}

}  // namespace

TEST_CASE("verify subcommand runs a suite and writes reports") {
  Sandbox sb;
  int rc = run("verify --suite degree --seed 7 --out " + sb.dir.string());
  CHECK(rc == 0);
  std::string txt = slurp(sb.dir / "verify_degree.txt");
  CHECK(txt.find("PASS C10_arithmetic_degrees") != std::string::npos);
  CHECK(txt.find("VERIFY PASS") != std::string::npos);
  // byte-identical reruns
  Sandbox sb2;
  run("verify --suite degree --seed 7 --out " + sb2.dir.string());
  CHECK(slurp(sb2.dir / "verify_degree.txt") == txt);
  CHECK(slurp(sb2.dir / "verify_degree.json") == slurp(sb.dir / "verify_degree.json"));
}

TEST_CASE("volume scan writes the frozen csv") {
  Sandbox sb;
  write_fs_config(sb.dir / "cfg.json");
  int rc = run("volume-scan --config " + (sb.dir / "cfg.json").string() + " --out " +
               sb.dir.string());
  CHECK(rc == 0);
  std::string csv = slurp(sb.dir / "volume_scan.csv");
  CHECK(csv.rfind("k,N_k,h0_theta,chi_hat,v_k,chi_k,sup_rho,theta_over_rho_max\n",
                  0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);
  json report = json::parse(slurp(sb.dir / "volume_scan.json"));
  CHECK(report.at("rows").size() == 5);
  CHECK(report.at("fit").contains("v_infinity"));
}

TEST_CASE("degree subcommand emits the anchored report") {
  Sandbox sb;
  write_fs_config(sb.dir / "cfg.json");
  int rc = run("degree --config " + (sb.dir / "cfg.json").string() + " --out " +
               sb.dir.string());
  CHECK(rc == 0);
  json report = json::parse(slurp(sb.dir / "degree.json"));
  CHECK(report.at("anchor") == "canonical=0");
  CHECK(std::abs(report.at("degree").get<double>() - 0.5) < 1e-6);
  CHECK(std::abs(report.at("degree_via_slopes").get<double>() - 0.5) < 1e-6);
}

TEST_CASE("count and gram subcommands") {
  Sandbox sb;
  write_fs_config(sb.dir / "cfg.json");
  CHECK(run("count --config " + (sb.dir / "cfg.json").string() + " --out " +
            sb.dir.string()) == 0);
  std::string counts = slurp(sb.dir / "counts.csv");
  CHECK(counts.find("2,3\n") != std::string::npos);
  CHECK(counts.find("10,11\n") != std::string::npos);
  CHECK(run("gram --config " + (sb.dir / "cfg.json").string() + " --k 2 --out " +
            sb.dir.string()) == 0);
  json gram = json::parse(slurp(sb.dir / "gram_k2.json"));
  CHECK(gram.at("N_k") == 3);
  CHECK(std::abs(gram.at("diag")[0].get<double>() - 1.0 / 3.0) < 1e-9);
}

TEST_CASE("config errors exit with code 2") {
  Sandbox sb;
  CHECK(run("volume-scan --config /nonexistent.json --out " + sb.dir.string()) == 2);
  std::ofstream bad(sb.dir / "bad.json");
  bad << "{\"model\": {}}";
  bad.close();
  CHECK(run("volume-scan --config " + (sb.dir / "bad.json").string() + " --out " +
            sb.dir.string()) == 2);
  std::ofstream worse(sb.dir / "worse.json");
  worse << "not json";
  worse.close();
  CHECK(run("degree --config " + (sb.dir / "worse.json").string()) == 2);
}

TEST_CASE("lattice subcommand") {
  Sandbox sb;
  json cfg = {{"count", 4}, {"max_rank", 3}};
  std::ofstream out(sb.dir / "lat.json");
  out << cfg.dump();
  out.close();
  CHECK(run("lattice --config " + (sb.dir / "lat.json").string() + " --seed 11 --out " +
            sb.dir.string()) == 0);
  json report = json::parse(slurp(sb.dir / "lattice_report.json"));
  CHECK(report.at("lattices").size() == 4);
  CHECK(report.at("max_poisson_residual").get<double>() < 1e-9);
}
