#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "thetavol/energy.hpp"
#include "thetavol/lattice.hpp"
#include "thetavol/numerics.hpp"
#include "thetavol/sections.hpp"
#include "thetavol/serialize.hpp"
#include "thetavol/verify.hpp"

namespace tv = thetavol;
using tv::json;

namespace {

void write_text(const std::string& dir, const std::string& name,
                const std::string& content) {
  std::filesystem::create_directories(dir);
  std::ofstream out(dir + "/" + name, std::ios::binary);
  if (!out) throw tv::ComputeError("cannot write " + dir + "/" + name);
  out << content;
}

void write_json(const std::string& dir, const std::string& name, const json& j) {
  write_text(dir, name, j.dump(2) + "\n");
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw tv::ConfigError("cannot open config file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw tv::ConfigError(std::string("config parse error: ") + e.what());
  }
  return j;
}

struct CommonArgs {
  std::string config_path;
  std::string out_dir = ".";
  std::uint64_t seed = 7;
  int jobs = 1;
};

int cmd_lattice(const CommonArgs& args) {
  json spec;
  if (!args.config_path.empty()) spec = load_json(args.config_path);
  std::vector<tv::EuclideanLattice> lattices;
  std::vector<std::string> labels;
  if (spec.contains("lattices")) {
    int idx = 0;
    for (const auto& lj : spec.at("lattices")) {
      lattices.push_back(tv::lattice_from_json(lj));
      labels.push_back("lattice[" + std::to_string(idx++) + "]");
    }
  } else {
    int count = spec.value("count", 20);
    int max_rank = spec.value("max_rank", 6);
    if (count < 1 || max_rank < 1) throw tv::ConfigError("count and max_rank must be >= 1");
    for (int i = 0; i < count; ++i) {
      int rank = 1 + i % max_rank;
      lattices.push_back(tv::random_spd_lattice(rank, args.seed + i));
      labels.push_back("random(rank=" + std::to_string(rank) + ",seed=" +
                       std::to_string(args.seed + i) + ")");
    }
  }
  std::vector<double> ts = {0.25, 0.5, 1.0, 2.0, 4.0};
  if (spec.contains("t_list")) ts = spec.at("t_list").get<std::vector<double>>();
  json rows = json::array();
  double worst_residual = 0.0;
  for (std::size_t i = 0; i < lattices.size(); ++i) {
    const auto& L = lattices[i];
    double h0 = tv::h0_theta(L);
    double h1 = tv::h1_theta(L);
    double deg = tv::arakelov_degree(L);
    double res = h0 - h1 - deg;
    double ar = tv::h0_ar(L);
    tv::MonotonicityReport mono = tv::lemma_monotonicity_check(L, ts);
    worst_residual = std::max(worst_residual, std::abs(res));
    rows.push_back(json{{"label", labels[i]},
                        {"rank", L.rank()},
                        {"h0_theta", h0},
                        {"h1_theta", h1},
                        {"degree", deg},
                        {"poisson_residual", res},
                        {"h0_ar", ar},
                        {"monotonicity_pass", mono.pass},
                        {"monotonicity_tolerance", mono.tolerance}});
  }
  write_json(args.out_dir, "lattice_report.json",
             json{{"lattices", rows}, {"max_poisson_residual", worst_residual}});
  std::cout << "max |h0 - h1 - deg| over " << lattices.size()
            << " lattices: " << tv::format_real(worst_residual) << "\n";
  return 0;
}

int cmd_count(const tv::ExperimentConfig& cfg, const CommonArgs& args) {
  std::string csv = "k,N_k\n";
  for (int k : cfg.k_list) {
    tv::SectionSpace S = tv::lattice_points(cfg.polytope, k);
    csv += std::to_string(k) + "," + std::to_string(S.size()) + "\n";
  }
  write_text(args.out_dir, "counts.csv", csv);
  std::cout << "wrote counts.csv (" << cfg.k_list.size() << " rows), vol = "
            << tv::format_real(tv::geometric_volume(cfg.polytope)) << "\n";
  return 0;
}

int cmd_gram(const tv::ExperimentConfig& cfg, const CommonArgs& args, int k) {
  if (k <= 0) k = cfg.k_list.front();
  tv::SectionSpace S = tv::lattice_points(cfg.polytope, k);
  tv::GramData G = tv::gram_matrix(S, cfg.measure, cfg.weight, cfg.tol_gram);
  json exps = json::array();
  for (const auto& m : S.exponents) {
    if (cfg.polytope.dim() == 1)
      exps.push_back(json::array({m[0]}));
    else
      exps.push_back(json::array({m[0], m[1]}));
  }
  std::vector<double> diag(G.diag.data(), G.diag.data() + G.diag.size());
  std::vector<double> errs(G.entry_error.data(), G.entry_error.data() + G.entry_error.size());
  write_json(args.out_dir, "gram_k" + std::to_string(k) + ".json",
             json{{"k", k}, {"N_k", S.size()}, {"exponents", exps},
                  {"diag", diag}, {"entry_error", errs}});
  std::cout << "wrote gram_k" << k << ".json, N_k = " << S.size() << "\n";
  return 0;
}

int cmd_rho(const tv::ExperimentConfig& cfg, const CommonArgs& args, int k,
            bool with_theta) {
  if (k <= 0) k = cfg.k_list.front();
  tv::SectionSpace S = tv::lattice_points(cfg.polytope, k);
  tv::GramData G = tv::gram_matrix(S, cfg.measure, cfg.weight, cfg.tol_gram);
  std::vector<double> grid = cfg.u_grid.expand();
  std::string csv;
  std::string name;
  if (!with_theta) {
    csv = "u,rho\n";
    for (double u : grid) {
      double uu[1] = {u};
      csv += tv::format_real(u) + "," + tv::format_real(tv::rho(G, cfg.weight, uu)) + "\n";
    }
    name = "rho_k" + std::to_string(k) + ".csv";
  } else {
    csv = "u,t,theta_distortion,rho\n";
    for (double t : cfg.t_list)
      for (double u : grid) {
        double uu[1] = {u};
        csv += tv::format_real(u) + "," + tv::format_real(t) + "," +
               tv::format_real(tv::theta_distortion(G, cfg.weight, uu, t)) + "," +
               tv::format_real(tv::rho(G, cfg.weight, uu)) + "\n";
      }
    name = "theta_distortion_k" + std::to_string(k) + ".csv";
  }
  if (cfg.polytope.dim() != 1)
    throw tv::ConfigError("rho/theta-distortion tables are for curve models");
  write_text(args.out_dir, name, csv);
  std::cout << "wrote " << name << "\n";
  return 0;
}

int cmd_scan(const tv::ExperimentConfig& cfg, const CommonArgs& args, bool chi) {
  tv::ScanOptions opts;
  opts.gram_eps = cfg.tol_gram;
  opts.jobs = args.jobs;
  if (cfg.polytope.dim() == 1) opts.u_grid = cfg.u_grid.expand();
  tv::VolumeScan scan =
      tv::volume_scan(cfg.polytope, cfg.weight, cfg.measure, cfg.k_list, opts);
  const char* base = chi ? "chi_scan" : "volume_scan";
  write_text(args.out_dir, std::string(base) + ".csv", tv::scan_csv(scan));
  write_json(args.out_dir, std::string(base) + ".json", tv::scan_report_json(scan));
  std::cout << base << ": v_inf = " << tv::format_real(scan.fit.v_infinity)
            << ", chi_inf = " << tv::format_real(scan.fit.chi_infinity) << "\n";
  return 0;
}

int cmd_equilibrium(const tv::ExperimentConfig& cfg, const CommonArgs& args) {
  tv::EnvelopeGrid grid;
  tv::GridFunction env = tv::equilibrium_weight(cfg.weight, grid);
  tv::GridFunction samples = tv::sample_weight(cfg.weight, grid);
  tv::GridFunction conj = tv::legendre(samples, cfg.polytope, grid.p_nodes);
  double max_drop = 0.0, max_above = -1e300;
  for (std::size_t i = 0; i < env.nodes.size(); ++i) {
    double psi = cfg.weight.eval1(env.nodes[i]);
    max_drop = std::max(max_drop, psi - env.values[i]);
    max_above = std::max(max_above, env.values[i] - psi);
  }
  write_json(args.out_dir, "equilibrium.json", tv::to_json(env));
  write_json(args.out_dir, "conjugate.json", tv::to_json(conj));
  write_json(args.out_dir, "equilibrium_report.json",
             json{{"max_weight_minus_envelope", max_drop},
                  {"max_envelope_minus_weight", max_above},
                  {"envelope_convexity_defect", env.convexity_defect()}});
  std::cout << "envelope drop = " << tv::format_real(max_drop) << "\n";
  return 0;
}

int cmd_degree(const tv::ExperimentConfig& cfg, const CommonArgs& args) {
  double deg = tv::arithmetic_degree(cfg.weight, cfg.tol_quad);
  tv::ToricWeight can = tv::ToricWeight::canonical(cfg.polytope);
  double energy = tv::energy_difference(cfg.weight, can, cfg.tol_quad);
  json report{{"weight", tv::to_json(cfg.weight)},
              {"degree", deg},
              {"energy", energy},
              {"anchor", "canonical=0"},
              {"equilibrium_degree", tv::degree_of_equilibrium(cfg.weight, cfg.tol_quad)}};
  if (cfg.weight.has_closed_form_density() ||
      cfg.weight.kind() == tv::ToricWeight::Kind::Canonical)
    report["degree_via_slopes"] = tv::arithmetic_degree_via_slopes(cfg.weight);
  write_json(args.out_dir, "degree.json", report);
  std::cout << "degree = " << tv::format_real(deg) << "\n";
  return 0;
}

int cmd_hodge(const tv::ExperimentConfig& cfg, const CommonArgs& args) {
  tv::ScanOptions opts;
  opts.gram_eps = cfg.tol_gram;
  opts.jobs = args.jobs;
  if (cfg.polytope.dim() == 1) opts.u_grid = cfg.u_grid.expand();
  tv::HodgeReport rep =
      tv::hodge_gap(cfg.polytope, cfg.weight, cfg.measure, cfg.k_list, opts);
  write_text(args.out_dir, "hodge_scan.csv", tv::scan_csv(rep.scan));
  write_json(args.out_dir, "hodge.json",
             json{{"vol_hat", rep.vol_hat},
                  {"deg_w", rep.deg_w},
                  {"deg_equilibrium", rep.deg_eq},
                  {"gap_semipositive", rep.gap_semipositive},
                  {"gap_hodge", rep.gap_hodge},
                  {"envelope_gap", rep.envelope_gap},
                  {"fit", tv::scan_report_json(rep.scan)["fit"]}});
  std::cout << "vol_hat = " << tv::format_real(rep.vol_hat)
            << ", deg = " << tv::format_real(rep.deg_w)
            << ", hodge gap = " << tv::format_real(rep.gap_hodge) << "\n";
  return 0;
}

int cmd_verify(const CommonArgs& args, const std::string& suite) {
  tv::VerifyOptions opts;
  opts.seed = args.seed;
  opts.jobs = args.jobs;
  std::vector<tv::CheckResult> results = tv::verify_suite(suite, opts);
  std::string text;
  bool all_pass = true;
  json jr = json::array();
  for (const auto& r : results) {
    std::string line = std::string(r.pass ? "PASS" : "FAIL") + " " + r.name +
                       " margin=" + tv::format_real(r.margin) + " | " + r.detail;
    std::cout << line << "\n";
    text += line + "\n";
    jr.push_back(json{{"name", r.name},
                      {"pass", r.pass},
                      {"margin", r.margin},
                      {"detail", r.detail}});
    all_pass = all_pass && r.pass;
  }
  std::string summary = all_pass ? "VERIFY PASS" : "VERIFY FAIL";
  std::cout << summary << " (" << results.size() << " checks, suite " << suite
            << ", seed " << args.seed << ")\n";
  text += summary + "\n";
  write_text(args.out_dir, "verify_" + suite + ".txt", text);
  write_json(args.out_dir, "verify_" + suite + ".json",
             json{{"suite", suite}, {"seed", args.seed}, {"checks", jr},
                  {"pass", all_pass}});
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"theta invariants, distortion functions, and arithmetic volumes "
               "of toric models"};
  app.require_subcommand(1);
  CommonArgs args;
  app.add_option("--jobs", args.jobs, "worker threads for scans")->capture_default_str();

  auto add_common = [&](CLI::App* sub, bool needs_config) {
    auto* opt = sub->add_option("--config", args.config_path, "experiment config (JSON)");
    if (needs_config) opt->required();
    sub->add_option("--out", args.out_dir, "output directory")->capture_default_str();
    sub->add_option("--seed", args.seed, "seed for randomized suites")
        ->capture_default_str();
  };

  CLI::App* lattice = app.add_subcommand("lattice", "euclidean lattice invariants");
  add_common(lattice, false);

  int k_arg = 0;
  CLI::App* count = app.add_subcommand("count", "lattice point counts of dilations");
  add_common(count, true);
  CLI::App* gram = app.add_subcommand("gram", "diagonal Gram matrix of the section basis");
  add_common(gram, true);
  gram->add_option("--k", k_arg, "tensor power");
  CLI::App* rho_cmd = app.add_subcommand("rho", "Bergman distortion on the u grid");
  add_common(rho_cmd, true);
  rho_cmd->add_option("--k", k_arg, "tensor power");
  CLI::App* theta_cmd =
      app.add_subcommand("theta-distortion", "theta distortion on the (u, t) grid");
  add_common(theta_cmd, true);
  theta_cmd->add_option("--k", k_arg, "tensor power");
  CLI::App* vscan = app.add_subcommand("volume-scan", "theta-volume scan over k");
  add_common(vscan, true);
  CLI::App* cscan = app.add_subcommand("chi-scan", "chi-volume scan over k");
  add_common(cscan, true);
  CLI::App* equil = app.add_subcommand("equilibrium", "equilibrium weight and conjugate");
  add_common(equil, true);
  CLI::App* degree = app.add_subcommand("degree", "arithmetic degree report");
  add_common(degree, true);
  CLI::App* hodge = app.add_subcommand("hodge", "volume vs degree comparison");
  add_common(hodge, true);

  std::string suite = "all";
  CLI::App* verify = app.add_subcommand("verify", "run the named acceptance suite");
  add_common(verify, false);
  verify->add_option("--suite", suite, "lattice|toric|bergman|equilibrium|degree|hodge|all")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (lattice->parsed()) return cmd_lattice(args);
    if (verify->parsed()) return cmd_verify(args, suite);
    tv::ExperimentConfig cfg = tv::ExperimentConfig::load(args.config_path);
    if (args.jobs <= 0) throw tv::ConfigError("--jobs must be positive");
    if (count->parsed()) return cmd_count(cfg, args);
    if (gram->parsed()) return cmd_gram(cfg, args, k_arg);
    if (rho_cmd->parsed()) return cmd_rho(cfg, args, k_arg, false);
    if (theta_cmd->parsed()) return cmd_rho(cfg, args, k_arg, true);
    if (vscan->parsed()) return cmd_scan(cfg, args, false);
    if (cscan->parsed()) return cmd_scan(cfg, args, true);
    if (equil->parsed()) return cmd_equilibrium(cfg, args);
    if (degree->parsed()) return cmd_degree(cfg, args);
    if (hodge->parsed()) return cmd_hodge(cfg, args);
  } catch (const tv::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const tv::ComputeError& e) {
    std::cerr << "compute error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
