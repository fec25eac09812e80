#include "thetavol/serialize.hpp"

#include <cstdio>
#include <fstream>

namespace thetavol {

json to_json(const EuclideanLattice& L) {
  json gram = json::array();
  for (int i = 0; i < L.rank(); ++i) {
    json row = json::array();
    for (int j = 0; j < L.rank(); ++j) row.push_back(L.gram(i, j));
    gram.push_back(std::move(row));
  }
  return json{{"rank", L.rank()}, {"gram", std::move(gram)}};
}

EuclideanLattice lattice_from_json(const json& j) {
  if (!j.contains("rank") || !j.contains("gram"))
    throw ConfigError("lattice JSON needs 'rank' and 'gram'");
  int n = j.at("rank").get<int>();
  const json& g = j.at("gram");
  if (static_cast<int>(g.size()) != n) throw ConfigError("gram row count mismatch");
  Eigen::MatrixXd gram(n, n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(g[i].size()) != n)
      throw ConfigError("gram column count mismatch");
    for (int k = 0; k < n; ++k) gram(i, k) = g[i][k].get<double>();
  }
  try {
    return make_lattice(std::move(gram));
  } catch (const ComputeError& e) {
    throw ConfigError(std::string("invalid lattice: ") + e.what());
  }
}

json to_json(const LatticePolytope& P) {
  json verts = json::array();
  for (const auto& v : P.vertices()) {
    if (P.dim() == 1)
      verts.push_back(json::array({v[0]}));
    else
      verts.push_back(json::array({v[0], v[1]}));
  }
  return json{{"dim", P.dim()}, {"vertices", std::move(verts)}};
}

LatticePolytope polytope_from_json(const json& j) {
  int dim = j.at("dim").get<int>();
  const json& verts = j.at("vertices");
  try {
    if (dim == 1) {
      if (verts.size() != 2) throw ConfigError("segment needs two vertices");
      return LatticePolytope::segment(verts[0][0].get<long long>(),
                                      verts[1][0].get<long long>());
    }
    if (dim == 2) {
      std::vector<LatticePoint> pts;
      for (const auto& v : verts)
        pts.push_back({v[0].get<long long>(), v[1].get<long long>()});
      return LatticePolytope::polygon(std::move(pts));
    }
  } catch (const ComputeError& e) {
    throw ConfigError(std::string("invalid polytope: ") + e.what());
  }
  throw ConfigError("polytope dimension must be 1 or 2");
}

json to_json(const ToricWeight& w) {
  json j;
  j["polytope"] = to_json(w.polytope());
  switch (w.kind()) {
    case ToricWeight::Kind::Canonical:
      j["kind"] = "canonical";
      break;
    case ToricWeight::Kind::MonomialExp: {
      j["kind"] = "monomial_exp";
      json exps = json::array();
      for (const auto& e : w.exponents()) {
        if (w.dim() == 1)
          exps.push_back(json::array({e[0]}));
        else
          exps.push_back(json::array({e[0], e[1]}));
      }
      j["exponents"] = std::move(exps);
      j["coefficients"] = w.coefficients();
      break;
    }
    case ToricWeight::Kind::Shifted:
      j["kind"] = "shifted";
      j["base"] = to_json(w.shift_base());
      j["c"] = w.total_shift();
      break;
    case ToricWeight::Kind::Grid:
      j["kind"] = "grid";
      j["nodes"] = w.grid_nodes();
      j["values"] = w.grid_values();
      break;
    case ToricWeight::Kind::Blend:
      j["kind"] = "blend";
      j["w0"] = to_json(w.blend_w0());
      j["w1"] = to_json(w.blend_w1());
      j["s"] = w.blend_s();
      break;
  }
  return j;
}

ToricWeight weight_from_json(const json& j) {
  LatticePolytope P = polytope_from_json(j.at("polytope"));
  std::string kind = j.at("kind").get<std::string>();
  try {
    if (kind == "canonical") return ToricWeight::canonical(std::move(P));
    if (kind == "fubini_study") return ToricWeight::fubini_study(std::move(P));
    if (kind == "monomial_exp") {
      std::vector<LatticePoint> exps;
      for (const auto& e : j.at("exponents")) {
        LatticePoint p{e[0].get<long long>(), 0};
        if (e.size() > 1) p[1] = e[1].get<long long>();
        exps.push_back(p);
      }
      std::vector<double> coeffs = j.at("coefficients").get<std::vector<double>>();
      return ToricWeight::monomial_exp(std::move(P), std::move(exps), std::move(coeffs));
    }
    if (kind == "shifted")
      return ToricWeight::shifted(weight_from_json(j.at("base")),
                                  j.at("c").get<double>());
    if (kind == "grid")
      return ToricWeight::grid(std::move(P), j.at("nodes").get<std::vector<double>>(),
                               j.at("values").get<std::vector<double>>());
    if (kind == "blend")
      return ToricWeight::blend(weight_from_json(j.at("w0")),
                                weight_from_json(j.at("w1")), j.at("s").get<double>());
  } catch (const ComputeError& e) {
    throw ConfigError(std::string("invalid weight: ") + e.what());
  }
  throw ConfigError("unknown weight kind '" + kind + "'");
}

json to_json(const RadialMeasure& mu) {
  json atoms = json::array();
  for (const auto& a : mu.atoms())
    atoms.push_back(json{{"location", a.location}, {"weight", a.weight}});
  json j{{"atoms", std::move(atoms)}};
  if (mu.density_weight())
    j["density"] = json{{"kind", "monge_ampere"}, {"weight", to_json(*mu.density_weight())}};
  else
    j["density"] = nullptr;
  return j;
}

RadialMeasure measure_from_json(const json& j, const LatticePolytope* fallback) {
  try {
    if (j.contains("kind")) {
      std::string kind = j.at("kind").get<std::string>();
      if (kind == "haar") {
        int dim = j.contains("dim") ? j.at("dim").get<int>()
                                    : (fallback ? fallback->dim() : 1);
        return RadialMeasure::haar(dim);
      }
      if (kind == "monge_ampere") return ma_measure(weight_from_json(j.at("weight")));
      throw ConfigError("unknown measure kind '" + kind + "'");
    }
    if (j.contains("density") && !j.at("density").is_null())
      return ma_measure(weight_from_json(j.at("density").at("weight")));
    if (j.contains("atoms")) {
      const json& atoms = j.at("atoms");
      if (atoms.size() == 1) {
        auto loc = atoms[0].at("location").get<std::vector<double>>();
        bool origin = true;
        for (double x : loc) origin = origin && x == 0.0;
        if (origin && std::abs(atoms[0].at("weight").get<double>() - 1.0) < 1e-12)
          return RadialMeasure::haar(static_cast<int>(loc.size()));
      }
      throw ConfigError("only the Haar atom and Monge-Ampere measures are supported");
    }
  } catch (const ComputeError& e) {
    throw ConfigError(std::string("invalid measure: ") + e.what());
  }
  throw ConfigError("unrecognized measure JSON");
}

json to_json(const GridFunction& f) {
  return json{{"nodes", f.nodes},
              {"values", f.values},
              {"side", f.side == GridSide::U ? "u" : "p"}};
}

GridFunction grid_function_from_json(const json& j) {
  GridFunction f;
  f.nodes = j.at("nodes").get<std::vector<double>>();
  f.values = j.at("values").get<std::vector<double>>();
  std::string side = j.at("side").get<std::string>();
  if (side != "u" && side != "p") throw ConfigError("grid side must be 'u' or 'p'");
  f.side = (side == "u") ? GridSide::U : GridSide::P;
  return f;
}

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string scan_csv(const VolumeScan& scan) {
  std::string out = "k,N_k,h0_theta,chi_hat,v_k,chi_k,sup_rho,theta_over_rho_max\n";
  for (const auto& row : scan.rows) {
    out += std::to_string(row.k) + "," + std::to_string(row.N_k) + "," +
           format_real(row.h0_theta) + "," + format_real(row.chi_hat) + "," +
           format_real(row.v_k) + "," + format_real(row.chi_k) + "," +
           format_real(row.sup_rho) + "," + format_real(row.theta_over_rho_max) + "\n";
  }
  return out;
}

json scan_report_json(const VolumeScan& scan) {
  json rows = json::array();
  for (const auto& row : scan.rows)
    rows.push_back(json{{"k", row.k},
                        {"N_k", row.N_k},
                        {"h0_theta", row.h0_theta},
                        {"chi_hat", row.chi_hat},
                        {"v_k", row.v_k},
                        {"chi_k", row.chi_k},
                        {"sup_rho", row.sup_rho},
                        {"theta_over_rho_max", row.theta_over_rho_max}});
  json fit{{"model", "v_inf + a/k + b/k^2"},
           {"points_used", scan.fit.points_used},
           {"v_infinity", scan.fit.v_infinity},
           {"v_slope", scan.fit.v_slope},
           {"v_curvature", scan.fit.v_curv},
           {"chi_infinity", scan.fit.chi_infinity},
           {"chi_slope", scan.fit.chi_slope},
           {"chi_curvature", scan.fit.chi_curv}};
  return json{{"rows", std::move(rows)}, {"fit", std::move(fit)}};
}

std::vector<double> UGridSpec::expand() const {
  if (points < 2 || !(max > min)) throw ConfigError("u_grid needs points >= 2 and max > min");
  std::vector<double> g(points);
  for (int i = 0; i < points; ++i)
    g[i] = min + (max - min) * static_cast<double>(i) / (points - 1);
  return g;
}

ExperimentConfig ExperimentConfig::from_json(const json& j) {
  if (!j.contains("model")) throw ConfigError("config needs a 'model' section");
  const json& model = j.at("model");
  LatticePolytope P = polytope_from_json(model.at("polytope"));
  ToricWeight w = model.contains("weight") ? weight_from_json(model.at("weight"))
                                           : ToricWeight::canonical(P);
  RadialMeasure mu = model.contains("measure")
                         ? measure_from_json(model.at("measure"), &P)
                         : RadialMeasure::haar(P.dim());
  ExperimentConfig cfg{std::move(P), std::move(w), std::move(mu), {}, {}, {},
                       1e-10,        1e-9,         7,             1};
  if (!(cfg.weight.polytope() == cfg.polytope))
    throw ConfigError("weight polytope does not match the model polytope");
  if (cfg.measure.density_weight() &&
      !(cfg.measure.density_weight()->polytope() == cfg.polytope))
    throw ConfigError("measure polytope does not match the model polytope");
  if (j.contains("scan")) {
    const json& scan = j.at("scan");
    if (scan.contains("k_list")) cfg.k_list = scan.at("k_list").get<std::vector<int>>();
    if (scan.contains("t_list"))
      cfg.t_list = scan.at("t_list").get<std::vector<double>>();
    if (scan.contains("u_grid")) {
      const json& g = scan.at("u_grid");
      cfg.u_grid.min = g.value("min", -5.0);
      cfg.u_grid.max = g.value("max", 5.0);
      cfg.u_grid.points = g.value("points", 41);
    }
  }
  if (cfg.k_list.empty()) cfg.k_list = {1, 2, 3, 4, 5, 6, 8, 10, 12, 16, 20};
  for (std::size_t i = 0; i + 1 < cfg.k_list.size(); ++i)
    if (!(cfg.k_list[i] < cfg.k_list[i + 1]))
      throw ConfigError("k_list must be strictly increasing");
  if (cfg.k_list.front() < 1) throw ConfigError("k_list entries must be >= 1");
  if (cfg.t_list.empty()) cfg.t_list = {0.5, 1.0, 2.0, 4.0};
  for (double t : cfg.t_list)
    if (!(t > 0.0)) throw ConfigError("t_list entries must be positive");
  if (j.contains("tolerances")) {
    const json& tol = j.at("tolerances");
    cfg.tol_gram = tol.value("gram", 1e-10);
    cfg.tol_quad = tol.value("quadrature", 1e-9);
    if (!(cfg.tol_gram > 0.0) || !(cfg.tol_quad > 0.0))
      throw ConfigError("tolerances must be positive");
  }
  cfg.seed = j.value("seed", 7);
  cfg.jobs = j.value("jobs", 1);
  return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  return from_json(j);
}

}  // namespace thetavol
