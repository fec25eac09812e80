#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "thetavol/serialize.hpp"

using namespace thetavol;

TEST_CASE("lattice json round trip") {
  EuclideanLattice L = random_spd_lattice(4, 8);
  json j = to_json(L);
  CHECK(j.at("rank") == 4);
  EuclideanLattice back = lattice_from_json(j);
  CHECK((back.gram - L.gram).cwiseAbs().maxCoeff() == 0.0);
  CHECK(back.diagonal_hint == L.diagonal_hint);

  json bad = {{"rank", 2}, {"gram", {{1.0, 0.0}}}};
  CHECK_THROWS_AS(lattice_from_json(bad), ConfigError);
  json asym = {{"rank", 2}, {"gram", {{1.0, 0.3}, {0.2, 1.0}}}};
  CHECK_THROWS_AS(lattice_from_json(asym), ConfigError);
}

TEST_CASE("polytope json round trip") {
  LatticePolytope seg = LatticePolytope::segment(-1, 3);
  LatticePolytope seg2 = polytope_from_json(to_json(seg));
  CHECK(seg == seg2);
  LatticePolytope tri = LatticePolytope::polygon({{0, 0}, {2, 0}, {0, 1}});
  CHECK(tri == polytope_from_json(to_json(tri)));
}

TEST_CASE("weight json round trip across kinds") {
  LatticePolytope seg = LatticePolytope::segment(0, 1);
  std::vector<ToricWeight> catalog = {
      ToricWeight::canonical(seg),
      ToricWeight::fubini_study(seg),
      ToricWeight::shifted(ToricWeight::fubini_study(seg), 0.3),
      ToricWeight::grid(seg, {-0.25, 0.0, 0.25}, {0.0, 0.3, 0.25}),
      ToricWeight::blend(ToricWeight::canonical(seg),
                         ToricWeight::fubini_study(seg), 0.4)};
  for (const auto& w : catalog) {
    ToricWeight back = weight_from_json(to_json(w));
    for (double u : {-3.0, -0.2, 0.0, 0.9, 6.0})
      CHECK(back.eval1(u) == doctest::Approx(w.eval1(u)).epsilon(1e-15));
  }
}

TEST_CASE("measure json") {
  LatticePolytope seg = LatticePolytope::segment(0, 1);
  RadialMeasure haar = RadialMeasure::haar(1);
  RadialMeasure haar2 = measure_from_json(to_json(haar));
  CHECK(haar2.atoms().size() == 1);
  CHECK_FALSE(haar2.has_density());

  RadialMeasure mfs = ma_measure(ToricWeight::fubini_study(seg));
  RadialMeasure mfs2 = measure_from_json(to_json(mfs));
  REQUIRE(mfs2.has_density());
  CHECK(mfs2.density_at(0.7) == doctest::Approx(mfs.density_at(0.7)).epsilon(1e-15));

  // shorthand forms
  RadialMeasure h = measure_from_json(json{{"kind", "haar"}, {"dim", 2}});
  CHECK(h.dim() == 2);
  json ma = {{"kind", "monge_ampere"},
             {"weight", to_json(ToricWeight::fubini_study(seg))}};
  CHECK(measure_from_json(ma).has_density());
}

TEST_CASE("grid function json") {
  GridFunction f;
  f.nodes = {0.0, 0.5, 1.0};
  f.values = {1.0, 0.25, 0.0};
  f.side = GridSide::P;
  GridFunction g = grid_function_from_json(to_json(f));
  CHECK(g.side == GridSide::P);
  CHECK(g.nodes == f.nodes);
  CHECK(g.values == f.values);
}

TEST_CASE("real formatting") {
  CHECK(format_real(0.5) == "0.5");
  CHECK(format_real(1.0 / 3.0) == "0.33333333333333331");
  CHECK(format_real(1e-300) == "1.0000000000000001e-300");
}

TEST_CASE("scan csv header is frozen") {
  VolumeScan scan;
  ScanRow row;
  row.k = 2;
  row.N_k = 3;
  row.h0_theta = 0.25;
  scan.rows.push_back(row);
  std::string csv = scan_csv(scan);
  CHECK(csv.rfind("k,N_k,h0_theta,chi_hat,v_k,chi_k,sup_rho,theta_over_rho_max\n",
                  0) == 0);
  CHECK(csv.find("2,3,0.25,0,0,0,0,0\n") != std::string::npos);
}

TEST_CASE("experiment config validation") {
  LatticePolytope seg = LatticePolytope::segment(0, 1);
  json model = {{"polytope", to_json(seg)},
                {"weight", to_json(ToricWeight::fubini_study(seg))},
                {"measure", json{{"kind", "haar"}}}};
  json good = {{"model", model}, {"scan", {{"k_list", {1, 2, 4}}}}};
  ExperimentConfig cfg = ExperimentConfig::from_json(good);
  CHECK(cfg.k_list == std::vector<int>{1, 2, 4});
  CHECK(cfg.t_list.size() == 4);  // defaults

  CHECK_THROWS_AS(ExperimentConfig::from_json(json{{"scan", json::object()}}),
                  ConfigError);
  json bad_k = good;
  bad_k["scan"]["k_list"] = {4, 2};
  CHECK_THROWS_AS(ExperimentConfig::from_json(bad_k), ConfigError);
  json bad_t = good;
  bad_t["scan"]["t_list"] = {0.5, -1.0};
  CHECK_THROWS_AS(ExperimentConfig::from_json(bad_t), ConfigError);
  json bad_tol = good;
  bad_tol["tolerances"] = {{"gram", -1.0}};
  CHECK_THROWS_AS(ExperimentConfig::from_json(bad_tol), ConfigError);

  // mismatched polytopes between weight and model
  json mismatch = good;
  mismatch["model"]["weight"] =
      to_json(ToricWeight::canonical(LatticePolytope::segment(0, 2)));
  CHECK_THROWS_AS(ExperimentConfig::from_json(mismatch), ConfigError);
}
