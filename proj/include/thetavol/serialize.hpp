#ifndef THETAVOL_SERIALIZE_HPP
#define THETAVOL_SERIALIZE_HPP

#include <json.hpp>
#include <string>

#include "thetavol/lattice.hpp"
#include "thetavol/legendre_fenchel.hpp"
#include "thetavol/measures.hpp"
#include "thetavol/polytope.hpp"
#include "thetavol/sections.hpp"
#include "thetavol/weights.hpp"

namespace thetavol {

using json = nlohmann::json;

// Lattice:      {"rank": N, "gram": [[...], ...]}
// Polytope:     {"dim": n, "vertices": [[...], ...]}
// Weight:       {"polytope": ..., "kind": "canonical" | "monomial_exp" |
//                "shifted" | "grid", ...kind fields...}
// Measure:      {"atoms": [{"location": [...], "weight": w}, ...],
//                "density": null | {"kind": "monge_ampere", "weight": ...}}
// GridFunction: {"nodes": [...], "values": [...], "side": "u" | "p"}
json to_json(const EuclideanLattice& L);
EuclideanLattice lattice_from_json(const json& j);

json to_json(const LatticePolytope& P);
LatticePolytope polytope_from_json(const json& j);

json to_json(const ToricWeight& w);
ToricWeight weight_from_json(const json& j);

json to_json(const RadialMeasure& mu);
// Accepts both the mirror form above and the shorthand
// {"kind": "haar"} / {"kind": "monge_ampere", "weight": ...}.
RadialMeasure measure_from_json(const json& j, const LatticePolytope* fallback = nullptr);

json to_json(const GridFunction& f);
GridFunction grid_function_from_json(const json& j);

// 17-significant-digit rendering used by every CSV artifact ('.' decimal
// separator, '\n' line endings).
std::string format_real(double x);

// CSV table with the frozen header
// k,N_k,h0_theta,chi_hat,v_k,chi_k,sup_rho,theta_over_rho_max
std::string scan_csv(const VolumeScan& scan);
json scan_report_json(const VolumeScan& scan);

struct UGridSpec {
  double min = -5.0;
  double max = 5.0;
  int points = 41;
  std::vector<double> expand() const;
};

// One experiment: a toric model plus scan parameters.
struct ExperimentConfig {
  LatticePolytope polytope;
  ToricWeight weight;
  RadialMeasure measure;
  std::vector<int> k_list;
  std::vector<double> t_list;
  UGridSpec u_grid;
  double tol_gram = 1e-10;
  double tol_quad = 1e-9;
  std::uint64_t seed = 7;
  int jobs = 1;

  static ExperimentConfig from_json(const json& j);
  static ExperimentConfig load(const std::string& path);
};

}  // namespace thetavol

#endif
