#include "thetavol/energy.hpp"

#include <cmath>

namespace thetavol {

double energy_difference(const ToricWeight& w1, const ToricWeight& w0, double eps) {
  if (w1.dim() != 1 || w0.dim() != 1)
    throw DimensionUnsupported("energy_difference is one-dimensional");
  if (!(w1.polytope() == w0.polytope()))
    throw ComputeError("energy_difference: weights must share a polytope");
  auto diff = [&](double u) { return w1.eval1(u) - w0.eval1(u); };
  MaCurrent c0 = ma_current(w0);
  MaCurrent c1 = ma_current(w1);
  return 0.5 * (integrate_current(diff, c0, eps) + integrate_current(diff, c1, eps));
}

double arithmetic_degree(const ToricWeight& w, double eps) {
  if (w.dim() != 1) throw DimensionUnsupported("arithmetic_degree is one-dimensional");
  int n = 1;
  ToricWeight can = ToricWeight::canonical(w.polytope());
  if (w.kind() == ToricWeight::Kind::Canonical) return 0.0;
  return (n + 1) * energy_difference(w, can, eps);
}

double arithmetic_degree_via_slopes(const ToricWeight& w, const EnvelopeGrid& grid) {
  if (w.dim() != 1) throw DimensionUnsupported("arithmetic_degree is one-dimensional");
  const LatticePolytope& P = w.polytope();
  double vol = geometric_volume(P);
  auto excess = [&](double u) {
    double uu[1] = {u};
    return w.eval1(u) - P.support(uu);
  };
  // int (psi - Psi) dMA(canonical) is the atom at the origin; the MA(psi)
  // integral becomes int_Delta (psi - Psi)((psi^*)'(p)) dp by substitution.
  double canonical_part = excess(0.0) * vol;
  double slope_part = vol * equilibrium_measure_integral(w, excess, grid);
  return canonical_part + slope_part;
}

ToricWeight weight_from_grid(const GridFunction& u_side, const LatticePolytope& P) {
  if (u_side.side != GridSide::U)
    throw ComputeError("weight_from_grid expects a u-side grid function");
  return ToricWeight::grid(P, u_side.nodes, u_side.values);
}

double degree_of_equilibrium(const ToricWeight& w, double eps,
                             const EnvelopeGrid& grid) {
  GridFunction env = equilibrium_weight(w, grid);
  return arithmetic_degree(weight_from_grid(env, w.polytope()), eps);
}

HodgeReport hodge_gap(const LatticePolytope& P, const ToricWeight& w,
                      const RadialMeasure& mu, std::span<const int> k_list,
                      const ScanOptions& opts) {
  HodgeReport rep;
  rep.scan = volume_scan(P, w, mu, k_list, opts);
  rep.vol_hat = rep.scan.fit.v_infinity;
  rep.deg_w = arithmetic_degree(w);
  rep.deg_eq = degree_of_equilibrium(w);
  rep.gap_semipositive = rep.vol_hat - rep.deg_eq;
  rep.gap_hodge = rep.vol_hat - rep.deg_w;
  rep.envelope_gap = rep.deg_eq - rep.deg_w;
  return rep;
}

}  // namespace thetavol
