#ifndef THETAVOL_ENERGY_HPP
#define THETAVOL_ENERGY_HPP

#include <span>

#include "thetavol/legendre_fenchel.hpp"
#include "thetavol/measures.hpp"
#include "thetavol/sections.hpp"
#include "thetavol/weights.hpp"

namespace thetavol {

// Monge-Ampere energy difference on a toric curve:
//   E(w1) - E(w0) = 1/2 [ int (psi1 - psi0) dMA(psi0) + int (psi1 - psi0) dMA(psi1) ]
// with the unnormalized currents (each of total mass vol).
double energy_difference(const ToricWeight& w1, const ToricWeight& w0,
                         double eps = 1e-9);

// Arithmetic self-intersection degree anchored at the canonical metric:
// deg(w) = (n+1) * (E(w) - E(canonical)); the canonical weight has degree 0.
double arithmetic_degree(const ToricWeight& w, double eps = 1e-9);

// Independent evaluation through the conjugate-slope substitution: the
// Monge-Ampere integral against the smooth weight becomes a plain integral
// over the polytope in the slope variable.  Valid for convex catalog weights.
double arithmetic_degree_via_slopes(const ToricWeight& w,
                                    const EnvelopeGrid& grid = {});

ToricWeight weight_from_grid(const GridFunction& u_side, const LatticePolytope& P);

double degree_of_equilibrium(const ToricWeight& w, double eps = 1e-9,
                             const EnvelopeGrid& grid = {});

struct HodgeReport {
  VolumeScan scan;
  double vol_hat = 0.0;        // extrapolated arithmetic volume
  double deg_w = 0.0;          // degree of the weight itself
  double deg_eq = 0.0;         // degree of its equilibrium envelope
  double gap_semipositive = 0.0;  // vol_hat - deg_eq (vanishes for semipositive w)
  double gap_hodge = 0.0;         // vol_hat - deg_w  (>= 0 by the index inequality)
  double envelope_gap = 0.0;      // deg_eq - deg_w
};

HodgeReport hodge_gap(const LatticePolytope& P, const ToricWeight& w,
                      const RadialMeasure& mu, std::span<const int> k_list,
                      const ScanOptions& opts = {});

}  // namespace thetavol

#endif
