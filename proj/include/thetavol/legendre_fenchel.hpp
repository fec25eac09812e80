#ifndef THETAVOL_LEGENDRE_FENCHEL_HPP
#define THETAVOL_LEGENDRE_FENCHEL_HPP

#include <functional>
#include <vector>

#include "thetavol/weights.hpp"

namespace thetavol {

enum class GridSide { U, P };

// Sampled function of one variable, either on the log-coordinate side (u) or
// on the polytope side (p).
struct GridFunction {
  std::vector<double> nodes;
  std::vector<double> values;
  GridSide side = GridSide::U;

  // largest negative second difference (0 when convex)
  double convexity_defect() const;
  bool is_convex(double tol = 1e-10) const { return convexity_defect() <= tol; }
  double interpolate(double x) const;
};

// Discrete Legendre transform sup_x (y x - f(x)) evaluated on the target
// nodes via the upper hull of the sample points; O(N log N).  Throws
// SlopeRangeTooNarrow when the sampled slopes do not bracket the target range.
GridFunction legendre(const GridFunction& f, std::vector<double> target_nodes);
GridFunction legendre(const GridFunction& f, const LatticePolytope& P,
                      int p_nodes = 4096);

// Default sampling grids: a dense symmetric core where catalog weights carry
// their curvature, coarser wings out to the box ends.
struct EnvelopeGrid {
  double u_min = -30.0;
  double u_max = 30.0;
  int u_nodes = 8192;
  double inner_halfwidth = 8.0;
  int p_nodes = 4096;
};

std::vector<double> make_u_nodes(const EnvelopeGrid& grid);
GridFunction sample_weight(const ToricWeight& w, const EnvelopeGrid& grid = {});

// Equilibrium weight P_X psi = (psi^*|_Delta)^*, computed exactly on the
// sample grid as the convex hull of the samples with slopes clamped to the
// polytope.  Idempotent, below the input, equal to it for convex inputs with
// slopes in Delta.
GridFunction equilibrium_weight(const ToricWeight& w, const EnvelopeGrid& grid = {});

// int f dmu_eq through the slope measure of the conjugate: the normalized
// Monge-Ampere mass of the envelope pushes forward to (1/vol) f((psi^*)'(p)) dp
// on Delta, evaluated exactly for the piecewise-linear conjugate.
double equilibrium_measure_integral(const ToricWeight& w,
                                    const std::function<double(double)>& f,
                                    const EnvelopeGrid& grid = {});

}  // namespace thetavol

#endif
