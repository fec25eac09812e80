#ifndef THETAVOL_WEIGHTS_HPP
#define THETAVOL_WEIGHTS_HPP

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "thetavol/polytope.hpp"

namespace thetavol {

// Torus-invariant metric weight in log coordinates.  The metric convention is
// |s|_psi = |s| e^{-psi}; the canonical weight is the support function of the
// polytope, and every catalog weight stays within a bounded distance of it.
//
//   Canonical     psi(u) = Psi_Delta(u)
//   MonomialExp   psi(u) = (1/2) log sum_m c_m e^{2 <m,u>}   (c_m > 0, hull of
//                 the exponents equal to Delta)
//   Shifted       psi(u) = base(u) + c            (the metric scaled by e^{-c})
//   Grid          piecewise linear on stored nodes, Psi_Delta plus a boundary
//                 offset outside the sampled box (n = 1 only)
//   Blend         (1-s) w0 + s w1   (affine path between two weights)
class ToricWeight {
 public:
  enum class Kind { Canonical, MonomialExp, Shifted, Grid, Blend };

  static ToricWeight canonical(LatticePolytope P);
  static ToricWeight monomial_exp(LatticePolytope P, std::vector<LatticePoint> exps,
                                  std::vector<double> coeffs);
  // Fubini-Study type weight: all coefficients 1 on every lattice point of Delta.
  static ToricWeight fubini_study(LatticePolytope P);
  static ToricWeight shifted(ToricWeight base, double c);
  static ToricWeight grid(LatticePolytope P, std::vector<double> nodes,
                          std::vector<double> values);
  static ToricWeight blend(ToricWeight w0, ToricWeight w1, double s);

  Kind kind() const;
  const LatticePolytope& polytope() const;
  int dim() const;

  double eval(std::span<const double> u) const;
  double eval1(double u) const;  // n = 1 convenience

  // Smooth catalog (MonomialExp and shifts of it, n = 1): closed-form
  // derivatives of psi.
  bool has_closed_form_density() const;
  double deriv1(double u) const;
  double deriv2(double u) const;

  // Total constant accumulated through Shifted wrappers, and the fully
  // unwrapped base weight.
  double total_shift() const;
  ToricWeight shift_base() const;

  // sup_u (p u - psi(u)) over the real line, for p in [left, right] of the
  // polytope; finite for every catalog weight.  n = 1 only.
  double conjugate(double p) const;

  // MonomialExp access (for serialization)
  const std::vector<LatticePoint>& exponents() const;
  const std::vector<double>& coefficients() const;
  // Grid access
  const std::vector<double>& grid_nodes() const;
  const std::vector<double>& grid_values() const;
  // Shifted / Blend access
  double shift_constant() const;
  ToricWeight blend_w0() const;
  ToricWeight blend_w1() const;
  double blend_s() const;

  struct Impl;

 private:
  std::shared_ptr<const Impl> impl_;
};

}  // namespace thetavol

#endif
