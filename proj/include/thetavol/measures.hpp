#ifndef THETAVOL_MEASURES_HPP
#define THETAVOL_MEASURES_HPP

#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "thetavol/weights.hpp"

namespace thetavol {

// Certified decay for a one-dimensional density: g(u) <= exp(log_amp - rate|u|)
// for |u| >= box_halfwidth.
struct DecayEnvelope {
  double rate = 0.0;
  double log_amp = 0.0;
  double box_halfwidth = 0.0;
};

// Torus-invariant probability measure pushed to log coordinates: finitely many
// atoms plus (in dimension one) a density with a certified decay envelope.
// Densities in the catalog are Monge-Ampere densities of smooth weights, and
// the generating weight is kept for serialization.
class RadialMeasure {
 public:
  struct Atom {
    std::vector<double> location;
    double weight;
  };

  static RadialMeasure haar(int dim);

  int dim() const { return dim_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  bool has_density() const { return static_cast<bool>(density_); }
  double density_at(double u) const;
  const DecayEnvelope& envelope() const;
  const std::optional<ToricWeight>& density_weight() const { return density_weight_; }

  // checked against 1 within 1e-10 by the validation suite
  double total_mass(double eps = 1e-10) const;

  friend RadialMeasure ma_measure(const ToricWeight& w);

 private:
  int dim_ = 1;
  std::vector<Atom> atoms_;
  std::optional<std::function<double(double)>> density_;
  DecayEnvelope envelope_;
  std::optional<ToricWeight> density_weight_;
};

// Normalized Monge-Ampere measure of a catalog weight (n = 1): the canonical
// weight contributes the Haar atom at the origin, a MonomialExp weight the
// density psi''(u)/vol, and shifts leave the measure unchanged.  Grid weights
// are rejected (WeightNotSmooth).
RadialMeasure ma_measure(const ToricWeight& w);

// Unnormalized curvature of a weight as a signed measure: atoms carry slope
// jumps (piecewise linear weights), the density part is psi''.  Total mass is
// vol(L) = right - left for every catalog weight.
struct MaCurrent {
  std::vector<std::pair<double, double>> atoms;  // (location, signed mass)
  std::function<double(double)> density;         // may be empty
  DecayEnvelope envelope;
};

MaCurrent ma_current(const ToricWeight& w);

// integral of f against the current with absolute tolerance eps
double integrate_current(const std::function<double(double)>& f, const MaCurrent& cur,
                         double eps);

// Atoms evaluated exactly; the density integrated by adaptive Gauss-Legendre
// over a box whose exterior is certified by the decay envelope against the
// declared exponential growth of f.  Throws TailNotDominated when the envelope
// cannot absorb the growth or fails its spot check.
double integrate(const std::function<double(double)>& f, const RadialMeasure& mu,
                 double eps, double f_growth_rate = 0.0,
                 double f_log_amp = std::numeric_limits<double>::quiet_NaN());

}  // namespace thetavol

#endif
