#include "thetavol/weights.hpp"

#include <algorithm>
#include <cmath>

#include "thetavol/numerics.hpp"

namespace thetavol {

struct ToricWeight::Impl {
  Kind kind;
  LatticePolytope polytope;
  // MonomialExp
  std::vector<LatticePoint> exps;
  std::vector<double> coeffs;
  std::vector<double> log_coeffs;
  // Shifted
  std::shared_ptr<const Impl> base;
  double shift = 0.0;
  // Grid
  std::vector<double> nodes, values;
  double left_offset = 0.0, right_offset = 0.0;
  // Blend
  std::shared_ptr<const Impl> w0, w1;
  double s = 0.0;
};

namespace {

using Impl = ToricWeight::Impl;

double eval_impl(const Impl& w, std::span<const double> u);

double eval_monomial(const Impl& w, std::span<const double> u) {
  LogSumAccumulator acc;
  for (std::size_t i = 0; i < w.exps.size(); ++i) {
    double dot = static_cast<double>(w.exps[i][0]) * u[0];
    if (w.polytope.dim() == 2) dot += static_cast<double>(w.exps[i][1]) * u[1];
    acc.add(w.log_coeffs[i] + 2.0 * dot);
  }
  return 0.5 * acc.log_value();
}

double eval_grid(const Impl& w, double u) {
  if (u <= w.nodes.front()) {
    double psi[1] = {u};
    return w.polytope.support(psi) + w.left_offset;
  }
  if (u >= w.nodes.back()) {
    double psi[1] = {u};
    return w.polytope.support(psi) + w.right_offset;
  }
  auto it = std::upper_bound(w.nodes.begin(), w.nodes.end(), u);
  std::size_t j = static_cast<std::size_t>(it - w.nodes.begin());
  double u0 = w.nodes[j - 1], u1 = w.nodes[j];
  double a = (u - u0) / (u1 - u0);
  return (1.0 - a) * w.values[j - 1] + a * w.values[j];
}

double eval_impl(const Impl& w, std::span<const double> u) {
  switch (w.kind) {
    case ToricWeight::Kind::Canonical:
      return w.polytope.support(u);
    case ToricWeight::Kind::MonomialExp:
      return eval_monomial(w, u);
    case ToricWeight::Kind::Shifted:
      return eval_impl(*w.base, u) + w.shift;
    case ToricWeight::Kind::Grid:
      return eval_grid(w, u[0]);
    case ToricWeight::Kind::Blend:
      return (1.0 - w.s) * eval_impl(*w.w0, u) + w.s * eval_impl(*w.w1, u);
  }
  throw ComputeError("unreachable weight kind");
}

// psi' and psi'' of a MonomialExp weight in one variable: with
// p(u) = sum m c_m e^{2 m u} / sum c_m e^{2 m u} the derivatives are
// psi' = p and psi'' = 2 Var(m).
void monomial_moments(const Impl& w, double u, double* mean, double* var) {
  double mx = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < w.exps.size(); ++i)
    mx = std::max(mx, w.log_coeffs[i] + 2.0 * static_cast<double>(w.exps[i][0]) * u);
  double z = 0.0, m1 = 0.0, m2 = 0.0;
  for (std::size_t i = 0; i < w.exps.size(); ++i) {
    double m = static_cast<double>(w.exps[i][0]);
    double e = std::exp(w.log_coeffs[i] + 2.0 * m * u - mx);
    z += e;
    m1 += m * e;
    m2 += m * m * e;
  }
  *mean = m1 / z;
  *var = m2 / z - (m1 / z) * (m1 / z);
}

const Impl& smooth_core(const Impl& w) {
  if (w.kind == ToricWeight::Kind::Shifted) return smooth_core(*w.base);
  return w;
}

}  // namespace

ToricWeight ToricWeight::canonical(LatticePolytope P) {
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::Canonical;
  impl->polytope = std::move(P);
  ToricWeight w;
  w.impl_ = std::move(impl);
  return w;
}

ToricWeight ToricWeight::monomial_exp(LatticePolytope P, std::vector<LatticePoint> exps,
                                      std::vector<double> coeffs) {
  if (exps.size() != coeffs.size() || exps.empty())
    throw ComputeError("monomial_exp: exponents and coefficients must match");
  for (double c : coeffs)
    if (!(c > 0.0)) throw ComputeError("monomial_exp: coefficients must be positive");
  // the convex hull of the support must be the whole polytope
  if (P.dim() == 1) {
    long long lo = exps[0][0], hi = exps[0][0];
    for (const auto& e : exps) {
      lo = std::min(lo, e[0]);
      hi = std::max(hi, e[0]);
    }
    if (lo != P.left() || hi != P.right())
      throw ComputeError("monomial_exp: exponent hull must equal the polytope");
  } else {
    LatticePolytope hull = LatticePolytope::polygon(exps);
    if (!(hull == P))
      throw ComputeError("monomial_exp: exponent hull must equal the polytope");
  }
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::MonomialExp;
  impl->polytope = std::move(P);
  impl->exps = std::move(exps);
  impl->coeffs = std::move(coeffs);
  impl->log_coeffs.reserve(impl->coeffs.size());
  for (double c : impl->coeffs) impl->log_coeffs.push_back(std::log(c));
  ToricWeight w;
  w.impl_ = std::move(impl);
  return w;
}

ToricWeight ToricWeight::fubini_study(LatticePolytope P) {
  SectionSpace S = lattice_points(P, 1);
  std::vector<double> coeffs(S.exponents.size(), 1.0);
  return monomial_exp(std::move(P), S.exponents, std::move(coeffs));
}

ToricWeight ToricWeight::shifted(ToricWeight base, double c) {
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::Shifted;
  impl->polytope = base.polytope();
  impl->base = base.impl_;
  impl->shift = c;
  ToricWeight w;
  w.impl_ = std::move(impl);
  return w;
}

ToricWeight ToricWeight::grid(LatticePolytope P, std::vector<double> nodes,
                              std::vector<double> values) {
  if (P.dim() != 1) throw DimensionUnsupported("grid weights are one-dimensional");
  if (nodes.size() != values.size() || nodes.size() < 2)
    throw ComputeError("grid weight needs at least two nodes");
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
    if (!(nodes[i] < nodes[i + 1]))
      throw ComputeError("grid weight nodes must be strictly increasing");
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::Grid;
  impl->polytope = P;
  double ufront[1] = {nodes.front()}, uback[1] = {nodes.back()};
  impl->left_offset = values.front() - P.support(ufront);
  impl->right_offset = values.back() - P.support(uback);
  impl->nodes = std::move(nodes);
  impl->values = std::move(values);
  ToricWeight w;
  w.impl_ = std::move(impl);
  return w;
}

ToricWeight ToricWeight::blend(ToricWeight w0, ToricWeight w1, double s) {
  if (!(w0.polytope() == w1.polytope()))
    throw ComputeError("blend: weights must share a polytope");
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::Blend;
  impl->polytope = w0.polytope();
  impl->w0 = w0.impl_;
  impl->w1 = w1.impl_;
  impl->s = s;
  ToricWeight w;
  w.impl_ = std::move(impl);
  return w;
}

ToricWeight::Kind ToricWeight::kind() const { return impl_->kind; }
const LatticePolytope& ToricWeight::polytope() const { return impl_->polytope; }
int ToricWeight::dim() const { return impl_->polytope.dim(); }

double ToricWeight::eval(std::span<const double> u) const { return eval_impl(*impl_, u); }

double ToricWeight::eval1(double u) const {
  double uu[1] = {u};
  return eval_impl(*impl_, uu);
}

bool ToricWeight::has_closed_form_density() const {
  const Impl& core = smooth_core(*impl_);
  return dim() == 1 && core.kind == Kind::MonomialExp;
}

double ToricWeight::deriv1(double u) const {
  const Impl& core = smooth_core(*impl_);
  if (core.kind != Kind::MonomialExp)
    throw WeightNotSmooth("derivative needs a MonomialExp core");
  double mean, var;
  monomial_moments(core, u, &mean, &var);
  return mean;
}

double ToricWeight::deriv2(double u) const {
  const Impl& core = smooth_core(*impl_);
  if (core.kind != Kind::MonomialExp)
    throw WeightNotSmooth("derivative needs a MonomialExp core");
  double mean, var;
  monomial_moments(core, u, &mean, &var);
  return 2.0 * var;
}

double ToricWeight::total_shift() const {
  double c = 0.0;
  const Impl* w = impl_.get();
  while (w->kind == Kind::Shifted) {
    c += w->shift;
    w = w->base.get();
  }
  return c;
}

ToricWeight ToricWeight::shift_base() const {
  if (impl_->kind != Kind::Shifted) return *this;
  const Impl* w = impl_.get();
  while (w->kind == Kind::Shifted) w = w->base.get();
  ToricWeight out;
  out.impl_ = std::shared_ptr<const Impl>(impl_, w);
  return out;
}

double ToricWeight::conjugate(double p) const {
  if (dim() != 1) throw DimensionUnsupported("conjugate is one-dimensional");
  // psi is convex and psi - Psi_Delta is bounded, so p u - psi(u) is concave
  // with a maximum in a window that [-60, 60] comfortably covers at desk scale.
  double lo = -60.0, hi = 60.0;
  for (int it = 0; it < 200; ++it) {
    double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
    double f1 = p * m1 - eval1(m1);
    double f2 = p * m2 - eval1(m2);
    if (f1 < f2)
      lo = m1;
    else
      hi = m2;
  }
  double u = 0.5 * (lo + hi);
  double best = p * u - eval1(u);
  best = std::max(best, p * (-60.0) - eval1(-60.0));
  best = std::max(best, p * 60.0 - eval1(60.0));
  return best;
}

const std::vector<LatticePoint>& ToricWeight::exponents() const { return impl_->exps; }
const std::vector<double>& ToricWeight::coefficients() const { return impl_->coeffs; }
const std::vector<double>& ToricWeight::grid_nodes() const { return impl_->nodes; }
const std::vector<double>& ToricWeight::grid_values() const { return impl_->values; }
double ToricWeight::shift_constant() const { return impl_->shift; }

ToricWeight ToricWeight::blend_w0() const {
  ToricWeight out;
  out.impl_ = std::shared_ptr<const Impl>(impl_, impl_->w0.get());
  return out;
}

ToricWeight ToricWeight::blend_w1() const {
  ToricWeight out;
  out.impl_ = std::shared_ptr<const Impl>(impl_, impl_->w1.get());
  return out;
}

double ToricWeight::blend_s() const { return impl_->s; }

}  // namespace thetavol
