#include "thetavol/measures.hpp"

#include <algorithm>
#include <cmath>

#include "thetavol/numerics.hpp"

namespace thetavol {

namespace {

// Decay rate of a MonomialExp Monge-Ampere density: the variance of the
// exponent distribution dies off like e^{-2 gap |u|} with gap the spectral
// gap at the corresponding end of the support.
DecayEnvelope monomial_envelope(const ToricWeight& w, double scale) {
  std::vector<long long> ms;
  for (const auto& e : w.shift_base().exponents()) ms.push_back(e[0]);
  std::sort(ms.begin(), ms.end());
  ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
  if (ms.size() < 2) throw WeightNotSmooth("degenerate monomial support");
  double gap_low = static_cast<double>(ms[1] - ms[0]);
  double gap_high = static_cast<double>(ms[ms.size() - 1] - ms[ms.size() - 2]);
  DecayEnvelope env;
  env.rate = 2.0 * std::min(gap_low, gap_high);
  env.box_halfwidth = 10.0;
  double amp = -std::numeric_limits<double>::infinity();
  for (double u : {-25.0, -18.0, -12.0, -10.0, 10.0, 12.0, 18.0, 25.0}) {
    double g = scale * w.deriv2(u);
    if (g > 0.0) amp = std::max(amp, std::log(g) + env.rate * std::abs(u));
  }
  env.log_amp = amp + 0.7;  // headroom over the sampled calibration
  return env;
}

void check_envelope(const std::function<double(double)>& g, const DecayEnvelope& env) {
  for (double f : {1.0, 1.3, 1.8, 2.5}) {
    for (double sgn : {-1.0, 1.0}) {
      double u = sgn * env.box_halfwidth * f;
      double bound = std::exp(env.log_amp - env.rate * std::abs(u));
      if (g(u) > bound * (1.0 + 1e-9))
        throw TailNotDominated("density exceeds its declared decay envelope");
    }
  }
}

}  // namespace

RadialMeasure RadialMeasure::haar(int dim) {
  RadialMeasure mu;
  mu.dim_ = dim;
  mu.atoms_.push_back({std::vector<double>(dim, 0.0), 1.0});
  return mu;
}

double RadialMeasure::density_at(double u) const {
  if (!density_) return 0.0;
  return (*density_)(u);
}

const DecayEnvelope& RadialMeasure::envelope() const { return envelope_; }

double RadialMeasure::total_mass(double eps) const {
  if (density_) return integrate([](double) { return 1.0; }, *this, eps);
  double m = 0.0;
  for (const auto& a : atoms_) m += a.weight;
  return m;
}

RadialMeasure ma_measure(const ToricWeight& w) {
  if (w.dim() != 1)
    throw DimensionUnsupported("ma_measure: densities are one-dimensional");
  ToricWeight core = w.shift_base();
  RadialMeasure mu;
  mu.dim_ = 1;
  switch (core.kind()) {
    case ToricWeight::Kind::Canonical:
      mu.atoms_.push_back({{0.0}, 1.0});
      return mu;
    case ToricWeight::Kind::MonomialExp: {
      double vol = geometric_volume(w.polytope());
      mu.density_ = [core, vol](double u) { return core.deriv2(u) / vol; };
      mu.envelope_ = monomial_envelope(core, 1.0 / vol);
      mu.density_weight_ = core;
      check_envelope(*mu.density_, mu.envelope_);
      return mu;
    }
    default:
      throw WeightNotSmooth("ma_measure needs a canonical or smooth weight");
  }
}

MaCurrent ma_current(const ToricWeight& w) {
  if (w.dim() != 1) throw DimensionUnsupported("ma_current is one-dimensional");
  const LatticePolytope& P = w.polytope();
  double a = static_cast<double>(P.left()), b = static_cast<double>(P.right());
  ToricWeight core = w.shift_base();
  MaCurrent cur;
  switch (core.kind()) {
    case ToricWeight::Kind::Canonical:
      cur.atoms.push_back({0.0, b - a});
      return cur;
    case ToricWeight::Kind::MonomialExp: {
      cur.density = [core](double u) { return core.deriv2(u); };
      cur.envelope = monomial_envelope(core, 1.0);
      return cur;
    }
    case ToricWeight::Kind::Grid: {
      const auto& nodes = core.grid_nodes();
      const auto& vals = core.grid_values();
      const std::size_t n = nodes.size();
      std::vector<double> slopes(n + 1);
      slopes[0] = a;  // support-function slope outside the box
      for (std::size_t i = 0; i + 1 < n; ++i)
        slopes[i + 1] = (vals[i + 1] - vals[i]) / (nodes[i + 1] - nodes[i]);
      slopes[n] = b;
      for (std::size_t i = 0; i < n; ++i) {
        double jump = slopes[i + 1] - slopes[i];
        if (jump != 0.0) cur.atoms.push_back({nodes[i], jump});
      }
      return cur;
    }
    case ToricWeight::Kind::Blend: {
      MaCurrent c0 = ma_current(core.blend_w0());
      MaCurrent c1 = ma_current(core.blend_w1());
      double s = core.blend_s();
      MaCurrent out;
      for (auto& at : c0.atoms) out.atoms.push_back({at.first, (1.0 - s) * at.second});
      for (auto& at : c1.atoms) out.atoms.push_back({at.first, s * at.second});
      if (c0.density && c1.density) {
        out.density = [c0, c1, s](double u) {
          return (1.0 - s) * c0.density(u) + s * c1.density(u);
        };
        out.envelope.rate = std::min(c0.envelope.rate, c1.envelope.rate);
        out.envelope.box_halfwidth =
            std::max(c0.envelope.box_halfwidth, c1.envelope.box_halfwidth);
        out.envelope.log_amp =
            std::max(c0.envelope.log_amp, c1.envelope.log_amp) + std::log(2.0);
      } else if (c0.density) {
        out.density = [c0, s](double u) { return (1.0 - s) * c0.density(u); };
        out.envelope = c0.envelope;
      } else if (c1.density) {
        out.density = [c1, s](double u) { return s * c1.density(u); };
        out.envelope = c1.envelope;
      }
      return out;
    }
    default:
      throw WeightNotSmooth("ma_current: unsupported weight kind");
  }
}

namespace {

double density_box_integral(const std::function<double(double)>& f,
                            const std::function<double(double)>& g,
                            const DecayEnvelope& env, double eps,
                            double f_growth_rate, double f_log_amp) {
  double r = env.rate - f_growth_rate;
  if (!(r > 0.0))
    throw TailNotDominated("integrand growth is not dominated by the density envelope");
  if (std::isnan(f_log_amp)) {
    // calibrate a growth amplitude from samples on the box
    double amp = -std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 40; ++i) {
      double u = -env.box_halfwidth + 2.0 * env.box_halfwidth * i / 40.0;
      double av = std::abs(f(u));
      if (av > 0.0)
        amp = std::max(amp, std::log(av) - f_growth_rate * std::abs(u));
    }
    if (amp == -std::numeric_limits<double>::infinity()) amp = 0.0;
    f_log_amp = amp + std::log(4.0);
  }
  double tail_target = std::log(0.5 * eps * r) - std::log(2.0);
  double U = (env.log_amp + f_log_amp - tail_target) / r;
  U = std::max(U, env.box_halfwidth);
  QuadResult q = adaptive_gauss_legendre([&](double u) { return f(u) * g(u); }, -U, U,
                                         0.5 * eps);
  return q.value;
}

}  // namespace

double integrate_current(const std::function<double(double)>& f, const MaCurrent& cur,
                         double eps) {
  KahanSum s;
  for (const auto& at : cur.atoms) s.add(at.second * f(at.first));
  if (cur.density)
    s.add(density_box_integral(f, cur.density, cur.envelope, eps, 0.0,
                               std::numeric_limits<double>::quiet_NaN()));
  return s.value();
}

double integrate(const std::function<double(double)>& f, const RadialMeasure& mu,
                 double eps, double f_growth_rate, double f_log_amp) {
  if (mu.dim() != 1)
    throw DimensionUnsupported("integrate: scalar integrands are one-dimensional");
  KahanSum s;
  for (const auto& a : mu.atoms()) s.add(a.weight * f(a.location[0]));
  if (mu.has_density()) {
    check_envelope([&mu](double u) { return mu.density_at(u); }, mu.envelope());
    s.add(density_box_integral(f, [&mu](double u) { return mu.density_at(u); },
                               mu.envelope(), eps, f_growth_rate, f_log_amp));
  }
  return s.value();
}

}  // namespace thetavol
