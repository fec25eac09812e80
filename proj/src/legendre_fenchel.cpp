#include "thetavol/legendre_fenchel.hpp"

#include <algorithm>
#include <cmath>

#include "thetavol/errors.hpp"

namespace thetavol {

double GridFunction::convexity_defect() const {
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < nodes.size(); ++i) {
    double sl = (values[i] - values[i - 1]) / (nodes[i] - nodes[i - 1]);
    double sr = (values[i + 1] - values[i]) / (nodes[i + 1] - nodes[i]);
    worst = std::min(worst, sr - sl);
  }
  return -worst;
}

double GridFunction::interpolate(double x) const {
  if (x <= nodes.front()) return values.front();
  if (x >= nodes.back()) return values.back();
  auto it = std::upper_bound(nodes.begin(), nodes.end(), x);
  std::size_t j = static_cast<std::size_t>(it - nodes.begin());
  double a = (x - nodes[j - 1]) / (nodes[j] - nodes[j - 1]);
  return (1.0 - a) * values[j - 1] + a * values[j];
}

namespace {

// indices of the lower convex hull of (nodes, values); collinear interior
// points are dropped
std::vector<std::size_t> lower_hull(const std::vector<double>& x,
                                    const std::vector<double>& y) {
  std::vector<std::size_t> h;
  for (std::size_t i = 0; i < x.size(); ++i) {
    while (h.size() >= 2) {
      std::size_t a = h[h.size() - 2], b = h[h.size() - 1];
      // pop b when slope(a,b) >= slope(b,i)
      if ((y[b] - y[a]) * (x[i] - x[b]) >= (y[i] - y[b]) * (x[b] - x[a]))
        h.pop_back();
      else
        break;
    }
    h.push_back(i);
  }
  return h;
}

}  // namespace

GridFunction legendre(const GridFunction& f, std::vector<double> target_nodes) {
  if (f.nodes.size() != f.values.size() || f.nodes.size() < 2)
    throw ComputeError("legendre: malformed grid function");
  if (target_nodes.size() < 2)
    throw ComputeError("legendre: need at least two target nodes");
  for (std::size_t i = 0; i + 1 < target_nodes.size(); ++i)
    if (!(target_nodes[i] < target_nodes[i + 1]))
      throw ComputeError("legendre: target nodes must be strictly increasing");

  std::vector<std::size_t> hull = lower_hull(f.nodes, f.values);
  const std::size_t H = hull.size();
  auto hull_slope = [&](std::size_t j) {
    std::size_t a = hull[j], b = hull[j + 1];
    return (f.values[b] - f.values[a]) / (f.nodes[b] - f.nodes[a]);
  };
  // A u-side sample is a box truncation of a function on the whole line, so
  // the supremum escapes the box unless the sampled slopes bracket the target
  // range.  A p-side sample lives on the complete polytope and conjugates
  // exactly.
  if (f.side == GridSide::U) {
    double lo = target_nodes.front(), hi = target_nodes.back();
    double tol = 1e-6 * (1.0 + std::abs(lo) + std::abs(hi));
    if (H < 2) throw SlopeRangeTooNarrow("degenerate hull");
    if (hull_slope(0) > lo + tol || hull_slope(H - 2) < hi - tol)
      throw SlopeRangeTooNarrow("sampled slopes do not bracket the target range");
  }

  GridFunction g;
  g.side = (f.side == GridSide::U) ? GridSide::P : GridSide::U;
  g.nodes = std::move(target_nodes);
  g.values.resize(g.nodes.size());
  std::size_t j = 0;
  for (std::size_t t = 0; t < g.nodes.size(); ++t) {
    double p = g.nodes[t];
    while (j + 1 < H && hull_slope(j) <= p) ++j;
    std::size_t v = hull[j];
    g.values[t] = p * f.nodes[v] - f.values[v];
  }
  return g;
}

GridFunction legendre(const GridFunction& f, const LatticePolytope& P, int p_nodes) {
  if (P.dim() != 1) throw DimensionUnsupported("legendre target polytope must be 1-d");
  double a = static_cast<double>(P.left()), b = static_cast<double>(P.right());
  std::vector<double> ps(p_nodes);
  for (int i = 0; i < p_nodes; ++i)
    ps[i] = a + (b - a) * static_cast<double>(i) / (p_nodes - 1);
  return legendre(f, std::move(ps));
}

std::vector<double> make_u_nodes(const EnvelopeGrid& grid) {
  const int total = grid.u_nodes;
  int inner = (2 * total) / 3;
  if (inner % 2 == 0) ++inner;  // keep 0 on the grid
  int wing = (total - inner) / 2;
  std::vector<double> nodes;
  nodes.reserve(total + 2);
  double hw = grid.inner_halfwidth;
  for (int i = 0; i < wing; ++i)
    nodes.push_back(grid.u_min + (-hw - grid.u_min) * static_cast<double>(i) / wing);
  for (int i = 0; i < inner; ++i)
    nodes.push_back(-hw + 2.0 * hw * static_cast<double>(i) / (inner - 1));
  for (int i = 1; i <= total - inner - wing; ++i)
    nodes.push_back(hw + (grid.u_max - hw) * static_cast<double>(i) /
                             (total - inner - wing));
  return nodes;
}

GridFunction sample_weight(const ToricWeight& w, const EnvelopeGrid& grid) {
  if (w.dim() != 1) throw DimensionUnsupported("sample_weight is one-dimensional");
  std::vector<double> nodes = make_u_nodes(grid);
  // merge the kinks of piecewise-linear weights so hulls are exact
  ToricWeight core = w.shift_base();
  if (core.kind() == ToricWeight::Kind::Grid) {
    for (double x : core.grid_nodes())
      if (x > grid.u_min && x < grid.u_max) nodes.push_back(x);
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end(),
                            [](double a, double b) { return std::abs(a - b) < 1e-13; }),
                nodes.end());
  }
  GridFunction f;
  f.side = GridSide::U;
  f.nodes = std::move(nodes);
  f.values.reserve(f.nodes.size());
  for (double u : f.nodes) f.values.push_back(w.eval1(u));
  return f;
}

GridFunction equilibrium_weight(const ToricWeight& w, const EnvelopeGrid& grid) {
  GridFunction f = sample_weight(w, grid);
  const LatticePolytope& P = w.polytope();
  double a = static_cast<double>(P.left()), b = static_cast<double>(P.right());
  std::vector<std::size_t> hull = lower_hull(f.nodes, f.values);

  // contact vertices of the supporting lines with slopes a and b;
  // first maximizer for a, last maximizer for b
  std::size_t ja = hull[0], jb = hull[0];
  double besta = a * f.nodes[hull[0]] - f.values[hull[0]];
  double bestb = b * f.nodes[hull[0]] - f.values[hull[0]];
  for (std::size_t idx : hull) {
    double va = a * f.nodes[idx] - f.values[idx];
    double vb = b * f.nodes[idx] - f.values[idx];
    if (va > besta) {
      besta = va;
      ja = idx;
    }
    if (vb >= bestb) {
      bestb = vb;
      jb = idx;
    }
  }

  GridFunction out;
  out.side = GridSide::U;
  out.nodes = f.nodes;
  out.values.resize(f.nodes.size());
  std::size_t seg = 0;
  std::vector<std::size_t> hv(hull.begin(), hull.end());
  for (std::size_t i = 0; i < f.nodes.size(); ++i) {
    double u = f.nodes[i];
    if (u <= f.nodes[ja]) {
      out.values[i] = f.values[ja] + a * (u - f.nodes[ja]);
    } else if (u >= f.nodes[jb]) {
      out.values[i] = f.values[jb] + b * (u - f.nodes[jb]);
    } else {
      while (seg + 1 < hv.size() && f.nodes[hv[seg + 1]] < u) ++seg;
      std::size_t l = hv[seg], r = hv[std::min(seg + 1, hv.size() - 1)];
      if (l == r) {
        out.values[i] = f.values[l];
      } else {
        double t = (u - f.nodes[l]) / (f.nodes[r] - f.nodes[l]);
        out.values[i] = (1.0 - t) * f.values[l] + t * f.values[r];
      }
    }
  }
  return out;
}

double equilibrium_measure_integral(const ToricWeight& w,
                                    const std::function<double(double)>& f,
                                    const EnvelopeGrid& grid) {
  GridFunction samples = sample_weight(w, grid);
  GridFunction g = legendre(samples, w.polytope(), grid.p_nodes);
  double a = g.nodes.front(), b = g.nodes.back();
  double acc = 0.0;
  for (std::size_t j = 0; j + 1 < g.nodes.size(); ++j) {
    double dp = g.nodes[j + 1] - g.nodes[j];
    double slope = (g.values[j + 1] - g.values[j]) / dp;
    acc += dp * f(slope);
  }
  return acc / (b - a);
}

}  // namespace thetavol
