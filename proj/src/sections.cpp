#include "thetavol/sections.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <queue>

#include "thetavol/numerics.hpp"
#include "thetavol/parallel.hpp"

namespace thetavol {

Eigen::VectorXd eval_diag(const SectionSpace& S, const ToricWeight& w,
                          std::span<const double> u) {
  const int n = S.polytope.dim();
  double psi = w.eval(u);
  Eigen::VectorXd out(S.size());
  for (int i = 0; i < S.size(); ++i) {
    double dot = static_cast<double>(S.exponents[i][0]) * u[0];
    if (n == 2) dot += static_cast<double>(S.exponents[i][1]) * u[1];
    out[i] = std::exp(2.0 * (dot - static_cast<double>(S.k) * psi));
  }
  return out;
}

GramData gram_matrix(const SectionSpace& S, const RadialMeasure& mu,
                     const ToricWeight& w, double eps_rel) {
  // constant shifts factor out of every entry exactly
  double c = w.total_shift();
  if (c != 0.0) {
    GramData base = gram_matrix(S, mu, w.shift_base(), eps_rel);
    double f = std::exp(-2.0 * static_cast<double>(S.k) * c);
    base.diag *= f;
    base.entry_error *= f;
    return base;
  }
  const int n = S.polytope.dim();
  const int k = S.k;
  GramData G;
  G.space = S;
  G.diag.resize(S.size());
  G.entry_error = Eigen::VectorXd::Zero(S.size());
  for (int i = 0; i < S.size(); ++i) {
    const auto& m = S.exponents[i];
    double atom_part = 0.0;
    for (const auto& at : mu.atoms()) {
      double dot = static_cast<double>(m[0]) * at.location[0];
      if (n == 2) dot += static_cast<double>(m[1]) * at.location[1];
      double psi = w.eval(std::span<const double>(at.location.data(), at.location.size()));
      atom_part += at.weight * std::exp(2.0 * (dot - k * psi));
    }
    double value = atom_part;
    double err = 0.0;
    if (mu.has_density()) {
      if (n != 1) throw DimensionUnsupported("densities are one-dimensional");
      auto f = [&](double u) {
        return std::exp(2.0 * (static_cast<double>(m[0]) * u - k * w.eval1(u)));
      };
      // sup of the integrand via the conjugate; growth rate 0 beyond the box
      double log_cap = 2.0 * k * w.conjugate(static_cast<double>(m[0]) / k);
      auto g = [&](double u) { return mu.density_at(u); };
      DecayEnvelope env = mu.envelope();
      double r = env.rate;
      if (!(r > 0.0))
        throw TailNotDominated("measure density lacks a decaying envelope");
      double coarse_tol = 1e-4 * std::exp(log_cap);
      double U0 = std::max(env.box_halfwidth,
                           (env.log_amp + log_cap - std::log(0.25 * coarse_tol * r)) / r);
      QuadResult coarse = adaptive_gauss_legendre([&](double u) { return f(u) * g(u); },
                                                  -U0, U0, 0.5 * coarse_tol);
      double tol = eps_rel * std::max(coarse.value, std::exp(log_cap) * 1e-14);
      double U = std::max(env.box_halfwidth,
                          (env.log_amp + log_cap - std::log(0.25 * tol * r)) / r);
      QuadResult fine = adaptive_gauss_legendre([&](double u) { return f(u) * g(u); },
                                                -U, U, 0.5 * tol);
      value += fine.value;
      err = fine.error_estimate + 0.5 * tol;
    }
    if (!(value > 0.0))
      throw ComputeError("gram entry is not positive; model is invalid");
    G.diag[i] = value;
    G.entry_error[i] = err;
  }
  return G;
}

double rho(const GramData& G, const ToricWeight& w, std::span<const double> u) {
  Eigen::VectorXd d = eval_diag(G.space, w, u);
  double s = 0.0;
  for (int i = 0; i < d.size(); ++i) s += d[i] / G.diag[i];
  return s;
}

double theta_distortion(const GramData& G, const ToricWeight& w,
                        std::span<const double> u, double t) {
  if (!(t > 0.0)) throw ComputeError("theta_distortion: t must be positive");
  Eigen::VectorXd d = eval_diag(G.space, w, u);
  KahanSum s;
  for (int i = 0; i < d.size(); ++i)
    s.add(d[i] * theta1_sigma_sq(t * G.diag[i]));
  return 2.0 * kPi * s.value();
}

namespace {

struct DenseQuadraticSums {
  double log_theta = 0.0;  // log sum e^{-pi t q}
  double weighted = 0.0;   // sum (v^T C v) e^{-pi t q}
};

// One enumeration pass over {v : t v^T M v <= R^2} accumulating the plain
// Gaussian sum and the C-weighted sum, with split-exponential tail bounds.
DenseQuadraticSums dense_quadratic_sums(const Eigen::MatrixXd& M,
                                        const Eigen::MatrixXd& C, double t,
                                        double eps, std::uint64_t budget) {
  const int n = static_cast<int>(M.rows());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> esM(M, Eigen::EigenvaluesOnly);
  double lam_min = esM.eigenvalues().minCoeff();
  if (!(lam_min > 0.0)) throw NotPositiveDefinite("M is not positive definite");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> esC(C, Eigen::EigenvaluesOnly);
  double kappa = std::max(esC.eigenvalues().maxCoeff(), 0.0) / lam_min;

  double log_up = n * log_theta1(0.5 * t * lam_min * (1.0 - 1e-10));
  double radius_sq = std::max(2.0, (2.0 / kPi) * (log_up - std::log(0.5 * eps)));
  radius_sq +=
      (2.0 / kPi) * std::log(std::max((kappa + 1.0) * radius_sq / t, 1.0)) + 1e-9;

  Eigen::MatrixXd R = cholesky_upper(M);
  LogSumAccumulator lse;
  KahanSum weighted;
  Eigen::VectorXd vd(n);
  enumerate_ellipsoid(R, radius_sq / t, budget,
                      [&](const std::vector<long long>& v, double q) {
                        for (int i = 0; i < n; ++i) vd[i] = static_cast<double>(v[i]);
                        lse.add(-kPi * t * q);
                        double vCv = vd.dot(C * vd);
                        weighted.add(vCv * std::exp(-kPi * t * q));
                      });
  DenseQuadraticSums out;
  out.log_theta = lse.log_value();
  out.weighted = weighted.value();
  return out;
}

}  // namespace

double theta_distortion_dense(const Eigen::MatrixXd& M, const Eigen::MatrixXd& C,
                              double t, double eps, std::uint64_t budget) {
  DenseQuadraticSums s = dense_quadratic_sums(M, C, t, eps, budget);
  return 2.0 * kPi * s.weighted / std::exp(s.log_theta);
}

double theta_identity_residual(const Eigen::MatrixXd& M, const Eigen::MatrixXd& C,
                               double eps, std::uint64_t budget) {
  const int n = static_cast<int>(M.rows());
  DenseQuadraticSums primal = dense_quadratic_sums(M, C, 1.0, eps, budget);
  Eigen::LLT<Eigen::MatrixXd> llt(M);
  if (llt.info() != Eigen::Success) throw NotPositiveDefinite("M is not positive definite");
  Eigen::MatrixXd Minv = llt.solve(Eigen::MatrixXd::Identity(n, n));
  Minv = 0.5 * (Minv + Minv.transpose()).eval();
  Eigen::MatrixXd W = Minv * C * Minv;
  W = 0.5 * (W + W.transpose()).eval();
  DenseQuadraticSums dual = dense_quadratic_sums(Minv, W, 1.0, eps, budget);
  double trace = (Minv * C).trace();
  double log_det = 0.0;
  Eigen::MatrixXd R = cholesky_upper(M);
  for (int i = 0; i < n; ++i) log_det += 2.0 * std::log(R(i, i));
  double lhs = primal.weighted;
  double rhs = trace / (2.0 * kPi) * std::exp(primal.log_theta) -
               std::exp(-0.5 * log_det) * dual.weighted;
  return std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1e-300});
}

EuclideanLattice section_lattice(const GramData& G) { return diagonal_lattice(G.diag); }

double section_h0_theta(const GramData& G) {
  KahanSum s;
  for (int i = 0; i < G.diag.size(); ++i) s.add(log_theta1(G.diag[i]));
  return s.value();
}

UIntegralCheck u_integral_check(const SectionSpace& S, const RadialMeasure& mu,
                                const ToricWeight& w, double t, double eps) {
  GramData G = gram_matrix(S, mu, w, std::min(eps, 1e-10));
  UIntegralCheck out;
  if (mu.has_density()) {
    std::vector<double> uu(1);
    out.lhs = integrate(
        [&](double u) {
          uu[0] = u;
          return theta_distortion(G, w, uu, t);
        },
        mu, eps);
  } else {
    double s = 0.0;
    for (const auto& at : mu.atoms())
      s += at.weight *
           theta_distortion(G, w, std::span<const double>(at.location.data(),
                                                          at.location.size()),
                            t);
    out.lhs = s;
  }
  KahanSum rhs;
  for (int i = 0; i < G.diag.size(); ++i)
    rhs.add(G.diag[i] * theta1_sigma_sq(t * G.diag[i]));
  out.rhs = 2.0 * kPi * rhs.value();
  out.bound = static_cast<double>(S.size()) / t;
  out.rel_gap = std::abs(out.lhs - out.rhs) / std::max(std::abs(out.rhs), 1e-300);
  return out;
}

std::vector<double> default_u_grid() {
  std::vector<double> g;
  for (int i = 0; i <= 40; ++i) g.push_back(-5.0 + 0.25 * i);
  return g;
}

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

void fit_inverse_power(const std::vector<double>& ks, const std::vector<double>& ys,
                       double* c0, double* c1, double* c2) {
  const int m = static_cast<int>(ks.size());
  Eigen::MatrixXd A(m, 3);
  Eigen::VectorXd b(m);
  for (int i = 0; i < m; ++i) {
    A(i, 0) = 1.0;
    A(i, 1) = 1.0 / ks[i];
    A(i, 2) = 1.0 / (ks[i] * ks[i]);
    b[i] = ys[i];
  }
  Eigen::Vector3d x = A.colPivHouseholderQr().solve(b);
  *c0 = x[0];
  *c1 = x[1];
  *c2 = x[2];
}

}  // namespace

VolumeScan volume_scan(const LatticePolytope& P, const ToricWeight& w,
                       const RadialMeasure& mu, std::span<const int> k_list,
                       const ScanOptions& opts) {
  for (std::size_t i = 0; i + 1 < k_list.size(); ++i)
    if (!(k_list[i] < k_list[i + 1]))
      throw ComputeError("volume_scan: k_list must be strictly increasing");
  const int n = P.dim();
  std::vector<double> grid = opts.u_grid.empty() ? default_u_grid() : opts.u_grid;
  VolumeScan scan;
  scan.rows.resize(k_list.size());
  parallel_for(k_list.size(), opts.jobs, [&](std::size_t idx) {
    int k = k_list[idx];
    SectionSpace S = lattice_points(P, k);
    GramData G = gram_matrix(S, mu, w, opts.gram_eps);
    ScanRow row;
    row.k = k;
    row.N_k = S.size();
    row.h0_theta = section_h0_theta(G);
    row.chi_hat = arakelov_degree(section_lattice(G));
    double norm = factorial(n + 1) / std::pow(static_cast<double>(k), n + 1);
    row.v_k = row.h0_theta * norm;
    row.chi_k = row.chi_hat * norm;
    double sup_rho = 0.0, max_ratio = 0.0;
    auto visit_point = [&](std::span<const double> u) {
      double r = rho(G, w, u);
      sup_rho = std::max(sup_rho, r);
      if (r > 0.0)
        max_ratio = std::max(max_ratio, theta_distortion(G, w, u, 1.0) / r);
    };
    if (n == 1) {
      for (double u : grid) {
        double uu[1] = {u};
        visit_point(uu);
      }
    } else {
      for (double ux : grid)
        for (double uy : grid) {
          double uu[2] = {ux, uy};
          visit_point(uu);
        }
    }
    row.sup_rho = sup_rho;
    row.theta_over_rho_max = max_ratio;
    scan.rows[idx] = row;
  });
  const int tail = std::min<int>(5, static_cast<int>(scan.rows.size()));
  if (tail >= 3) {
    std::vector<double> ks, vs, cs;
    for (int i = static_cast<int>(scan.rows.size()) - tail;
         i < static_cast<int>(scan.rows.size()); ++i) {
      ks.push_back(scan.rows[i].k);
      vs.push_back(scan.rows[i].v_k);
      cs.push_back(scan.rows[i].chi_k);
    }
    fit_inverse_power(ks, vs, &scan.fit.v_infinity, &scan.fit.v_slope, &scan.fit.v_curv);
    fit_inverse_power(ks, cs, &scan.fit.chi_infinity, &scan.fit.chi_slope,
                      &scan.fit.chi_curv);
    scan.fit.points_used = tail;
  } else if (!scan.rows.empty()) {
    scan.fit.v_infinity = scan.rows.back().v_k;
    scan.fit.chi_infinity = scan.rows.back().chi_k;
    scan.fit.points_used = static_cast<int>(scan.rows.size());
  }
  return scan;
}

VariationCheck variation_identity_check(const LatticePolytope& P, const ToricWeight& w0,
                                        const ToricWeight& w1, const RadialMeasure& mu,
                                        int k, int s_nodes, double eps) {
  SectionSpace S = lattice_points(P, k);
  GramData G0 = gram_matrix(S, mu, w0, std::min(eps, 1e-11));
  GramData G1 = gram_matrix(S, mu, w1, std::min(eps, 1e-11));
  VariationCheck out;
  out.lhs = section_h0_theta(G0) - section_h0_theta(G1);
  const QuadratureRule& rule = gauss_legendre(s_nodes);
  KahanSum rhs;
  for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
    double s = 0.5 * (rule.nodes[j] + 1.0);
    ToricWeight ws = ToricWeight::blend(w1, w0, s);  // w1 + s (w0 - w1)
    GramData Gs = gram_matrix(S, mu, ws, std::min(eps, 1e-11));
    double inner;
    if (mu.has_density()) {
      std::vector<double> uu(1);
      inner = integrate(
          [&](double u) {
            uu[0] = u;
            return (w0.eval1(u) - w1.eval1(u)) * theta_distortion(Gs, ws, uu, 1.0);
          },
          mu, eps);
    } else {
      double acc = 0.0;
      for (const auto& at : mu.atoms()) {
        std::span<const double> u(at.location.data(), at.location.size());
        acc += at.weight * (w0.eval(u) - w1.eval(u)) * theta_distortion(Gs, ws, u, 1.0);
      }
      inner = acc;
    }
    rhs.add(0.5 * rule.weights[j] * inner);
  }
  out.rhs = k * rhs.value();
  out.residual = std::abs(out.lhs - out.rhs) /
                 std::max({std::abs(out.lhs), std::abs(out.rhs), 1.0});
  return out;
}

namespace {

// Certified bracket of sup_theta |sum_m r_m e^{i m theta}| for real r_m.
// Works on q = |p|^2 with a second-order midpoint bound per subinterval,
// q(t) <= q(c) + |q'(c)| h/2 + sup|q''| h^2/8, bisecting the active ones.
struct ThetaSup {
  double lower = 0.0;
  double upper = 0.0;
};

// Objective sum_j |p_j(theta)|^2 over the supplied coefficient sets (one or
// two); reflection symmetry restricts theta to [0, pi].
ThetaSup theta_sup_bracket(const std::vector<const std::vector<double>*>& polys,
                           const std::vector<long long>& ms, double tol_rel) {
  auto eval_pq = [&](double th, double* q, double* dq) {
    *q = 0.0;
    *dq = 0.0;
    for (const auto* r : polys) {
      std::complex<double> p(0, 0), dp(0, 0);
      for (std::size_t i = 0; i < r->size(); ++i) {
        double m = static_cast<double>(ms[i]);
        std::complex<double> e = std::polar((*r)[i], m * th);
        p += e;
        dp += std::complex<double>(0, m) * e;
      }
      *q += std::norm(p);
      *dq += 2.0 * (std::conj(p) * dp).real();
    }
  };
  double q2cap = 0.0;
  for (const auto* r : polys) {
    double s_abs = 0.0, s_m = 0.0, s_mm = 0.0;
    for (std::size_t i = 0; i < r->size(); ++i) {
      double am = std::abs((*r)[i]), m = std::abs(static_cast<double>(ms[i]));
      s_abs += am;
      s_m += am * m;
      s_mm += am * m * m;
    }
    q2cap += 2.0 * (s_m * s_m + s_abs * s_mm);
  }

  struct Seg {
    double ub, lo, hi;
    bool operator<(const Seg& o) const { return ub < o.ub; }
  };
  std::priority_queue<Seg> segs;
  double best = 0.0;
  auto push = [&](double lo, double hi) {
    double c = 0.5 * (lo + hi), h = hi - lo;
    double q, dq;
    eval_pq(c, &q, &dq);
    best = std::max(best, q);
    double ub = q + 0.5 * h * std::abs(dq) + 0.125 * h * h * q2cap;
    if (ub > best) segs.push({ub, lo, hi});
  };
  const int seed = 16;
  for (int i = 0; i < seed; ++i)
    push(kPi * i / seed, kPi * (i + 1) / seed);
  double ub_global = best;
  for (int it = 0; it < 4000 && !segs.empty(); ++it) {
    Seg top = segs.top();
    ub_global = top.ub;
    if (ub_global <= best * (1.0 + tol_rel) + 1e-300) break;
    segs.pop();
    double mid = 0.5 * (top.lo + top.hi);
    push(top.lo, mid);
    push(mid, top.hi);
  }
  if (segs.empty()) ub_global = best;
  ThetaSup out;
  out.lower = std::sqrt(std::max(best, 0.0));
  out.upper = std::sqrt(std::max({ub_global, best, 0.0}));
  return out;
}

// Reusable sup-norm solver for one section space and weight: the conjugate
// caps are computed once, then many coefficient vectors can be bracketed.
//
// Branching happens in u only.  Write G(u) = s(u + i theta) e^{-k psi(u)} for
// fixed theta, so G' = sum a_m (m - k psi') chi^m e^{-k psi} and
// G'' = sum a_m [(m - k psi')^2 - k psi''] chi^m e^{-k psi}.  Taylor with the
// integral remainder across the box [uc - h, uc + h] gives
//   sup F <= sup_theta(|G(uc)| + h |G'(uc)|) + h^2 C2 + h k J tri,
// where J is the psi'-variation across the box (the curvature mass, which
// also accounts for kinks of piecewise-linear weights) and C2 is the
// cancellation-aware second-derivative cap.  The leading term is certified
// two ways and the smaller bound wins:
//   - additive:     sup|G| + h sup|G'|          (sharp at smooth maxima)
//   - sum of squares: sqrt((1+h^2) sup(|G|^2+|G'|^2))   (sharp on the flat
//     ridges where s and its derivative trade off, e.g. 1 + chi^2 under the
//     Fubini-Study weight, which stall any additive bound)
class SupEngine {
 public:
  SupEngine(const SectionSpace& S, const ToricWeight& w)
      : w_(&w), k_(static_cast<double>(S.k)) {
    if (S.polytope.dim() != 1)
      throw DimensionUnsupported("sup_norm is one-dimensional");
    for (const auto& e : S.exponents) exps_.push_back(e[0]);
    caps_.reserve(exps_.size());
    for (long long m : exps_)
      caps_.push_back(std::exp(k_ * w.conjugate(static_cast<double>(m) / k_)));
  }

  SupNormBracket run(std::span<const double> coeffs, double tol_rel,
                     std::uint64_t node_budget, int seed_panels) const {
    if (coeffs.size() != exps_.size())
      throw ComputeError("sup_norm: coefficient count mismatch");
    a_.clear();
    ms_.clear();
    cap_.clear();
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      if (coeffs[i] == 0.0) continue;
      a_.push_back(coeffs[i]);
      ms_.push_back(exps_[i]);
      cap_.push_back(caps_[i]);
    }
    if (a_.empty()) return {0.0, 0.0};
    double cap_total = 0.0;
    for (std::size_t i = 0; i < a_.size(); ++i)
      cap_total += std::abs(a_[i]) * cap_[i];

    double lb = std::max(value(-kBox, 0.0), value(kBox, 0.0));
    std::priority_queue<Node> queue;
    for (int i = 0; i < seed_panels; ++i)
      push_node(-kBox + 2.0 * kBox * i / seed_panels,
                -kBox + 2.0 * kBox * (i + 1) / seed_panels, tol_rel, cap_total,
                &lb, &queue);
    double ext = std::max(exterior_bound(1.0), exterior_bound(-1.0));

    std::uint64_t nodes = 0;
    double ub_global = cap_total;
    while (!queue.empty()) {
      Node nd = queue.top();
      ub_global = std::max(nd.ub, ext);
      if (ub_global <= lb * (1.0 + tol_rel) + 1e-300) break;
      if (nd.ub <= lb * (1.0 + tol_rel)) {
        queue.pop();
        continue;
      }
      queue.pop();
      if (++nodes > node_budget)
        throw GridNotConverged("sup_norm branch and bound exceeded its node budget");
      double mid = 0.5 * (nd.u1 + nd.u2);
      push_node(nd.u1, mid, tol_rel, cap_total, &lb, &queue);
      push_node(mid, nd.u2, tol_rel, cap_total, &lb, &queue);
    }
    if (queue.empty()) ub_global = std::max(lb, ext);
    return {lb, std::max(ub_global, lb)};
  }

 private:
  static constexpr double kBox = 30.0;

  struct Node {
    double ub;
    double u1, u2;
    bool operator<(const Node& o) const { return ub < o.ub; }
  };

  double value(double u, double th) const {
    std::complex<double> acc(0, 0);
    for (std::size_t i = 0; i < a_.size(); ++i) {
      double m = static_cast<double>(ms_[i]);
      acc += a_[i] * std::exp(std::complex<double>(m * u, m * th));
    }
    return std::abs(acc) * std::exp(-k_ * w_->eval1(u));
  }

  double exterior_bound(double sgn) const {
    double secant = sgn * (w_->eval1(sgn * kBox) - w_->eval1(sgn * (kBox - 1.0)));
    double ub = 0.0;
    for (std::size_t i = 0; i < a_.size(); ++i) {
      double m = static_cast<double>(ms_[i]);
      double at_box = std::abs(a_[i]) *
                      std::exp(m * sgn * kBox - k_ * w_->eval1(sgn * kBox));
      ub += (sgn * m <= k_ * secant) ? at_box : std::abs(a_[i]) * cap_[i];
    }
    return ub;
  }

  void push_node(double u1, double u2, double tol_rel, double cap_total,
                 double* lb, std::priority_queue<Node>* queue) const {
    double uc = 0.5 * (u1 + u2), half = 0.5 * (u2 - u1);
    double d = 1e-7 * (1.0 + std::abs(u1) + std::abs(u2));
    double p1 = w_->eval1(u1), p2 = w_->eval1(u2), pc = w_->eval1(uc);
    double slope_lo = (p1 - w_->eval1(u1 - d)) / d;   // <= psi'(u1)
    double slope_hi = (w_->eval1(u2 + d) - p2) / d;   // >= psi'(u2)
    double jump = std::max(slope_hi - slope_lo, 0.0);
    double mid_slope = 0.5 * (slope_lo + slope_hi);

    rv_.resize(a_.size());
    dv_.resize(a_.size());
    double sum_r = 0.0, triangle = 0.0, c2 = 0.0;
    for (std::size_t i = 0; i < a_.size(); ++i) {
      double m = static_cast<double>(ms_[i]);
      rv_[i] = a_[i] * std::exp(m * uc - k_ * pc);
      dv_[i] = rv_[i] * (m - k_ * mid_slope);
      sum_r += std::abs(rv_[i]);
      double at1 = std::exp(m * u1 - k_ * p1), at2 = std::exp(m * u2 - k_ * p2);
      double tb;
      if (m <= k_ * slope_lo)
        tb = at1;
      else if (m >= k_ * slope_hi)
        tb = at2;
      else
        tb = cap_[i];
      tb = std::max({tb, at1, at2});
      double am = std::abs(a_[i]);
      double mm = std::max(std::abs(m - k_ * slope_lo), std::abs(m - k_ * slope_hi));
      triangle += am * tb;
      c2 += am * mm * mm * tb;
    }
    if (std::min(triangle, cap_total) <= *lb) return;  // nothing to gain here
    ThetaSup slice = theta_sup_bracket({&rv_}, ms_, 0.2 * tol_rel);
    *lb = std::max(*lb, slice.lower);
    double remainder = half * half * c2 + half * k_ * jump * triangle;
    double slope_slack = 1.0 + 0.5 * half * k_ * jump;
    double d_tri = 0.0;
    for (double x : dv_) d_tri += std::abs(x);
    double lead = slice.upper + half * (d_tri + 0.5 * k_ * jump * sum_r);
    if (lead + remainder > *lb) {
      ThetaSup dslice = theta_sup_bracket({&dv_}, ms_, 0.25);
      lead = slice.upper + half * (dslice.upper + 0.5 * k_ * jump * sum_r);
      ThetaSup pair = theta_sup_bracket({&rv_, &dv_}, ms_, 0.2 * tol_rel);
      lead = std::min(lead, std::sqrt(1.0 + half * half) * pair.upper * slope_slack);
    }
    double ub = std::min({lead + remainder, triangle, cap_total});
    if (ub > *lb) queue->push({ub, u1, u2});
  }

  const ToricWeight* w_;
  double k_;
  std::vector<long long> exps_;
  std::vector<double> caps_;
  // scratch, reused across run() calls
  mutable std::vector<double> a_, cap_, rv_, dv_;
  mutable std::vector<long long> ms_;
};

}  // namespace

SupNormBracket sup_norm(const SectionSpace& S, const ToricWeight& w,
                        std::span<const double> coeffs, double tol_rel,
                        std::uint64_t node_budget) {
  SupEngine engine(S, w);
  return engine.run(coeffs, tol_rel, node_budget, 64);
}

SupTheta sup_h0_theta_smallk(const SectionSpace& S, const RadialMeasure& mu,
                             const ToricWeight& w, double tail_eps,
                             std::uint64_t budget) {
  if (S.size() > 8)
    throw ComputeError("sup_h0_theta_smallk is restricted to small section spaces");
  GramData G = gram_matrix(S, mu, w, 1e-12);
  double log_theta_half = 0.0;
  for (int i = 0; i < G.diag.size(); ++i) log_theta_half += log_theta1(0.5 * G.diag[i]);
  double radius_sq = std::max(2.0, (2.0 / kPi) * (log_theta_half - std::log(tail_eps)));

  const int n = S.size();
  Eigen::MatrixXd R = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) R(i, i) = std::sqrt(G.diag[i]);
  std::vector<double> qs;
  std::vector<long long> coords;
  enumerate_ellipsoid(R, radius_sq, budget,
                      [&](const std::vector<long long>& v, double q) {
                        // one representative per +-v pair
                        for (int i = 0; i < n; ++i) {
                          if (v[i] > 0) break;
                          if (v[i] < 0) return;
                        }
                        qs.push_back(q);
                        coords.insert(coords.end(), v.begin(), v.end());
                      });
  std::vector<std::size_t> order(qs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return qs[a] < qs[b]; });
  std::vector<double> suffix(order.size() + 1, 0.0);
  for (std::size_t i = order.size(); i-- > 0;)
    suffix[i] = suffix[i + 1] + std::exp(-kPi * qs[order[i]]);

  KahanSum low, high;
  std::vector<double> a(n);
  SupEngine engine(S, w);
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    std::size_t i = order[pos];
    if (qs[i] == 0.0) {  // zero section
      low.add(1.0);
      high.add(1.0);
      continue;
    }
    if (suffix[pos] <= 0.005 * std::max(low.value(), 1.0)) {
      // bracket the remainder: sup norm >= L2 norm termwise
      high.add(2.0 * suffix[pos]);
      break;
    }
    for (int j = 0; j < n; ++j) a[j] = static_cast<double>(coords[i * n + j]);
    SupNormBracket b = engine.run(a, 5e-3, 6000, 16);
    low.add(2.0 * std::exp(-kPi * b.upper * b.upper));
    high.add(2.0 * std::exp(-kPi * b.lower * b.lower));
  }
  high.add(tail_eps);
  double lo = low.value(), hi = high.value();
  SupTheta out;
  out.log_value = std::log(0.5 * (lo + hi));
  out.error_bound = std::log(hi) - out.log_value;
  return out;
}

BernsteinMarkovFit bernstein_markov_fit(const LatticePolytope& P, const ToricWeight& w,
                                        const RadialMeasure& mu,
                                        std::span<const int> k_list,
                                        std::span<const double> u_grid,
                                        double gram_eps) {
  BernsteinMarkovFit fit;
  for (int k : k_list) {
    SectionSpace S = lattice_points(P, k);
    GramData G = gram_matrix(S, mu, w, gram_eps);
    double sup = 0.0;
    for (double u : u_grid) {
      double uu[1] = {u};
      sup = std::max(sup, rho(G, w, uu));
    }
    fit.sup_rho.push_back({k, sup});
  }
  // least-squares slope of log sup_rho^{1/2}, clamped nonnegative, then the
  // offset lifted so the line majorizes every scanned value
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (const auto& [k, r] : fit.sup_rho) {
    double y = 0.5 * std::log(r);
    sx += k;
    sy += y;
    sxx += static_cast<double>(k) * k;
    sxy += k * y;
  }
  double m = static_cast<double>(fit.sup_rho.size());
  double denom = m * sxx - sx * sx;
  double slope = (denom > 0.0) ? (m * sxy - sx * sy) / denom : 0.0;
  fit.epsilon = std::max(slope, 0.0);
  fit.C = -std::numeric_limits<double>::infinity();
  for (const auto& [k, r] : fit.sup_rho)
    fit.C = std::max(fit.C, 0.5 * std::log(r) - fit.epsilon * k);
  return fit;
}

}  // namespace thetavol
