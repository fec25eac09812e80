#include "thetavol/lattice.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <random>

#include "thetavol/numerics.hpp"

namespace thetavol {

EuclideanLattice make_lattice(Eigen::MatrixXd gram) {
  const int n = static_cast<int>(gram.rows());
  if (gram.cols() != n) throw ComputeError("gram matrix must be square");
  bool diagonal = true;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (gram(i, j) != gram(j, i))
        throw ComputeError("gram matrix must be exactly symmetric");
      if (i != j && gram(i, j) != 0.0) diagonal = false;
    }
  EuclideanLattice L;
  L.gram = std::move(gram);
  L.diagonal_hint = diagonal;
  return L;
}

EuclideanLattice diagonal_lattice(const Eigen::VectorXd& diag) {
  EuclideanLattice L;
  L.gram = Eigen::MatrixXd::Zero(diag.size(), diag.size());
  for (int i = 0; i < diag.size(); ++i) L.gram(i, i) = diag[i];
  L.diagonal_hint = true;
  return L;
}

Eigen::MatrixXd cholesky_upper(const Eigen::MatrixXd& gram) {
  Eigen::LLT<Eigen::MatrixXd> llt(gram);
  if (llt.info() != Eigen::Success)
    throw NotPositiveDefinite("gram matrix is not positive definite");
  Eigen::MatrixXd R = llt.matrixU();
  for (int i = 0; i < R.rows(); ++i)
    if (!(R(i, i) > 0.0))
      throw NotPositiveDefinite("gram matrix has a nonpositive pivot");
  return R;
}

double log_det_gram(const EuclideanLattice& L) {
  if (L.rank() == 0) return 0.0;
  if (L.diagonal_hint) {
    double s = 0.0;
    for (int i = 0; i < L.rank(); ++i) {
      double d = L.gram(i, i);
      if (!(d > 0.0)) throw NotPositiveDefinite("diagonal gram entry is nonpositive");
      s += std::log(d);
    }
    return s;
  }
  Eigen::MatrixXd R = cholesky_upper(L.gram);
  double s = 0.0;
  for (int i = 0; i < R.rows(); ++i) s += std::log(R(i, i));
  return 2.0 * s;
}

double covolume(const EuclideanLattice& L) { return std::exp(0.5 * log_det_gram(L)); }

EuclideanLattice dual_lattice(const EuclideanLattice& L) {
  const int n = L.rank();
  EuclideanLattice D;
  if (L.diagonal_hint) {
    D.gram = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      if (!(L.gram(i, i) > 0.0))
        throw NotPositiveDefinite("diagonal gram entry is nonpositive");
      D.gram(i, i) = 1.0 / L.gram(i, i);
    }
    D.diagonal_hint = true;
    return D;
  }
  Eigen::LLT<Eigen::MatrixXd> llt(L.gram);
  if (llt.info() != Eigen::Success)
    throw NotPositiveDefinite("gram matrix is not positive definite");
  Eigen::MatrixXd inv = llt.solve(Eigen::MatrixXd::Identity(n, n));
  // symmetrize exactly so the result satisfies the type invariant
  Eigen::MatrixXd sym = 0.5 * (inv + inv.transpose());
  return make_lattice(std::move(sym));
}

namespace {

struct ThetaSums {
  double log_theta = 0.0;
  double second_moment = 0.0;       // sum q exp(-pi t q)
  double theta_abs_err = 0.0;       // absolute error on the plain theta sum
  double sm_abs_err = 0.0;
  double radius_sq = 0.0;
  std::int64_t terms = 0;
};

double min_eigenvalue(const Eigen::MatrixXd& gram) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram, Eigen::EigenvaluesOnly);
  double lam = es.eigenvalues().minCoeff();
  if (!(lam > 0.0)) throw NotPositiveDefinite("gram matrix is not positive definite");
  return lam * (1.0 - 1e-10);
}

// Coarse rigorous upper bound: theta_G(s) <= theta1(s*lambda_min)^N.
double coarse_log_theta_upper(const Eigen::MatrixXd& gram, double s) {
  const int n = static_cast<int>(gram.rows());
  if (n == 0) return 0.0;
  return n * log_theta1(s * min_eigenvalue(gram));
}

ThetaSums dense_theta_sums(const EuclideanLattice& L, double t, double eps,
                           std::uint64_t budget, int depth);

// theta_G(t) = t^{-N/2} det(G)^{-1/2} theta_{G^{-1}}(1/t); differentiating the
// same Poisson identity in s (via the M=tG, C=G case of the matrix identity)
// gives the second moment at small t from the dual at large t.
ThetaSums flipped_theta_sums(const EuclideanLattice& L, double t, double eps,
                             std::uint64_t budget, int depth) {
  const int n = L.rank();
  EuclideanLattice dual = dual_lattice(L);
  double log_c = -0.5 * n * std::log(t) - 0.5 * log_det_gram(L);
  double eps_dual = std::max(eps * std::exp(-log_c), 1e-15);
  ThetaSums sub = dense_theta_sums(dual, 1.0 / t, eps_dual, budget, depth);
  ThetaSums out;
  out.log_theta = log_c + sub.log_theta;
  double c = std::exp(log_c);
  double theta = std::exp(out.log_theta);
  out.second_moment = n / (2.0 * kPi * t) * theta - c * sub.second_moment / (t * t);
  out.theta_abs_err = c * sub.theta_abs_err + 1e-14 * theta;
  out.sm_abs_err = n / (2.0 * kPi * t) * out.theta_abs_err +
                   c * sub.sm_abs_err / (t * t) + 1e-14 * std::abs(out.second_moment);
  out.radius_sq = sub.radius_sq;
  out.terms = sub.terms;
  return out;
}

ThetaSums dense_theta_sums(const EuclideanLattice& L, double t, double eps,
                           std::uint64_t budget, int depth) {
  const int n = L.rank();
  if (n == 0) {
    ThetaSums out;
    out.log_theta = 0.0;
    out.terms = 1;
    return out;
  }
  if (t < 1.0) return flipped_theta_sums(L, t, eps, budget, depth);

  // Upper estimate of theta(t/2) for the split tail bound
  //   sum_{t q > R^2} e^{-pi t q} <= e^{-pi R^2 / 2} theta(t/2).
  double log_upper;
  if (depth >= 2) {
    log_upper = coarse_log_theta_upper(L.gram, 0.5 * t);
  } else {
    ThetaSums up = dense_theta_sums(L, 0.5 * t, 2.0 * eps, budget, depth + 1);
    double rel = std::min(up.theta_abs_err * std::exp(-up.log_theta), 1.0);
    log_upper = up.log_theta + std::log1p(rel);
  }

  double radius_sq = std::max(1.0, (2.0 / kPi) * (log_upper - std::log(0.5 * eps)));
  // One more pass so the second-moment tail factor R^2/t is absorbed too.
  radius_sq += (2.0 / kPi) * std::log(std::max(radius_sq / t, 1.0)) + 1e-9;

  Eigen::MatrixXd R = cholesky_upper(L.gram);
  LogSumAccumulator lse;
  KahanSum sm;
  std::int64_t terms = 0;
  enumerate_ellipsoid(R, radius_sq / t, budget,
                      [&](const std::vector<long long>&, double q) {
                        lse.add(-kPi * t * q);
                        sm.add(q * std::exp(-kPi * t * q));
                        ++terms;
                      });
  ThetaSums out;
  out.log_theta = lse.log_value();
  out.second_moment = sm.value();
  out.radius_sq = radius_sq;
  out.terms = terms;
  double tail = std::exp(log_upper - 0.5 * kPi * radius_sq);
  double theta = std::exp(out.log_theta);
  out.theta_abs_err = tail + 1e-15 * static_cast<double>(terms + 1) * theta;
  out.sm_abs_err = (radius_sq / t) * tail +
                   1e-15 * static_cast<double>(terms + 1) * std::max(out.second_moment, 1.0);
  return out;
}

ThetaValue diagonal_log_theta(const EuclideanLattice& L, double t) {
  double s = 0.0;
  for (int i = 0; i < L.rank(); ++i) {
    double d = L.gram(i, i);
    if (!(d > 0.0)) throw NotPositiveDefinite("diagonal gram entry is nonpositive");
    s += log_theta1(t * d);
  }
  ThetaValue out;
  out.log_value = s;
  double rel = 1e-14 * (L.rank() + 1);
  out.abs_error_bound = (s < 700.0) ? rel * std::exp(s)
                                    : std::numeric_limits<double>::max();
  out.terms_enumerated = 0;
  return out;
}

}  // namespace

ThetaValue log_theta(const EuclideanLattice& L, double t, double eps,
                     std::uint64_t budget) {
  if (!(t > 0.0)) throw ComputeError("log_theta: t must be positive");
  if (!(eps > 0.0)) throw ComputeError("log_theta: eps must be positive");
  if (L.rank() == 0) {
    ThetaValue out;
    out.terms_enumerated = 1;
    return out;
  }
  if (L.diagonal_hint) return diagonal_log_theta(L, t);
  ThetaSums s = dense_theta_sums(L, t, eps, budget, 0);
  ThetaValue out;
  out.log_value = s.log_theta;
  out.abs_error_bound = s.theta_abs_err;
  out.truncation_radius_sq = s.radius_sq;
  out.terms_enumerated = s.terms;
  return out;
}

double h0_theta(const EuclideanLattice& L, double eps, std::uint64_t budget) {
  return log_theta(L, 1.0, eps, budget).log_value;
}

double h1_theta(const EuclideanLattice& L, double eps, std::uint64_t budget) {
  return h0_theta(dual_lattice(L), eps, budget);
}

double arakelov_degree(const EuclideanLattice& L) { return -0.5 * log_det_gram(L); }

double poisson_residual(const EuclideanLattice& L, double eps, std::uint64_t budget) {
  return h0_theta(L, eps, budget) - h1_theta(L, eps, budget) - arakelov_degree(L);
}

std::int64_t unit_ball_count(const EuclideanLattice& L, std::uint64_t budget) {
  if (L.rank() == 0) return 1;
  Eigen::MatrixXd R = cholesky_upper(L.gram);
  std::int64_t count = 0;
  enumerate_ellipsoid(R, 1.0, budget,
                      [&](const std::vector<long long>&, double) { ++count; });
  return count;
}

double h0_ar(const EuclideanLattice& L, std::uint64_t budget) {
  return std::log(static_cast<double>(unit_ball_count(L, budget)));
}

double second_moment(const EuclideanLattice& L, double t, double eps,
                     std::uint64_t budget) {
  if (!(t > 0.0)) throw ComputeError("second_moment: t must be positive");
  if (L.rank() == 0) return 0.0;
  if (L.diagonal_hint) {
    double s = 0.0;
    for (int i = 0; i < L.rank(); ++i)
      s += L.gram(i, i) * theta1_sigma_sq(t * L.gram(i, i));
    return std::exp(diagonal_log_theta(L, t).log_value) * s;
  }
  return dense_theta_sums(L, t, eps, budget, 0).second_moment;
}

double u_function(const EuclideanLattice& L, double t, double eps,
                  std::uint64_t budget) {
  if (!(t > 0.0)) throw ComputeError("u_function: t must be positive");
  if (L.rank() == 0) return 0.0;
  if (L.diagonal_hint) {
    double s = 0.0;
    for (int i = 0; i < L.rank(); ++i)
      s += L.gram(i, i) * theta1_sigma_sq(t * L.gram(i, i));
    return 2.0 * kPi * s;
  }
  ThetaSums s = dense_theta_sums(L, t, eps, budget, 0);
  return 2.0 * kPi * s.second_moment / std::exp(s.log_theta);
}

MonotonicityReport lemma_monotonicity_check(const EuclideanLattice& L,
                                            std::span<const double> t_grid,
                                            double eps, std::uint64_t budget) {
  MonotonicityReport rep;
  const int n = L.rank();
  std::vector<double> ts(t_grid.begin(), t_grid.end());
  for (std::size_t i = 0; i + 1 < ts.size(); ++i)
    if (!(ts[i] < ts[i + 1]))
      throw ComputeError("monotonicity check needs a strictly increasing t grid");
  std::vector<double> lt(ts.size());
  double err = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    ThetaValue v = log_theta(L, ts[i], eps, budget);
    lt[i] = v.log_value;
    err = std::max(err, v.abs_error_bound * std::exp(-v.log_value));
  }
  ThetaValue ref = log_theta(L, 1.0, eps, budget);
  for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
    rep.max_decreasing_violation =
        std::max(rep.max_decreasing_violation, lt[i + 1] - lt[i]);
    double fi = lt[i] + 0.5 * n * std::log(ts[i]);
    double fj = lt[i + 1] + 0.5 * n * std::log(ts[i + 1]);
    rep.max_scaled_violation = std::max(rep.max_scaled_violation, fi - fj);
  }
  for (std::size_t i = 0; i < ts.size(); ++i) {
    double excess =
        std::abs(lt[i] - ref.log_value) - 0.5 * n * std::abs(std::log(ts[i]));
    rep.max_offset_violation = std::max(rep.max_offset_violation, excess);
  }
  rep.tolerance = 4.0 * (err + ref.abs_error_bound * std::exp(-ref.log_value)) + 1e-12;
  rep.pass = rep.max_decreasing_violation <= rep.tolerance &&
             rep.max_scaled_violation <= rep.tolerance &&
             rep.max_offset_violation <= rep.tolerance;
  return rep;
}

EuclideanLattice random_spd_lattice(int rank, std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  auto uniform = [&]() {
    // 53-bit mantissa draw, bit-stable across platforms
    return 2.0 * (static_cast<double>(eng() >> 11) * 0x1.0p-53) - 1.0;
  };
  Eigen::MatrixXd A(rank, rank);
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) A(i, j) = uniform();
  Eigen::MatrixXd G(rank, rank);
  for (int i = 0; i < rank; ++i)
    for (int j = i; j < rank; ++j) {
      double s = A.col(i).dot(A.col(j));
      if (i == j) s += 0.1;
      G(i, j) = s;
      G(j, i) = s;
    }
  return make_lattice(std::move(G));
}

}  // namespace thetavol
