#ifndef THETAVOL_LATTICE_HPP
#define THETAVOL_LATTICE_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <vector>

#include "thetavol/enumeration.hpp"
#include "thetavol/errors.hpp"

namespace thetavol {

// Free Z-module of finite rank with a positive definite Gram matrix.
// The Gram matrix is required to be exactly symmetric; diagonal_hint is set
// when every off-diagonal entry is exactly zero, which unlocks the factored
// theta evaluation (needed for section lattices whose entries span many
// orders of magnitude).
struct EuclideanLattice {
  Eigen::MatrixXd gram;
  bool diagonal_hint = false;

  int rank() const { return static_cast<int>(gram.rows()); }
};

EuclideanLattice make_lattice(Eigen::MatrixXd gram);
EuclideanLattice diagonal_lattice(const Eigen::VectorXd& diag);

// Upper-triangular R with R^T R = G; throws NotPositiveDefinite.
Eigen::MatrixXd cholesky_upper(const Eigen::MatrixXd& gram);

double covolume(const EuclideanLattice& L);
double log_det_gram(const EuclideanLattice& L);
EuclideanLattice dual_lattice(const EuclideanLattice& L);

// theta_L(t) = sum_{v in L} exp(-pi t |v|^2), reported on the log scale with
// a certified absolute error bound on the plain sum.
struct ThetaValue {
  double log_value = 0.0;
  double abs_error_bound = 0.0;
  double truncation_radius_sq = 0.0;
  std::int64_t terms_enumerated = 0;
};

ThetaValue log_theta(const EuclideanLattice& L, double t, double eps,
                     std::uint64_t budget = kDefaultEnumerationBudget);

double h0_theta(const EuclideanLattice& L, double eps = 1e-12,
                std::uint64_t budget = kDefaultEnumerationBudget);
double h1_theta(const EuclideanLattice& L, double eps = 1e-12,
                std::uint64_t budget = kDefaultEnumerationBudget);
double arakelov_degree(const EuclideanLattice& L);
double poisson_residual(const EuclideanLattice& L, double eps = 1e-12,
                        std::uint64_t budget = kDefaultEnumerationBudget);

// Exact count of lattice vectors of norm <= 1 and its logarithm.
std::int64_t unit_ball_count(const EuclideanLattice& L,
                             std::uint64_t budget = kDefaultEnumerationBudget);
double h0_ar(const EuclideanLattice& L,
             std::uint64_t budget = kDefaultEnumerationBudget);

// sum_{v} |v|^2 exp(-pi t |v|^2) and U(t) = 2 pi * second_moment / theta(t).
double second_moment(const EuclideanLattice& L, double t, double eps = 1e-12,
                     std::uint64_t budget = kDefaultEnumerationBudget);
double u_function(const EuclideanLattice& L, double t, double eps = 1e-12,
                  std::uint64_t budget = kDefaultEnumerationBudget);

// Checks that log theta(t) is nonincreasing, that log theta(t) +
// (N/2) log t is nondecreasing, and that |log theta(t) - log theta(1)|
// <= (N/2) |log t| across a grid of t values.  Violations are reported as
// positive excesses; `tolerance` is the certified bound below which a
// violation is numerical noise.
struct MonotonicityReport {
  double max_decreasing_violation = 0.0;
  double max_scaled_violation = 0.0;
  double max_offset_violation = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

MonotonicityReport lemma_monotonicity_check(const EuclideanLattice& L,
                                            std::span<const double> t_grid,
                                            double eps = 1e-12,
                                            std::uint64_t budget = kDefaultEnumerationBudget);

// Seeded well-conditioned SPD instance: G = A^T A + 0.1 I with A uniform in
// [-1,1]^{n x n}; the generator stream is platform independent.
EuclideanLattice random_spd_lattice(int rank, std::uint64_t seed);

}  // namespace thetavol

#endif
