#ifndef THETAVOL_SECTIONS_HPP
#define THETAVOL_SECTIONS_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <vector>

#include "thetavol/lattice.hpp"
#include "thetavol/measures.hpp"
#include "thetavol/polytope.hpp"
#include "thetavol/weights.hpp"

namespace thetavol {

// Gram data of the monomial basis {chi^m} of H^0(X, kL) under
// <s,s'> = int s sbar e^{-2k phi} dmu.  Torus invariance makes the matrix
// exactly diagonal in this basis, so only the diagonal is stored; the dense
// code path exists as a validation oracle.
struct GramData {
  SectionSpace space;
  Eigen::VectorXd diag;
  Eigen::VectorXd entry_error;
};

// ||chi^m(x)||^2_{k phi} = e^{2<m,u> - 2k psi(u)} at the torus orbit
// representative with log coordinate u.
Eigen::VectorXd eval_diag(const SectionSpace& S, const ToricWeight& w,
                          std::span<const double> u);

GramData gram_matrix(const SectionSpace& S, const RadialMeasure& mu,
                     const ToricWeight& w, double eps_rel = 1e-10);

// Bergman distortion rho(mu, k phi)(x) = sum_m ||chi^m(x)||^2 / M_mm.
double rho(const GramData& G, const ToricWeight& w, std::span<const double> u);

// Theta distortion at scale t:
//   Theta(t; x) = 2 pi sum_a (a^T C a) e^{-pi t a^T M a} / sum_a e^{-pi t a^T M a}
// evaluated through the diagonal factorization (cross terms vanish by odd
// symmetry): Theta = 2 pi sum_m C_mm sigma^2(t M_mm).
double theta_distortion(const GramData& G, const ToricWeight& w,
                        std::span<const double> u, double t);

// Dense validation path for arbitrary SPD M and PSD C (N <= 12 in practice).
double theta_distortion_dense(const Eigen::MatrixXd& M, const Eigen::MatrixXd& C,
                              double t, double eps,
                              std::uint64_t budget = kDefaultEnumerationBudget);

// Relative residual of the derivative-of-Poisson matrix identity
//   sum_v (v^T C v) e^{-pi v^T M v}
//     = Tr(M^{-1}C)/(2 pi) sum_v e^{-pi v^T M v}
//       - det(M)^{-1/2} sum_a (a^T M^{-1} C M^{-1} a) e^{-pi a^T M^{-1} a},
// both sides evaluated by direct enumeration.
double theta_identity_residual(const Eigen::MatrixXd& M, const Eigen::MatrixXd& C,
                               double eps = 1e-12,
                               std::uint64_t budget = kDefaultEnumerationBudget);

EuclideanLattice section_lattice(const GramData& G);
double section_h0_theta(const GramData& G);

struct UIntegralCheck {
  double lhs = 0.0;   // int Theta(t; u) dmu by quadrature
  double rhs = 0.0;   // U(t) of the section lattice
  double bound = 0.0; // N_k / t
  double rel_gap = 0.0;
};

UIntegralCheck u_integral_check(const SectionSpace& S, const RadialMeasure& mu,
                                const ToricWeight& w, double t, double eps = 1e-9);

struct ScanRow {
  int k = 0;
  int N_k = 0;
  double h0_theta = 0.0;
  double chi_hat = 0.0;
  double v_k = 0.0;
  double chi_k = 0.0;
  double sup_rho = 0.0;
  double theta_over_rho_max = 0.0;
};

struct ExtrapolationFit {
  double v_infinity = 0.0, v_slope = 0.0, v_curv = 0.0;
  double chi_infinity = 0.0, chi_slope = 0.0, chi_curv = 0.0;
  int points_used = 0;
};

struct VolumeScan {
  std::vector<ScanRow> rows;
  ExtrapolationFit fit;
};

struct ScanOptions {
  std::vector<double> u_grid;  // evaluation grid for sup_rho and Theta/rho
  double gram_eps = 1e-10;
  int jobs = 1;
};

std::vector<double> default_u_grid();  // 41 points on [-5, 5]

// Per-k table of section-lattice invariants with the normalizations
//   v_k  = h0_theta (n+1)!/k^{n+1},   chi_k = chi_hat (n+1)!/k^{n+1},
// plus a least-squares fit v_k ~ v_inf + a/k + b/k^2 on the last five rows.
VolumeScan volume_scan(const LatticePolytope& P, const ToricWeight& w,
                       const RadialMeasure& mu, std::span<const int> k_list,
                       const ScanOptions& opts = {});

struct VariationCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;  // relative
};

// Difference of theta invariants along the affine path of weights against the
// integrated theta distortion, with Gauss quadrature in the path parameter.
VariationCheck variation_identity_check(const LatticePolytope& P, const ToricWeight& w0,
                                        const ToricWeight& w1, const RadialMeasure& mu,
                                        int k, int s_nodes, double eps = 1e-9);

struct SupNormBracket {
  double lower = 0.0;
  double upper = 0.0;
};

// sup over the surface |z| = e^u, angle theta of ||sum_m a_m chi^m||_{k psi},
// by branch and bound over (u, theta) rectangles with Lipschitz pruning and
// the triangle-inequality cap sum |a_m| e^{k psi*(m/k)}.  n = 1 only.
SupNormBracket sup_norm(const SectionSpace& S, const ToricWeight& w,
                        std::span<const double> coeffs, double tol_rel = 1e-6,
                        std::uint64_t node_budget = 400000);

struct SupTheta {
  double log_value = 0.0;
  double error_bound = 0.0;  // on the log scale
};

// log sum_v e^{-pi ||v||_sup^2} for small section spaces, enumerating inside
// the L2 ellipsoid (||.||_sup >= ||.||_L2 for a probability measure) with the
// dominant vectors resolved by branch and bound and the remainder bracketed.
SupTheta sup_h0_theta_smallk(const SectionSpace& S, const RadialMeasure& mu,
                             const ToricWeight& w, double tail_eps = 1e-5,
                             std::uint64_t budget = kDefaultEnumerationBudget);

struct BernsteinMarkovFit {
  double epsilon = 0.0;  // growth rate of log sup rho^{1/2}
  double C = 0.0;        // log-scale offset, majorizing every scanned k
  std::vector<std::pair<int, double>> sup_rho;
};

BernsteinMarkovFit bernstein_markov_fit(const LatticePolytope& P, const ToricWeight& w,
                                        const RadialMeasure& mu,
                                        std::span<const int> k_list,
                                        std::span<const double> u_grid,
                                        double gram_eps = 1e-10);

}  // namespace thetavol

#endif
