#ifndef THETAVOL_ENUMERATION_HPP
#define THETAVOL_ENUMERATION_HPP

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <vector>

#include "thetavol/errors.hpp"

namespace thetavol {

inline constexpr std::uint64_t kDefaultEnumerationBudget = 10'000'000;

// Fincke-Pohst traversal of {v in Z^N : v^T G v <= bound} given the upper
// Cholesky factor R (G = R^T R).  Coordinates are fixed from the last row
// upward; at level i the residual quadratic form is an interval in v_i.
// visit(v, q) is called once per lattice point with q = v^T G v.  Throws
// EnumerationBudgetExceeded when more than `budget` points are visited.
template <class Visitor>
void enumerate_ellipsoid(const Eigen::MatrixXd& chol_upper, double bound,
                         std::uint64_t budget, Visitor&& visit) {
  const int n = static_cast<int>(chol_upper.rows());
  if (bound < 0.0) return;
  std::vector<long long> v(std::max(n, 1), 0);
  if (n == 0) {
    visit(std::vector<long long>{}, 0.0);
    return;
  }
  std::vector<long long> vmax(n, 0);
  std::vector<double> partial(n + 1, 0.0);  // partial[i] = sum of squares for levels >= i
  std::vector<double> center(n, 0.0);
  std::uint64_t visited = 0;
  const double slack = 1e-9 * (1.0 + bound);

  auto set_range = [&](int i) -> bool {
    double inner = 0.0;
    for (int j = i + 1; j < n; ++j) inner += chol_upper(i, j) * static_cast<double>(v[j]);
    double rem = bound + slack - partial[i + 1];
    if (rem < 0.0) return false;
    double rii = chol_upper(i, i);
    double w = std::sqrt(rem) / rii;
    double c = -inner / rii;
    center[i] = inner;
    v[i] = static_cast<long long>(std::ceil(c - w - 1e-12 * (1.0 + std::abs(c) + w)));
    vmax[i] = static_cast<long long>(std::floor(c + w + 1e-12 * (1.0 + std::abs(c) + w)));
    return v[i] <= vmax[i];
  };

  int i = n - 1;
  if (!set_range(i)) return;
  while (true) {
    if (v[i] > vmax[i]) {
      ++i;
      if (i == n) return;
      ++v[i];
      continue;
    }
    double y = chol_upper(i, i) * static_cast<double>(v[i]) + center[i];
    double q = partial[i + 1] + y * y;
    if (q > bound + slack) {
      ++v[i];
      continue;
    }
    if (i == 0) {
      if (++visited > budget)
        throw EnumerationBudgetExceeded("lattice enumeration exceeded budget of " +
                                        std::to_string(budget) + " vectors");
      visit(static_cast<const std::vector<long long>&>(v), q);
      ++v[0];
    } else {
      partial[i] = q;
      --i;
      if (!set_range(i)) {
        ++i;
        ++v[i];
      }
    }
  }
}

}  // namespace thetavol

#endif
