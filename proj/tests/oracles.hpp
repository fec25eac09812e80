// Independent reference computations for the test suite.  Everything here is
// deliberately written the slow, obvious way (direct summation, cofactor
// expansion, box scans) and must stay decoupled from the library code paths
// it checks.
#ifndef THETAVOL_TEST_ORACLES_HPP
#define THETAVOL_TEST_ORACLES_HPP

#include <Eigen/Dense>
#include <cmath>
#include <vector>

namespace oracle {

inline constexpr double kPi = 3.14159265358979323846;

// theta1 by plain summation, no functional equation
inline double theta1_direct(double c, int nmax = 200) {
  double s = 1.0;
  for (int n = 1; n <= nmax; ++n) {
    double t = 2.0 * std::exp(-kPi * c * static_cast<double>(n) * n);
    s += t;
    if (t < 1e-320) break;
  }
  return s;
}

inline double theta1_second_moment_direct(double c, int nmax = 200) {
  double s = 0.0;
  for (int n = 1; n <= nmax; ++n) {
    double t = 2.0 * static_cast<double>(n) * n * std::exp(-kPi * c * n * n);
    s += t;
    if (t < 1e-320) break;
  }
  return s;
}

// full box scan of the lattice Gaussian sum: sum over |v_i| <= box
inline double theta_box(const Eigen::MatrixXd& gram, double t, int box) {
  const int n = static_cast<int>(gram.rows());
  std::vector<int> v(n, -box);
  double sum = 0.0;
  while (true) {
    Eigen::VectorXd x(n);
    for (int i = 0; i < n; ++i) x[i] = v[i];
    sum += std::exp(-kPi * t * x.dot(gram * x));
    int i = 0;
    while (i < n && ++v[i] > box) v[i++] = -box;
    if (i == n) break;
  }
  return sum;
}

inline double second_moment_box(const Eigen::MatrixXd& gram, double t, int box) {
  const int n = static_cast<int>(gram.rows());
  std::vector<int> v(n, -box);
  double sum = 0.0;
  while (true) {
    Eigen::VectorXd x(n);
    for (int i = 0; i < n; ++i) x[i] = v[i];
    double q = x.dot(gram * x);
    sum += q * std::exp(-kPi * t * q);
    int i = 0;
    while (i < n && ++v[i] > box) v[i++] = -box;
    if (i == n) break;
  }
  return sum;
}

inline long long unit_count_box(const Eigen::MatrixXd& gram, int box) {
  const int n = static_cast<int>(gram.rows());
  std::vector<int> v(n, -box);
  long long count = 0;
  while (true) {
    Eigen::VectorXd x(n);
    for (int i = 0; i < n; ++i) x[i] = v[i];
    if (x.dot(gram * x) <= 1.0) ++count;
    int i = 0;
    while (i < n && ++v[i] > box) v[i++] = -box;
    if (i == n) break;
  }
  return count;
}

inline double det_cofactor(const Eigen::MatrixXd& m) {
  const int n = static_cast<int>(m.rows());
  if (n == 0) return 1.0;
  if (n == 1) return m(0, 0);
  double det = 0.0;
  for (int j = 0; j < n; ++j) {
    Eigen::MatrixXd minor(n - 1, n - 1);
    for (int r = 1; r < n; ++r) {
      int cc = 0;
      for (int c = 0; c < n; ++c) {
        if (c == j) continue;
        minor(r - 1, cc++) = m(r, c);
      }
    }
    det += ((j % 2 == 0) ? 1.0 : -1.0) * m(0, j) * det_cofactor(minor);
  }
  return det;
}

// Newton forward-difference polynomial through (k0, y0), (k0+1, y1), ...;
// evaluated at integer k.
inline double newton_poly_eval(int k0, const std::vector<double>& ys, int k) {
  std::vector<double> diffs = ys;
  double result = 0.0, binom = 1.0;
  int x = k - k0;
  for (std::size_t level = 0; level < ys.size(); ++level) {
    result += binom * diffs[0];
    binom *= static_cast<double>(x - static_cast<int>(level)) /
             static_cast<double>(level + 1);
    for (std::size_t i = 0; i + 1 < diffs.size() - level; ++i)
      diffs[i] = diffs[i + 1] - diffs[i];
  }
  return result;
}

}  // namespace oracle

#endif
