#ifndef THETAVOL_NUMERICS_HPP
#define THETAVOL_NUMERICS_HPP

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

namespace thetavol {

inline constexpr double kPi = 3.14159265358979323846;

// Compensated (Kahan) summation.
class KahanSum {
 public:
  void add(double x) {
    double y = x - comp_;
    double t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
  }
  void scale(double f) {
    sum_ *= f;
    comp_ *= f;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Streaming log-sum-exp accumulator: log(sum_i exp(x_i)) without overflow.
// Terms are accumulated relative to the running maximum with compensation.
class LogSumAccumulator {
 public:
  void add(double x) {
    if (x == -std::numeric_limits<double>::infinity()) return;
    if (empty()) {
      max_ = x;
      sum_.add(1.0);
      return;
    }
    if (x <= max_) {
      sum_.add(std::exp(x - max_));
    } else {
      sum_.scale(std::exp(max_ - x));
      sum_.add(1.0);
      max_ = x;
    }
    ++count_;
  }
  bool empty() const { return max_ == -std::numeric_limits<double>::infinity(); }
  double log_value() const {
    if (empty()) return -std::numeric_limits<double>::infinity();
    return max_ + std::log(sum_.value());
  }

 private:
  double max_ = -std::numeric_limits<double>::infinity();
  KahanSum sum_;
  std::int64_t count_ = 0;
};

double log_sum_exp(const std::vector<double>& xs);

// One-dimensional Gaussian lattice sums.
//   theta1(c)    = sum_{n in Z} exp(-pi c n^2)
//   sigma_sq(c)  = sum_{n in Z} n^2 exp(-pi c n^2) / theta1(c)
// Both switch to the Jacobi functional equation below c = 1 so that the
// direct sums never need more than ~40 terms per evaluation.
double log_theta1(double c);
double theta1_sigma_sq(double c);

// Gauss-Legendre rule on [-1,1]; nodes/weights computed once and cached.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const QuadratureRule& gauss_legendre(int n);

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
  bool converged = true;
  std::int64_t evals = 0;
};

// Adaptive bisection with a 15-point Gauss-Legendre panel rule.  `tol` is an
// absolute tolerance for the whole interval; panels receive a share
// proportional to their length.
QuadResult adaptive_gauss_legendre(const std::function<double(double)>& f,
                                   double a, double b, double tol,
                                   int max_depth = 42);

}  // namespace thetavol

#endif
