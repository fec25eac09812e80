#include "thetavol/numerics.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "thetavol/errors.hpp"

namespace thetavol {

double log_sum_exp(const std::vector<double>& xs) {
  LogSumAccumulator acc;
  for (double x : xs) acc.add(x);
  return acc.log_value();
}

double log_theta1(double c) {
  if (!(c > 0.0)) throw ComputeError("log_theta1: argument must be positive");
  if (c < 1.0) return -0.5 * std::log(c) + log_theta1(1.0 / c);
  KahanSum s;
  s.add(1.0);
  for (int n = 1; n <= 40; ++n) {
    double term = 2.0 * std::exp(-kPi * c * static_cast<double>(n) * n);
    if (term < 1e-320) break;
    s.add(term);
  }
  return std::log(s.value());
}

double theta1_sigma_sq(double c) {
  if (!(c > 0.0)) throw ComputeError("theta1_sigma_sq: argument must be positive");
  // Differentiating theta(c) = c^{-1/2} theta(1/c) gives
  //   sigma_sq(c) = 1/(2 pi c) - sigma_sq(1/c)/c^2.
  if (c < 1.0) return 1.0 / (2.0 * kPi * c) - theta1_sigma_sq(1.0 / c) / (c * c);
  KahanSum num, den;
  den.add(1.0);
  for (int n = 1; n <= 40; ++n) {
    double e = std::exp(-kPi * c * static_cast<double>(n) * n);
    if (e < 1e-320) break;
    den.add(2.0 * e);
    num.add(2.0 * static_cast<double>(n) * n * e);
  }
  return num.value() / den.value();
}

namespace {

QuadratureRule compute_gauss_legendre(int n) {
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * pp * pp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

std::map<int, QuadratureRule> g_rules;
std::mutex g_rules_mutex;

double gl_panel(const QuadratureRule& rule, const std::function<double(double)>& f,
                double a, double b, std::int64_t* evals) {
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  KahanSum s;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    s.add(rule.weights[i] * f(mid + half * rule.nodes[i]));
    ++*evals;
  }
  return half * s.value();
}

void adaptive_rec(const QuadratureRule& rule, const std::function<double(double)>& f,
                  double a, double b, double whole, double tol_density, int depth,
                  int max_depth, QuadResult* out) {
  double mid = 0.5 * (a + b);
  double left = gl_panel(rule, f, a, mid, &out->evals);
  double right = gl_panel(rule, f, mid, b, &out->evals);
  double diff = std::abs(left + right - whole);
  if (diff <= tol_density * (b - a) || depth >= max_depth) {
    out->value += left + right;
    out->error_estimate += diff;
    if (depth >= max_depth && diff > tol_density * (b - a)) out->converged = false;
    return;
  }
  adaptive_rec(rule, f, a, mid, left, tol_density, depth + 1, max_depth, out);
  adaptive_rec(rule, f, mid, b, right, tol_density, depth + 1, max_depth, out);
}

}  // namespace

const QuadratureRule& gauss_legendre(int n) {
  std::lock_guard<std::mutex> lock(g_rules_mutex);
  auto it = g_rules.find(n);
  if (it == g_rules.end()) it = g_rules.emplace(n, compute_gauss_legendre(n)).first;
  return it->second;
}

QuadResult adaptive_gauss_legendre(const std::function<double(double)>& f,
                                   double a, double b, double tol, int max_depth) {
  QuadResult out;
  if (!(b > a)) return out;
  const QuadratureRule& rule = gauss_legendre(15);
  double whole = gl_panel(rule, f, a, b, &out.evals);
  adaptive_rec(rule, f, a, b, whole, tol / (b - a), 0, max_depth, &out);
  return out;
}

}  // namespace thetavol
