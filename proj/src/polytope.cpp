#include "thetavol/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace thetavol {

namespace {

long long cross(const LatticePoint& o, const LatticePoint& a, const LatticePoint& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Andrew's monotone chain; returns hull in counterclockwise order without
// collinear interior points.
std::vector<LatticePoint> convex_hull(std::vector<LatticePoint> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const int n = static_cast<int>(pts.size());
  if (n < 3) return pts;
  std::vector<LatticePoint> hull(2 * n);
  int h = 0;
  for (int i = 0; i < n; ++i) {
    while (h >= 2 && cross(hull[h - 2], hull[h - 1], pts[i]) <= 0) --h;
    hull[h++] = pts[i];
  }
  int lower = h + 1;
  for (int i = n - 2; i >= 0; --i) {
    while (h >= lower && cross(hull[h - 2], hull[h - 1], pts[i]) <= 0) --h;
    hull[h++] = pts[i];
  }
  hull.resize(h - 1);
  return hull;
}

long long doubled_area(const std::vector<LatticePoint>& v) {
  long long s = 0;
  const int n = static_cast<int>(v.size());
  for (int i = 0; i < n; ++i) {
    const auto& p = v[i];
    const auto& q = v[(i + 1) % n];
    s += p[0] * q[1] - q[0] * p[1];
  }
  return s;
}

}  // namespace

LatticePolytope LatticePolytope::segment(long long a, long long b) {
  if (a == b) throw ComputeError("segment polytope needs two distinct endpoints");
  if (a > b) std::swap(a, b);
  LatticePolytope P;
  P.dim_ = 1;
  P.vertices_ = {{a, 0}, {b, 0}};
  return P;
}

LatticePolytope LatticePolytope::polygon(std::vector<LatticePoint> points) {
  std::vector<LatticePoint> hull = convex_hull(std::move(points));
  if (hull.size() < 3 || doubled_area(hull) <= 0)
    throw ComputeError("polygon polytope must be full-dimensional");
  // rotate so the lexicographic minimum comes first
  auto it = std::min_element(hull.begin(), hull.end());
  std::rotate(hull.begin(), it, hull.end());
  LatticePolytope P;
  P.dim_ = 2;
  P.vertices_ = std::move(hull);
  return P;
}

long long LatticePolytope::left() const {
  if (dim_ != 1) throw ComputeError("left(): polytope is not a segment");
  return vertices_[0][0];
}

long long LatticePolytope::right() const {
  if (dim_ != 1) throw ComputeError("right(): polytope is not a segment");
  return vertices_[1][0];
}

bool LatticePolytope::contains_dilated(const LatticePoint& p, long long k) const {
  if (dim_ == 1) return k * left() <= p[0] && p[0] <= k * right();
  const int n = static_cast<int>(vertices_.size());
  for (int i = 0; i < n; ++i) {
    const auto& a = vertices_[i];
    const auto& b = vertices_[(i + 1) % n];
    // inward test against the edge from k*a to k*b
    long long c = (b[0] - a[0]) * (p[1] - k * a[1]) - (b[1] - a[1]) * (p[0] - k * a[0]);
    if (c < 0) return false;
  }
  return true;
}

double LatticePolytope::support(std::span<const double> u) const {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& v : vertices_) {
    double s = static_cast<double>(v[0]) * u[0];
    if (dim_ == 2) s += static_cast<double>(v[1]) * u[1];
    best = std::max(best, s);
  }
  return best;
}

double LatticePolytope::euclidean_volume() const {
  if (dim_ == 1) return static_cast<double>(right() - left());
  return 0.5 * static_cast<double>(doubled_area(vertices_));
}

SectionSpace lattice_points(const LatticePolytope& P, int k) {
  if (k < 1) throw ComputeError("lattice_points: k must be >= 1");
  if (P.dim() > 2) throw DimensionUnsupported("only dimensions 1 and 2 are supported");
  SectionSpace S;
  S.polytope = P;
  S.k = k;
  if (P.dim() == 1) {
    for (long long x = k * P.left(); x <= k * P.right(); ++x)
      S.exponents.push_back({x, 0});
    return S;
  }
  long long xmin = std::numeric_limits<long long>::max(), xmax = std::numeric_limits<long long>::min();
  long long ymin = xmin, ymax = xmax;
  for (const auto& v : P.vertices()) {
    xmin = std::min(xmin, k * v[0]);
    xmax = std::max(xmax, k * v[0]);
    ymin = std::min(ymin, k * v[1]);
    ymax = std::max(ymax, k * v[1]);
  }
  for (long long x = xmin; x <= xmax; ++x)
    for (long long y = ymin; y <= ymax; ++y)
      if (P.contains_dilated({x, y}, k)) S.exponents.push_back({x, y});
  return S;
}

double support_function(const LatticePolytope& P, std::span<const double> u) {
  return P.support(u);
}

double geometric_volume(const LatticePolytope& P) {
  double fact = (P.dim() == 1) ? 1.0 : 2.0;
  return fact * P.euclidean_volume();
}

}  // namespace thetavol
