#ifndef THETAVOL_POLYTOPE_HPP
#define THETAVOL_POLYTOPE_HPP

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "thetavol/errors.hpp"

namespace thetavol {

using LatticePoint = std::array<long long, 2>;  // second coordinate unused when n = 1

// Full-dimensional lattice polytope in dimension 1 or 2.  Vertices are
// canonicalized on construction: increasing order for a segment,
// counterclockwise starting at the lexicographic minimum for a polygon.
// Membership tests are exact integer arithmetic.
class LatticePolytope {
 public:
  static LatticePolytope segment(long long a, long long b);
  static LatticePolytope polygon(std::vector<LatticePoint> points);

  int dim() const { return dim_; }
  const std::vector<LatticePoint>& vertices() const { return vertices_; }

  // n = 1 accessors
  long long left() const;
  long long right() const;

  bool contains_dilated(const LatticePoint& p, long long k) const;
  double support(std::span<const double> u) const;
  double euclidean_volume() const;  // length (n=1) or area (n=2)

  bool operator==(const LatticePolytope& other) const {
    return dim_ == other.dim_ && vertices_ == other.vertices_;
  }

 private:
  int dim_ = 0;
  std::vector<LatticePoint> vertices_;
};

// Monomial basis of the sections at tensor power k: the points of
// (k Delta) cap Z^n in lexicographic order.
struct SectionSpace {
  LatticePolytope polytope;
  int k = 1;
  std::vector<LatticePoint> exponents;

  int size() const { return static_cast<int>(exponents.size()); }
};

SectionSpace lattice_points(const LatticePolytope& P, int k);
double support_function(const LatticePolytope& P, std::span<const double> u);

// n! times the Euclidean volume, i.e. the leading Ehrhart normalization:
// N_k * n! / k^n converges to this value.
double geometric_volume(const LatticePolytope& P);

}  // namespace thetavol

#endif
