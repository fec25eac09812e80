#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "thetavol/energy.hpp"
#include "thetavol/legendre_fenchel.hpp"

using namespace thetavol;

namespace {
const LatticePolytope kSeg = LatticePolytope::segment(0, 1);

ToricWeight bump_weight() {
  return ToricWeight::grid(kSeg, {-0.25, 0.0, 0.25}, {0.0, 0.3, 0.25});
}
}  // namespace

TEST_CASE("conjugate of the support function vanishes on the polytope") {
  ToricWeight can = ToricWeight::canonical(kSeg);
  GridFunction f = sample_weight(can);
  GridFunction g = legendre(f, kSeg, 512);
  CHECK(g.side == GridSide::P);
  for (double v : g.values) CHECK(std::abs(v) <= 1e-12);
}

TEST_CASE("fubini-study conjugate matches the entropy closed form") {
  ToricWeight fs = ToricWeight::fubini_study(kSeg);
  GridFunction g = legendre(sample_weight(fs), kSeg);
  for (double p : {0.25, 0.5, 0.75}) {
    double closed = 0.5 * (p * std::log(p) + (1.0 - p) * std::log(1.0 - p));
    CHECK(g.interpolate(p) == doctest::Approx(closed).epsilon(1e-6));
  }
  CHECK(g.is_convex(1e-10));
}

TEST_CASE("fenchel properties on grids") {
  ToricWeight fs = ToricWeight::fubini_study(kSeg);
  GridFunction f = sample_weight(fs);
  GridFunction g = legendre(f, kSeg);
  GridFunction f2 = legendre(g, f.nodes);
  // biconjugate never exceeds the input, and one more round trip is exact
  for (std::size_t i = 0; i < f.nodes.size(); ++i)
    CHECK(f2.values[i] <= f.values[i] + 1e-12);
  GridFunction g2 = legendre(f2, kSeg);
  GridFunction f4 = legendre(g2, f.nodes);
  for (std::size_t i = 0; i < f.nodes.size(); ++i)
    CHECK(f4.values[i] == doctest::Approx(f2.values[i]).epsilon(1e-12));
  // convex input with slopes in the polytope: biconjugate within grid slack
  for (std::size_t i = 0; i < f.nodes.size(); ++i)
    CHECK(std::abs(f2.values[i] - f.values[i]) <= 2e-4);
}

TEST_CASE("slope range precondition") {
  // a narrow parabola sampled on [-0.2, 0.2] has slopes in [-0.2, 0.2] and
  // cannot bracket the polytope [0, 1]
  GridFunction f;
  f.side = GridSide::U;
  for (int i = 0; i <= 100; ++i) {
    double u = -0.2 + 0.4 * i / 100.0;
    f.nodes.push_back(u);
    f.values.push_back(0.5 * u * u);
  }
  CHECK_THROWS_AS(legendre(f, kSeg), SlopeRangeTooNarrow);
}

TEST_CASE("equilibrium weight of convex catalog weights is the identity") {
  ToricWeight can = ToricWeight::canonical(kSeg);
  GridFunction env = equilibrium_weight(can);
  GridFunction samples = sample_weight(can);
  for (std::size_t i = 0; i < env.nodes.size(); ++i)
    CHECK(env.values[i] == doctest::Approx(samples.values[i]).epsilon(1e-13));

  ToricWeight fs = ToricWeight::fubini_study(kSeg);
  GridFunction env_fs = equilibrium_weight(fs);
  GridFunction samples_fs = sample_weight(fs);
  double worst = 0.0;
  for (std::size_t i = 0; i < env_fs.nodes.size(); ++i)
    worst = std::max(worst,
                     std::abs(env_fs.values[i] - samples_fs.values[i]));
  CHECK(worst <= 1e-8);
}

TEST_CASE("equilibrium weight is idempotent and monotone") {
  ToricWeight bump = bump_weight();
  GridFunction env = equilibrium_weight(bump);
  ToricWeight env_w = weight_from_grid(env, kSeg);
  GridFunction env2 = equilibrium_weight(env_w);
  for (std::size_t i = 0; i < env.nodes.size(); ++i)
    CHECK(env2.interpolate(env.nodes[i]) ==
          doctest::Approx(env.values[i]).epsilon(1e-10));

  ToricWeight fs = ToricWeight::fubini_study(kSeg);
  GridFunction lo = equilibrium_weight(fs);
  GridFunction hi = equilibrium_weight(ToricWeight::shifted(fs, 0.1));
  for (std::size_t i = 0; i < lo.nodes.size(); ++i)
    CHECK(lo.values[i] <= hi.interpolate(lo.nodes[i]) + 1e-12);
}

TEST_CASE("bump envelope has the hand-computed contact structure") {
  // tent of height 0.3 on [-1/4, 1/4] over the support function of [0,1]:
  // the slope-clamped hull rides the chord u/2 + 1/8 between the contact
  // points -1/4 and 1/4
  GridFunction env = equilibrium_weight(bump_weight());
  ToricWeight bump = bump_weight();
  CHECK(env.interpolate(0.0) == doctest::Approx(0.125).epsilon(1e-9));
  CHECK(env.interpolate(-0.25) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(env.interpolate(0.25) == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(env.interpolate(0.1) == doctest::Approx(0.175).epsilon(1e-9));
  for (double u : {-0.3, -0.1, 0.05, 0.2, 0.4}) {
    double uu[1] = {u};
    CHECK(env.interpolate(u) <= bump.eval1(u) + 1e-12);
    CHECK(env.interpolate(u) >= kSeg.support(uu) - 1e-12);
  }
  CHECK(env.is_convex(1e-9));
}

TEST_CASE("equilibrium measure integrals") {
  ToricWeight can = ToricWeight::canonical(kSeg);
  auto f = [](double u) { return u * u + std::sin(u); };
  CHECK(equilibrium_measure_integral(can, [](double) { return 1.0; }) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(equilibrium_measure_integral(can, f) == doctest::Approx(f(0.0)).epsilon(1e-10));

  ToricWeight fs = ToricWeight::fubini_study(kSeg);
  CHECK(equilibrium_measure_integral(fs, [](double u) { return u; }) ==
        doctest::Approx(0.0).epsilon(1e-8));
  // int u^2 dmu_eq = (1/4) int_0^1 log^2(p/(1-p)) dp = pi^2/12
  CHECK(equilibrium_measure_integral(fs, [](double u) { return u * u; }) ==
        doctest::Approx(oracle::kPi * oracle::kPi / 12.0).epsilon(1e-6));
}

TEST_CASE("energy differences") {
  ToricWeight can = ToricWeight::canonical(kSeg);
  ToricWeight fs = ToricWeight::fubini_study(kSeg);
  CHECK(energy_difference(fs, fs) == 0.0);
  CHECK(energy_difference(ToricWeight::shifted(fs, 0.4), fs) ==
        doctest::Approx(0.4).epsilon(1e-12));
  // closed-form pair: 1/2 [ (1/2) log 2 + (1/2 - (1/2) log 2) ] = 1/4
  CHECK(energy_difference(fs, can, 1e-10) == doctest::Approx(0.25).epsilon(1e-8));
  CHECK(energy_difference(can, fs, 1e-10) ==
        doctest::Approx(-energy_difference(fs, can, 1e-10)).epsilon(1e-10));
}

TEST_CASE("arithmetic degrees") {
  ToricWeight can = ToricWeight::canonical(kSeg);
  ToricWeight fs = ToricWeight::fubini_study(kSeg);
  CHECK(arithmetic_degree(can) == 0.0);
  CHECK(arithmetic_degree(fs, 1e-10) == doctest::Approx(0.5).epsilon(1e-7));
  CHECK(arithmetic_degree_via_slopes(fs) == doctest::Approx(0.5).epsilon(1e-6));
  for (double c : {0.1, 0.37})
    CHECK(arithmetic_degree(ToricWeight::shifted(can, c)) ==
          doctest::Approx(2.0 * c).epsilon(1e-10));
  // canonical-factor example: deg on O(2) picks up the volume factor
  LatticePolytope seg2 = LatticePolytope::segment(0, 2);
  CHECK(arithmetic_degree(
            ToricWeight::shifted(ToricWeight::canonical(seg2), 0.25)) ==
        doctest::Approx(2.0 * 0.25 * 2.0).epsilon(1e-10));
}

TEST_CASE("degrees of the bump weight are exact atom sums") {
  ToricWeight bump = bump_weight();
  // MA(psi) has jumps (1.2, -1.4, 1.2) at (-1/4, 0, 1/4) and psi - Psi is
  // (0, 0.3, 0) there; the canonical current contributes 0.3 at the origin
  CHECK(arithmetic_degree(bump) == doctest::Approx(-0.12).epsilon(1e-12));
  CHECK(degree_of_equilibrium(bump) == doctest::Approx(0.125).epsilon(1e-6));
}

TEST_CASE("variation formula cocycle") {
  ToricWeight can = ToricWeight::canonical(kSeg);
  ToricWeight fs = ToricWeight::fubini_study(kSeg);
  ToricWeight sh = ToricWeight::shifted(can, 0.2);
  ToricWeight bump = bump_weight();
  auto mixed = [&](const ToricWeight& w1, const ToricWeight& w0) {
    auto diff = [&](double u) { return w1.eval1(u) - w0.eval1(u); };
    return integrate_current(diff, ma_current(w0), 1e-10) +
           integrate_current(diff, ma_current(w1), 1e-10);
  };
  struct Pair {
    const ToricWeight *a, *b;
  };
  for (auto [a, b] : {Pair{&fs, &sh}, Pair{&bump, &fs}}) {
    double direct = arithmetic_degree(*a, 1e-10) - arithmetic_degree(*b, 1e-10);
    CHECK(direct == doctest::Approx(mixed(*a, *b)).epsilon(1e-6));
  }
}

TEST_CASE("hodge gap sanity at small scale") {
  ToricWeight fs = ToricWeight::fubini_study(kSeg);
  ToricWeight bump = bump_weight();
  RadialMeasure mfs = ma_measure(fs);
  std::vector<int> ks = {8, 12, 16, 20, 24};
  HodgeReport rep = hodge_gap(kSeg, bump, mfs, ks);
  CHECK(rep.deg_w == doctest::Approx(-0.12).epsilon(1e-10));
  CHECK(rep.deg_eq == doctest::Approx(0.125).epsilon(1e-6));
  CHECK(rep.gap_hodge > 0.0);
  CHECK(rep.envelope_gap == doctest::Approx(0.245).epsilon(1e-6));
}

TEST_CASE("grid function convexity defect") {
  GridFunction f;
  f.nodes = {0.0, 1.0, 2.0, 3.0};
  f.values = {0.0, 1.0, 2.5, 4.5};
  CHECK(f.is_convex());
  f.values = {0.0, 1.5, 2.0, 4.5};
  CHECK_FALSE(f.is_convex());
  CHECK(f.convexity_defect() == doctest::Approx(1.0));
}
