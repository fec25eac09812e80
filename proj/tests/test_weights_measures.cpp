#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "thetavol/measures.hpp"
#include "thetavol/weights.hpp"

using namespace thetavol;

namespace {
const LatticePolytope kSeg = LatticePolytope::segment(0, 1);
}

TEST_CASE("canonical weight evaluation") {
  ToricWeight can = ToricWeight::canonical(kSeg);
  CHECK(can.eval1(0.7) == doctest::Approx(0.7));
  CHECK(can.eval1(-2.0) == 0.0);
}

TEST_CASE("fubini-study weight evaluation") {
  ToricWeight fs = ToricWeight::fubini_study(kSeg);
  CHECK(fs.eval1(0.0) == doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-15));
  // psi - Psi stays within [0, log(#terms)/2] across a wide grid
  for (int i = 0; i <= 200; ++i) {
    double u = -20.0 + 0.2 * i;
    double gap = fs.eval1(u) - std::max(0.0, u);
    CHECK(gap >= -1e-14);
    CHECK(gap <= 0.5 * std::log(2.0) + 1e-14);
  }
}

TEST_CASE("shifted weights add an exact constant") {
  ToricWeight fs = ToricWeight::fubini_study(kSeg);
  ToricWeight sh = ToricWeight::shifted(fs, 0.37);
  for (double u : {-5.0, -0.3, 0.0, 1.7, 12.0}) {
    CHECK(sh.eval1(u) - fs.eval1(u) ==
          doctest::Approx(0.37).epsilon(1e-14));
  }
  CHECK(sh.total_shift() == 0.37);
  CHECK(ToricWeight::shifted(sh, 0.1).total_shift() == doctest::Approx(0.47));
  CHECK(sh.shift_base().kind() == ToricWeight::Kind::MonomialExp);
}

TEST_CASE("monomial weight derivatives") {
  ToricWeight w = ToricWeight::monomial_exp(LatticePolytope::segment(0, 2),
                                            {{0, 0}, {1, 0}, {2, 0}},
                                            {1.0, 0.5, 2.0});
  for (double u : {-1.2, 0.0, 0.8}) {
    double h = 1e-5;
    double fd1 = (w.eval1(u + h) - w.eval1(u - h)) / (2.0 * h);
    double fd2 = (w.eval1(u + h) - 2.0 * w.eval1(u) + w.eval1(u - h)) / (h * h);
    CHECK(w.deriv1(u) == doctest::Approx(fd1).epsilon(1e-7));
    CHECK(w.deriv2(u) == doctest::Approx(fd2).epsilon(1e-4));
    CHECK(w.deriv2(u) >= -1e-8);
  }
}

TEST_CASE("monomial support hull must match the polytope") {
  CHECK_THROWS_AS(
      ToricWeight::monomial_exp(kSeg, {{0, 0}}, {1.0}), ComputeError);
  CHECK_THROWS_AS(
      ToricWeight::monomial_exp(kSeg, {{0, 0}, {1, 0}}, {1.0, -2.0}), ComputeError);
}

TEST_CASE("grid weights interpolate and extend canonically") {
  ToricWeight bump =
      ToricWeight::grid(kSeg, {-0.25, 0.0, 0.25}, {0.0, 0.3, 0.25});
  CHECK(bump.eval1(0.0) == doctest::Approx(0.3));
  CHECK(bump.eval1(-0.125) == doctest::Approx(0.15));
  CHECK(bump.eval1(-3.0) == 0.0);                      // support function outside
  CHECK(bump.eval1(2.0) == doctest::Approx(2.0));
  // continuity at the box edges
  CHECK(bump.eval1(0.25 + 1e-12) == doctest::Approx(bump.eval1(0.25)).epsilon(1e-9));
}

TEST_CASE("blend weights are affine in the endpoints") {
  ToricWeight fs = ToricWeight::fubini_study(kSeg);
  ToricWeight can = ToricWeight::canonical(kSeg);
  ToricWeight mid = ToricWeight::blend(can, fs, 0.25);
  for (double u : {-1.0, 0.2, 4.0}) {
    CHECK(mid.eval1(u) ==
          doctest::Approx(0.75 * can.eval1(u) + 0.25 * fs.eval1(u)).epsilon(1e-15));
  }
}

TEST_CASE("monge-ampere measures") {
  ToricWeight can = ToricWeight::canonical(kSeg);
  RadialMeasure mcan = ma_measure(can);
  REQUIRE(mcan.atoms().size() == 1);
  CHECK(mcan.atoms()[0].location[0] == 0.0);
  CHECK(mcan.atoms()[0].weight == 1.0);
  CHECK_FALSE(mcan.has_density());

  ToricWeight fs = ToricWeight::fubini_study(kSeg);
  RadialMeasure mfs = ma_measure(fs);
  REQUIRE(mfs.has_density());
  for (double u : {-2.0, 0.0, 1.3}) {
    double e = std::exp(2.0 * u);
    double expect = 2.0 * e / ((1.0 + e) * (1.0 + e));
    CHECK(mfs.density_at(u) == doctest::Approx(expect).epsilon(1e-13));
  }
  CHECK(mfs.total_mass() == doctest::Approx(1.0).epsilon(1e-9));

  RadialMeasure msh = ma_measure(ToricWeight::shifted(fs, 0.3));
  CHECK(msh.density_at(0.4) == doctest::Approx(mfs.density_at(0.4)).epsilon(1e-15));

  ToricWeight bump =
      ToricWeight::grid(kSeg, {-0.25, 0.0, 0.25}, {0.0, 0.3, 0.25});
  CHECK_THROWS_AS(ma_measure(bump), WeightNotSmooth);
}

TEST_CASE("integrate against catalog measures") {
  ToricWeight fs = ToricWeight::fubini_study(kSeg);
  RadialMeasure haar = RadialMeasure::haar(1);
  RadialMeasure mfs = ma_measure(fs);
  ToricWeight two = ToricWeight::monomial_exp(kSeg, {{0, 0}, {1, 0}}, {0.5, 2.0});
  RadialMeasure mtwo = ma_measure(two);

  for (const RadialMeasure* mu : {&haar, &mfs, &mtwo}) {
    CHECK(integrate([](double) { return 1.0; }, *mu, 1e-11) ==
          doctest::Approx(1.0).epsilon(1e-10));
  }
  CHECK(integrate([](double u) { return u; }, haar, 1e-12) == 0.0);

  // substitution oracle: int e^{2u - 2 psi} dMA_FS = int_0^1 s ds = 1/2
  double v = integrate(
      [&](double u) { return std::exp(2.0 * (u - fs.eval1(u))); }, mfs, 1e-10);
  CHECK(v == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("tail domination is enforced") {
  ToricWeight fs = ToricWeight::fubini_study(kSeg);
  RadialMeasure mfs = ma_measure(fs);
  // the FS density decays like e^{-2|u|}; growth at rate 2 is not dominated
  CHECK_THROWS_AS(integrate([](double u) { return std::exp(2.0 * std::abs(u)); },
                            mfs, 1e-9, 2.0),
                  TailNotDominated);
}

TEST_CASE("ma currents carry the full mass vol(L)") {
  ToricWeight fs = ToricWeight::fubini_study(kSeg);
  ToricWeight can = ToricWeight::canonical(kSeg);
  ToricWeight bump =
      ToricWeight::grid(kSeg, {-0.25, 0.0, 0.25}, {0.0, 0.3, 0.25});
  ToricWeight blend = ToricWeight::blend(can, fs, 0.4);
  auto one = [](double) { return 1.0; };
  for (const ToricWeight* w : {&fs, &can, &bump, &blend}) {
    MaCurrent cur = ma_current(*w);
    CHECK(integrate_current(one, cur, 1e-10) == doctest::Approx(1.0).epsilon(1e-8));
  }
  // piecewise-linear curvature is atomic with the hand-computed jumps
  MaCurrent cb = ma_current(bump);
  REQUIRE(cb.atoms.size() == 3);
  CHECK(cb.atoms[0].second == doctest::Approx(1.2));
  CHECK(cb.atoms[1].second == doctest::Approx(-1.4));
  CHECK(cb.atoms[2].second == doctest::Approx(1.2));
}

TEST_CASE("weight conjugate") {
  ToricWeight fs = ToricWeight::fubini_study(kSeg);
  for (double p : {0.25, 0.5, 0.75}) {
    double closed = 0.5 * (p * std::log(p) + (1.0 - p) * std::log(1.0 - p));
    CHECK(fs.conjugate(p) == doctest::Approx(closed).epsilon(1e-10));
  }
  ToricWeight can = ToricWeight::canonical(kSeg);
  CHECK(can.conjugate(0.5) == doctest::Approx(0.0).epsilon(1e-12));
}
