#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "quadfold/rotation.hpp"
#include "quadfold/vertex.hpp"

using namespace quadfold;
using oracle::deg;
using oracle::rad;

namespace {

std::array<double, 4> arr(const Eigen::Vector4d& v) { return {v[0], v[1], v[2], v[3]}; }

Vertex4 vdeg(double a, double b, double c, double d) { return Vertex4::from_degrees(a, b, c, d); }

}  // namespace

TEST_CASE("xi for the reference vertex") {
  const Vertex4 v = vdeg(80, 95, 75, 110);
  CHECK(deg(xi_of(v, rad(60.0))) == doctest::Approx(120.37547774262465).epsilon(1e-12));
}

TEST_CASE("generic branch 1 closes the loop") {
  const Vertex4 v = vdeg(80, 95, 75, 110);
  const auto s = solve_generic(v, rad(60.0), BranchId::Branch1);
  CHECK(oracle::closure(arr(v.alpha()), arr(s.rho)) < 1e-9);
  CHECK(deg(s.rho[1]) == doctest::Approx(-6.005824085908318).epsilon(1e-10));
  CHECK(deg(s.rho[2]) == doctest::Approx(62.64036683768512).epsilon(1e-10));
  CHECK(deg(s.rho[3]) == doctest::Approx(6.124292072720915).epsilon(1e-10));
  CHECK(deg(s.xi) == doctest::Approx(120.37547774262465).epsilon(1e-12));
}

TEST_CASE("generic branch 2 closes the loop") {
  const Vertex4 v = vdeg(80, 95, 75, 110);
  const auto iv = fold_interval(v, BranchId::Branch2);
  // At 60 degrees crease 4 would already have passed through the fully
  // folded position.
  CHECK(iv.hi < rad(60.0));
  CHECK_THROWS_AS(solve_generic(v, rad(60.0), BranchId::Branch2), Error);
  const auto s = solve_generic(v, 0.9 * iv.hi, BranchId::Branch2);
  CHECK(oracle::closure(arr(v.alpha()), arr(s.rho)) < 1e-9);
  CHECK(s.rho[0] * s.rho[2] < 0);
  const auto e = solve_generic(v, iv.hi, BranchId::Branch2);
  CHECK(std::abs(e.lifted.cwiseAbs().maxCoeff() - kPi<double>) < 1e-9);
}

TEST_CASE("negative rho1 gives the point-symmetric state") {
  const Vertex4 v = vdeg(80, 95, 75, 110);
  for (auto b : {BranchId::Branch1, BranchId::Branch2}) {
    const auto p = solve_generic(v, rad(40.0), b);
    const auto m = solve_generic(v, rad(-40.0), b);
    CHECK((p.lifted + m.lifted).norm() < 1e-14);
  }
}

TEST_CASE("flat state is exactly zero") {
  const Vertex4 v = vdeg(80, 95, 75, 110);
  for (auto b : {BranchId::Branch1, BranchId::Branch2})
    CHECK(solve_generic(v, 0.0, b).rho.norm() == 0.0);
}

TEST_CASE("straight-line vertex, curved branch") {
  const Vertex4 v = vdeg(70, 80, 100, 110);
  CHECK(classify(v).tag == VertexCase::StraightLine);
  const auto s = solve_straightline(v, rad(30.0), BranchId::Branch2);
  CHECK(deg(s.rho[1]) == doctest::Approx(-88.99766430456751).epsilon(1e-10));
  CHECK(deg(s.rho[2]) == doctest::Approx(-30.0).epsilon(1e-12));
  CHECK(deg(s.rho[3]) == doctest::Approx(-94.53757428707468).epsilon(1e-10));
  CHECK(oracle::closure(arr(v.alpha()), arr(s.rho)) < 1e-9);
}

TEST_CASE("straight-line vertex, line branch") {
  const Vertex4 v = vdeg(70, 80, 100, 110);
  const auto s = solve_straightline(v, rad(30.0), BranchId::LineSegment1);
  CHECK(s.rho[0] == doctest::Approx(rad(30.0)));
  CHECK(s.rho[2] == doctest::Approx(rad(30.0)));
  CHECK(s.rho[1] == 0.0);
  CHECK(s.rho[3] == 0.0);
  CHECK(solve_straightline(v, rad(30.0), BranchId::Branch1).rho == s.rho);
}

TEST_CASE("straight line along c2-c4 uses the shifted form") {
  // c2 and c4 collinear: alpha3 + alpha4 = pi.
  const Vertex4 v = vdeg(100, 80, 70, 110);
  const auto c = classify(v);
  CHECK(c.tag == VertexCase::StraightLine);
  CHECK(c.canonical_shift == 1);
  BranchCurve<double> curve(v, BranchId::Branch1);
  for (double t : {-50.0, -10.0, 5.0, 35.0}) {
    const auto s = curve.solve_from(0, rad(t));
    CHECK(oracle::closure(arr(v.alpha()), arr(s.rho)) < 1e-9);
    CHECK(s.rho[0] * s.rho[2] >= 0);
  }
  BranchCurve<double> line(v, BranchId::LineSegment2);
  const auto s = line.solve_from(1, rad(25.0));
  CHECK(s.rho[0] == 0.0);
  CHECK(s.rho[3] == doctest::Approx(rad(25.0)));
  CHECK_THROWS_AS(line.solve_from(0, rad(10.0)), Error);
}

TEST_CASE("flat-foldable closed forms") {
  const Vertex4 v = vdeg(60, 70, 120, 110);
  CHECK(classify(v).flat_foldable);
  const auto s1 = solve_flatfoldable(v, rad(90.0), BranchId::Branch1);
  CHECK(deg(s1.rho[1]) == doctest::Approx(10.9859975243397).epsilon(1e-10));
  CHECK(s1.rho[2] == doctest::Approx(s1.rho[0]));
  CHECK(s1.rho[3] == doctest::Approx(-s1.rho[1]));
  const auto s2 = solve_flatfoldable(v, rad(90.0), BranchId::Branch2);
  CHECK(deg(s2.rho[1]) == doctest::Approx(-134.02352096166075).epsilon(1e-10));
  CHECK(s2.rho[3] == doctest::Approx(s2.rho[1]));
  CHECK(s2.rho[2] == doctest::Approx(-s2.rho[0]));
  // Spherical-trigonometry and tangent-half forms agree.
  for (double t = -170; t <= 170; t += 17) {
    for (auto b : {BranchId::Branch1, BranchId::Branch2}) {
      const auto g = solve_generic(v, rad(t), b);
      const auto f = solve_flatfoldable(v, rad(t), b);
      for (int k = 0; k < 4; ++k) CHECK(angle_difference(g.rho[k], f.rho[k]) < 1e-9);
    }
  }
}

TEST_CASE("flat-foldable degenerate square vertex") {
  CHECK_THROWS_AS(solve_flatfoldable(vdeg(90, 90, 90, 90), 0.3, BranchId::Branch1), Error);
}

TEST_CASE("classification") {
  CHECK(classify(vdeg(90, 90, 90, 90)).tag == VertexCase::DoubleCollinear);
  CHECK(classify(vdeg(180, 60, 60, 60)).tag == VertexCase::AdjacentCollinear);
  CHECK(classify(vdeg(200, 60, 50, 50)).tag == VertexCase::Trivial);
  CHECK(classify(vdeg(80, 95, 75, 110)).tag == VertexCase::Generic);
  const auto near = classify(Vertex4(Eigen::Vector4d(rad(70), rad(80), rad(100) + 5e-7, rad(110) - 5e-7)));
  CHECK(near.tag == VertexCase::Generic);
  CHECK_FALSE(near.warnings.empty());
  const auto snapped =
      classify(Vertex4(Eigen::Vector4d(rad(70), rad(80), rad(100) + 5e-7, rad(110) - 5e-7)), {}, true);
  CHECK(snapped.tag == VertexCase::StraightLine);
  CHECK_THROWS_AS(vdeg(90, 90, 90, 80), Error);
  CHECK_THROWS_AS(solve_generic(vdeg(70, 80, 100, 110), 0.2, BranchId::Branch1), Error);
  CHECK_THROWS_AS(solve_straightline(vdeg(80, 95, 75, 110), 0.2, BranchId::Branch1), Error);
}

TEST_CASE("adjacent collinear folds along one line") {
  const Vertex4 v = vdeg(180, 60, 60, 60);
  BranchCurve<double> c(v, BranchId::LineSegment1);
  const auto s = c.solve_from(0, rad(40.0));
  CHECK(oracle::closure(arr(v.alpha()), arr(s.rho)) < 1e-12);
  CHECK(s.rho[3] == doctest::Approx(rad(40.0)));
  CHECK(s.rho[1] == 0.0);
  CHECK_THROWS_AS(BranchCurve<double>(v, BranchId::Branch1), Error);
}

TEST_CASE("random generic vertices satisfy closure and branch signs") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const auto a = oracle::random_generic(rng);
    const Vertex4 v(Eigen::Vector4d(a[0], a[1], a[2], a[3]));
    for (auto b : {BranchId::Branch1, BranchId::Branch2}) {
      const auto iv = fold_interval(v, b);
      CHECK(iv.hi > 0);
      CHECK(iv.lo == -iv.hi);
      for (int j = 0; j <= 10; ++j) {
        const double t = iv.lo + (iv.hi - iv.lo) * j / 10.0;
        const auto s = solve_generic(v, t, b);
        CHECK(oracle::closure(a, arr(s.rho)) < 1e-9);
        if (b == BranchId::Branch1) CHECK(s.lifted[0] * s.lifted[2] >= 0);
        else CHECK(s.lifted[0] * s.lifted[2] <= 0);
      }
      const auto rep = monotonicity_check(v, b, 400);
      CHECK(rep.min_abs_slope > 0);
    }
  }
}

TEST_CASE("cyclic shift by two keeps the branch") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    const auto a = oracle::random_generic(rng);
    const Vertex4 v(Eigen::Vector4d(a[0], a[1], a[2], a[3]));
    const Vertex4 w = v.shifted(2);
    for (auto b : {BranchId::Branch1, BranchId::Branch2}) {
      BranchCurve<double> cv(v, b), cw(w, b);
      const double t = 0.6 * cv.hi();
      const auto s = cv.at(t);
      const auto r = cw.solve_from(0, s.lifted[2]);
      CHECK((shift_rho(Eigen::Vector4d(s.lifted), 2) - r.lifted).norm() < 1e-8);
    }
  }
}

TEST_CASE("mirror keeps the branch") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 100; ++i) {
    const auto a = oracle::random_generic(rng);
    const Vertex4 v(Eigen::Vector4d(a[0], a[1], a[2], a[3]));
    for (auto b : {BranchId::Branch1, BranchId::Branch2}) {
      BranchCurve<double> cv(v, b), cm(v.mirrored(), b);
      const auto s = cv.at(0.5 * cv.hi());
      const auto r = cm.solve_from(0, s.lifted[2]);
      CHECK((mirror_rho(Eigen::Vector4d(s.lifted)) - r.lifted).norm() < 1e-8);
    }
  }
}

TEST_CASE("solve_from inverts every drivable crease") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    const auto a = oracle::random_generic(rng);
    const Vertex4 v(Eigen::Vector4d(a[0], a[1], a[2], a[3]));
    for (auto b : {BranchId::Branch1, BranchId::Branch2}) {
      BranchCurve<double> c(v, b);
      const auto s = c.at(0.7 * c.lo());
      for (int k = 0; k < 4; ++k) {
        const auto r = c.solve_from(k, s.lifted[k]);
        CHECK((r.lifted - s.lifted).norm() < 1e-9);
      }
    }
  }
}

TEST_CASE("templated on scalar") {
  const Vertex4T<long double> v = Vertex4T<long double>::from_degrees(80, 95, 75, 110);
  const auto s = solve_generic(v, deg2rad<long double>(60), BranchId::Branch1);
  CHECK(loop_closure_residual(v, s.rho) < 1e-15L);
  const Vertex4T<float> vf = Vertex4T<float>::from_degrees(80, 95, 75, 110, 1e-5f);
  Tolerances loose;
  loose.clamp = 1e-6;
  const auto sf = solve_generic(vf, deg2rad<float>(60), BranchId::Branch1, loose);
  CHECK(rad2deg(sf.rho[1]) == doctest::Approx(-6.0058).epsilon(1e-3));
}

TEST_CASE("out of domain") {
  const Vertex4 v = vdeg(80, 95, 75, 110);
  const auto iv = fold_interval(v, BranchId::Branch1);
  if (iv.hi < kPi<double> - 1e-6)
    CHECK_THROWS_AS(solve_generic(v, iv.hi + 1e-3, BranchId::Branch1), Error);
  CHECK_THROWS_AS(xi_of(v, 4.0), Error);
}
