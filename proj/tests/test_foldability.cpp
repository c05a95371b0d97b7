#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "perturb.hpp"
#include "quadfold/foldability.hpp"

using namespace quadfold;
using oracle::rad;

namespace {

QuadPattern grid(int m, int n) {
  return layout(m, n, std::vector<Vertex4>(m * n, Vertex4::from_degrees(90, 90, 90, 90)), {});
}

bool certified(const QuadPattern& p, const BranchGrid& b) {
  try {
    return certify(p, b, 200).rigid_foldable;
  } catch (const Error&) {
    return false;
  }
}

StitchPlan decoupled_plan() {
  UnitDescriptor d;
  d.kind = UnitKind::FlatFoldable;
  d.angles = {rad(80), rad(100), rad(60)};
  d.mode = FFUnitMode::CPlus;
  StitchPlan plan;
  plan.columns = {{d}, {d}};
  return plan;
}

}  // namespace

TEST_CASE("cut creases") {
  CHECK(build_tree(grid(2, 2)).cut_creases.size() == 1);
  CHECK(build_tree(grid(1, 4)).cut_creases.empty());
  const QuadPattern p = grid(3, 3);
  const TreeStructure t = build_tree(p);
  CHECK(t.cut_creases.size() == 4);
  // Interior crease graph: edges minus cuts equals vertices minus one.
  const int interior = p.rows() * (p.cols() - 1) + (p.rows() - 1) * p.cols();
  CHECK(interior - static_cast<int>(t.cut_creases.size()) == p.rows() * p.cols() - 1);
  for (int e : t.cut_creases) {
    CHECK(p.edges()[e].horizontal);
    CHECK(p.edges()[e].role == EdgeRole::Inner);
    CHECK(p.edges()[e].I >= 2);
  }
}

TEST_CASE("flat state propagates to zeros") {
  const Stitched s = stitch(fixtures::fig8());
  const Propagator prop(s.pattern, s.pattern.default_branches);
  const Propagation z = prop.at(0);
  for (double a : z.crease) CHECK(a == 0.0);
  for (size_t k = 0; k < z.theta.size(); ++k) {
    CHECK(z.theta[k] == 0.0);
    CHECK(z.phi[k] == 0.0);
  }
  const Propagation y = prop.propagate(std::vector<double>(3, 0.0));
  CHECK(y.max_residual == 0.0);
}

TEST_CASE("propagate from prescribed top-row angles") {
  const Stitched s = stitch(fixtures::fig7());
  const Propagator prop(s.pattern, s.pattern.default_branches);
  const std::vector<double> top = prop.top_row(rad(40));
  const Propagation a = prop.propagate(top), b = prop.at(rad(40));
  for (size_t e = 0; e < a.crease.size(); ++e) CHECK(a.crease[e] == doctest::Approx(b.crease[e]).epsilon(1e-12));
  std::vector<double> bad = top;
  bad[1] += 0.1;
  try {
    prop.propagate(bad);
    FAIL("expected a conflict");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PropagationConflict);
  }
}

TEST_CASE("fig. 7 plan certifies on its single branch") {
  const Stitched s = stitch(fixtures::fig7());
  const CompatibilityReport r = certify(s.pattern, s.pattern.default_branches, 200);
  CHECK(r.rigid_foldable);
  CHECK(r.max_residual < 1e-8);
  CHECK(r.samples.size() == 200);
  CHECK(r.samples.front() == r.lo);
  CHECK(r.samples.back() == r.hi);
  CHECK(r.hi > rad(60));
  CHECK(r.lo == doctest::Approx(-r.hi).epsilon(1e-12));
  const auto choices = column_branch_choices(s.pattern, count_dof(fixtures::fig7()).column_branches);
  CHECK(choices.size() == 1);
  CHECK(choices[0] == s.pattern.default_branches);
}

TEST_CASE("fig. 8 plan certifies on four branch choices") {
  const StitchPlan plan = fixtures::fig8();
  const Stitched s = stitch(plan);
  const auto choices = column_branch_choices(s.pattern, count_dof(plan).column_branches);
  REQUIRE(choices.size() == 4);
  for (const auto& b : choices) {
    const CompatibilityReport r = certify(s.pattern, b, 200);
    CHECK(r.rigid_foldable);
    CHECK(r.max_residual < 1e-8);
  }
  // Over every uniform column assignment, only the four that keep the
  // flat-foldable column on its own branch survive.
  int pass = 0;
  for (const auto& b : column_branch_choices(s.pattern)) pass += certified(s.pattern, b);
  CHECK(pass == 4);
}

TEST_CASE("sign flip of the driving angle") {
  const Stitched s = stitch(fixtures::fig8());
  const Propagator prop(s.pattern, s.pattern.default_branches);
  for (double t : {0.3, 1.1, 2.0}) {
    const Propagation a = prop.at(t), b = prop.at(-t);
    for (size_t e = 0; e < a.crease.size(); ++e) CHECK(a.crease[e] == doctest::Approx(-b.crease[e]).epsilon(1e-12));
  }
}

TEST_CASE("perturbed fig. 7 patterns are not rigid-foldable") {
  const QuadPattern p = stitch(fixtures::fig7()).pattern;
  int tried = 0;
  for (size_t e = 0; e < p.edges().size(); ++e) {
    if (p.edges()[e].role != EdgeRole::ToBoundary) continue;
    for (double sign : {1.0, -1.0}) {
      const QuadPattern q = perturb::rotate_boundary_crease(p, static_cast<int>(e), sign * rad(0.5));
      CHECK(perturb::max_angle_change(p, q) == doctest::Approx(rad(0.5)).epsilon(1e-6));
      CHECK_FALSE(certified(q, q.default_branches));
      ++tried;
    }
  }
  CHECK(tried == 24);
  for (int i = 0; i < p.rows(); ++i)
    for (int j = 0; j < p.cols(); ++j)
      for (const Eigen::Vector2d d : {Eigen::Vector2d(1, 0), Eigen::Vector2d(0, 1)}) {
        const QuadPattern q = perturb::shift_vertex(p, i, j, d, rad(0.5));
        CHECK_FALSE(certified(q, q.default_branches));
      }
}

TEST_CASE("random patterns are not rigid-foldable") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-0.12, 0.12);
  int rejected = 0;
  for (int trial = 0; trial < 10; ++trial) {
    const QuadPattern base = grid(3, 3);
    Eigen::MatrixX2d pts = base.points();
    for (int k = 0; k < pts.rows(); ++k) pts.row(k) += Eigen::RowVector2d(u(rng), u(rng));
    const QuadPattern q(3, 3, pts);
    const BranchGrid b(9, BranchId::Branch1);
    try {
      const CompatibilityReport r = certify(q, b, 50);
      CHECK(r.max_residual > 1e-4);
      rejected += !r.rigid_foldable;
    } catch (const Error&) {
      ++rejected;
    }
  }
  CHECK(rejected == 10);
}

TEST_CASE("mountain and valley labels") {
  const Stitched s = stitch(fixtures::fig7());
  const auto flat = mv_assignment(s.pattern, s.pattern.default_branches, 0.0);
  for (size_t e = 0; e < flat.size(); ++e)
    CHECK(flat[e] == (s.pattern.edges()[e].is_crease() ? Assignment::Flat : Assignment::Boundary));

  // Flat-foldable vertex on its first branch: west and east fold oppositely.
  const Propagator prop(s.pattern, s.pattern.default_branches);
  const auto st = prop.at(rad(50));
  const auto mv = mv_assignment(s.pattern, st.crease);
  const int w = s.pattern.crease(0, 1, W), e = s.pattern.crease(0, 1, E);
  CHECK(st.crease[w] == doctest::Approx(-st.crease[e]).epsilon(1e-12));
  CHECK(mv[w] != mv[e]);
  CHECK(mv[w] != Assignment::Flat);
  for (size_t k = 0; k < mv.size(); ++k) {
    if (mv[k] == Assignment::Valley) CHECK(st.crease[k] > 0);
    if (mv[k] == Assignment::Mountain) CHECK(st.crease[k] < 0);
  }
}

TEST_CASE("creases that never fold") {
  const Stitched s = stitch(decoupled_plan());
  const CompatibilityReport r = certify(s.pattern, s.pattern.default_branches, 200);
  CHECK(r.rigid_foldable);
  const Propagator prop(s.pattern, s.pattern.default_branches);
  int folded = 0;
  for (double t : r.samples) {
    const auto mv = mv_assignment(s.pattern, prop.at(t).crease);
    for (size_t e = 0; e < mv.size(); ++e) {
      const auto& edge = s.pattern.edges()[e];
      if (!edge.is_crease()) continue;
      if (!edge.horizontal) CHECK(mv[e] == Assignment::Flat);
      else folded += mv[e] != Assignment::Flat;
    }
  }
  CHECK(folded > 0);
}
