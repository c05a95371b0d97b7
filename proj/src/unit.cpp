#include "quadfold/unit.hpp"

#include <cmath>
#include <limits>

#include "quadfold/search.hpp"

namespace quadfold {

namespace {

constexpr double kPiD = kPi<double>;

double th(double a) { return std::tan(a / 2); }

void check_open(double a, const char* name) {
  if (!(a > 0) || !(a < kPiD))
    throw Error(ErrorCode::InvalidAngle, std::string(name) + " must lie in (0, pi)");
}

Vertex4 ff_vertex(double a, double b) { return Vertex4(Eigen::Vector4d(a, b, kPiD - a, kPiD - b)); }

bool square(double a, double b, const Tolerances& tol) {
  return std::abs(a - kPiD / 2) <= tol.angle && std::abs(b - kPiD / 2) <= tol.angle;
}

// Bottom vertex in its own labelling for the mirror image of a top vertex.
Vertex4 mirrored_bottom(const Vertex4& top) { return top.mirrored().shifted(2); }

struct Transmission {
  BranchCurve<double> top, bottom;
  std::array<int, 2> signs;
  bool decoupled;
  int side = 1;  // bottom crease used when decoupled: 1 = W, 3 = E

  UnitState operator()(double t) const {
    const auto a = top.at(t);
    Eigen::Vector4d b;
    if (!decoupled) {
      b = bottom.solve_from(0, a.lifted[2]).lifted;
    } else {
      const int i = side == 1 ? 0 : 1;
      b = bottom.solve_from(side, signs[i] * a.lifted[side]).lifted;
    }
    return {a.lifted[2], a.lifted[1], a.lifted[0], a.lifted[3], b[1], b[2], b[3]};
  }

  bool ok(double t) const {
    try {
      (*this)(t);
      return true;
    } catch (const Error&) {
      return false;
    }
  }
};

}  // namespace

FFUnitMode parse_mode(const std::string& s) {
  if (s == "10a-1" || s == "A+" || s == "a-plus") return FFUnitMode::APlus;
  if (s == "10a-2" || s == "A-" || s == "a-minus") return FFUnitMode::AMinus;
  if (s == "10b-1" || s == "C+" || s == "c-plus") return FFUnitMode::CPlus;
  if (s == "10b-2" || s == "C-" || s == "c-minus") return FFUnitMode::CMinus;
  throw Error(ErrorCode::Usage, "unknown unit mode '" + s + "'");
}

const char* mode_name(FFUnitMode m) {
  switch (m) {
    case FFUnitMode::APlus: return "10a-1";
    case FFUnitMode::AMinus: return "10a-2";
    case FFUnitMode::CPlus: return "10b-1";
    case FFUnitMode::CMinus: return "10b-2";
  }
  return "?";
}

const char* to_string(UnitKind k) {
  switch (k) {
    case UnitKind::FlatFoldable: return "ff_unit";
    case UnitKind::FlatFoldableBasic: return "ff_basic";
    case UnitKind::StraightLine: return "straight_line";
    case UnitKind::GeneralBasic: return "general_basic";
    case UnitKind::Custom: return "custom";
  }
  return "?";
}

Unit Unit::swapped() const {
  Unit u = *this;
  u.top = bottom;
  u.bottom = top;
  u.branch_top = branch_bottom;
  u.branch_bottom = branch_top;
  // Turning the picture half a turn exchanges west and east.
  u.signs = {signs[1], signs[0]};
  return u;
}

UnitValidation validate_unit(const Unit& u, int n_samples, const Tolerances& tol) {
  if (n_samples < 2) throw Error(ErrorCode::OutOfDomain, "need at least two samples");
  Transmission tr{BranchCurve<double>(u.top, u.branch_top, tol),
                  BranchCurve<double>(u.bottom_grid(), u.branch_bottom, tol), u.signs, false};
  const bool top_flat = tr.top.structurally_zero(2);
  const bool bottom_flat = tr.bottom.structurally_zero(0);
  if (top_flat != bottom_flat)
    throw Error(ErrorCode::EmptyInterval, "shared crease is locked flat on one vertex only");
  if (top_flat) {
    tr.decoupled = true;
    tr.side = tr.bottom.structurally_zero(1) ? 3 : 1;
  }

  UnitValidation rep;
  rep.decoupled = tr.decoupled;
  rep.hi = reach([&](double t) { return tr.ok(t); }, tr.top.hi());
  rep.lo = reach([&](double t) { return tr.ok(t); }, tr.top.lo());
  if (rep.hi - rep.lo <= tol.root) throw Error(ErrorCode::EmptyInterval, "unit only admits the flat state");

  rep.samples = n_samples;
  for (int i = 0; i < n_samples; ++i) {
    const double t = std::min(rep.hi, rep.lo + (rep.hi - rep.lo) * i / (n_samples - 1));
    const UnitState s = tr(t);
    const double rw = angle_difference(s[1], u.signs[0] * s[4]);
    const double re = angle_difference(s[3], u.signs[1] * s[6]);
    rep.max_residual = std::max({rep.max_residual, rw, re});
    rep.states.push_back(s);
  }
  rep.valid = rep.max_residual < tol.unit;
  return rep;
}

double ff_unit_alpha4(double a1, double a2, double a3, FFUnitMode mode) {
  const double t1 = th(a1), t2 = th(a2), t3 = th(a3);
  double t4 = 0;
  switch (mode) {
    case FFUnitMode::APlus: t4 = t2 * t3 / t1; break;
    case FFUnitMode::AMinus: t4 = t1 * t3 / t2; break;
    case FFUnitMode::CPlus: t4 = t1 * t2 / t3; break;
    case FFUnitMode::CMinus: t4 = 1 / (t1 * t2 * t3); break;
  }
  return 2 * std::atan(t4);
}

double ff_unit_residual(double a1, double a2, double a3, double a4, FFUnitMode mode) {
  const double t1 = th(a1), t2 = th(a2), t3 = th(a3), t4 = th(a4);
  switch (mode) {
    case FFUnitMode::APlus: return std::abs(t1 / t2 - t3 / t4);
    case FFUnitMode::AMinus: return std::abs(t1 / t2 - t4 / t3);
    case FFUnitMode::CPlus: return std::abs(t1 * t2 - t3 * t4);
    case FFUnitMode::CMinus: return std::abs(t1 * t2 * t3 * t4 - 1);
  }
  return std::numeric_limits<double>::infinity();
}

Unit solve_ff_unit(double a1, double a2, double a3, FFUnitMode mode, const Tolerances& tol) {
  check_open(a1, "alpha1");
  check_open(a2, "alpha2");
  check_open(a3, "alpha3");
  const double a4 = ff_unit_alpha4(a1, a2, a3, mode);
  check_open(a4, "alpha4");
  if (square(a1, a2, tol) || square(a3, a4, tol))
    throw Error(ErrorCode::DegenerateVertex, "flat-foldable vertex with both free angles pi/2");
  Unit u;
  u.kind = UnitKind::FlatFoldable;
  u.top = ff_vertex(a1, a2);
  u.bottom = ff_vertex(a3, a4);
  const bool a_mode = mode == FFUnitMode::APlus || mode == FFUnitMode::AMinus;
  u.branch_top = u.branch_bottom = a_mode ? BranchId::Branch1 : BranchId::Branch2;
  const int s = (mode == FFUnitMode::APlus || mode == FFUnitMode::CMinus) ? -1 : 1;
  u.signs = {s, s};
  return u;
}

namespace {

EquationWitness witness(double ta, double tb, double tc, double td) {
  EquationWitness w;
  w.difference_side = (ta - tb) / (ta + tb);
  const double p = tc * td;
  const double den = 1 - p;
  w.pole = std::abs(den) < 1e-12;
  w.ratio_side = w.pole ? std::numeric_limits<double>::infinity() : (1 + p) / den;
  // 1 - |diff| = 2 min / sum and |ratio| - 1 = 2 min(1, p) / |1 - p|, formed
  // without cancellation.
  const double m1 = 2 * std::min(ta, tb) / (ta + tb);
  const double m2 = w.pole ? std::numeric_limits<double>::infinity() : 2 * std::min(1.0, p) / std::abs(den);
  w.margin = std::min(m1, m2);
  return w;
}

}  // namespace

InfeasibilityReport infeasibility_witness(double a1, double a2, double a3, double a4) {
  for (double a : {a1, a2, a3, a4}) check_open(a, "sector angle");
  const double t1 = th(a1), t2 = th(a2), t3 = th(a3), t4 = th(a4);
  InfeasibilityReport r;
  r.top_difference = witness(t2, t1, t4, t3);
  r.top_ratio = witness(t4, t3, t2, t1);
  r.margin = std::min(r.top_difference.margin, r.top_ratio.margin);
  return r;
}

Unit make_straightline_unit(const Vertex4& v, std::optional<BranchId> branch, const Tolerances& tol) {
  const VertexClass cls = classify(v, tol);
  if (cls.tag != VertexCase::StraightLine && cls.tag != VertexCase::DoubleCollinear)
    throw Error(ErrorCode::WrongClass, "straight-line unit needs a straight-line vertex");
  Unit u;
  u.kind = UnitKind::StraightLine;
  u.top = v;
  u.bottom = mirrored_bottom(v);
  BranchId b = BranchId::LineSegment1;
  if (cls.tag == VertexCase::StraightLine) b = cls.canonical_shift == 0 ? BranchId::Branch2 : BranchId::Branch1;
  if (branch) b = *branch;
  u.branch_top = u.branch_bottom = b;
  if (!validate_unit(u, 200, tol).valid) throw Error(ErrorCode::ValidationFailed, "straight-line unit");
  return u;
}

Unit make_flatfoldable_basic_unit(double a1, double a2, BranchId branch, const Tolerances& tol) {
  check_open(a1, "alpha1");
  check_open(a2, "alpha2");
  if (square(a1, a2, tol)) throw Error(ErrorCode::DegenerateVertex, "alpha1 = alpha2 = pi/2");
  Unit u;
  u.kind = UnitKind::FlatFoldableBasic;
  u.top = ff_vertex(a1, a2);
  u.bottom = mirrored_bottom(u.top);
  u.branch_top = u.branch_bottom = branch;
  if (!validate_unit(u, 200, tol).valid) throw Error(ErrorCode::ValidationFailed, "flat-foldable basic unit");
  return u;
}

Unit make_general_basic_unit(const Vertex4& v, BranchId branch, const Tolerances& tol) {
  if (classify(v, tol).tag == VertexCase::Trivial)
    throw Error(ErrorCode::WrongClass, "vertex does not fold");
  Unit u;
  u.kind = UnitKind::GeneralBasic;
  u.top = v;
  u.bottom = mirrored_bottom(v);
  u.branch_top = u.branch_bottom = branch;
  if (!validate_unit(u, 200, tol).valid) throw Error(ErrorCode::ValidationFailed, "general basic unit");
  return u;
}

}  // namespace quadfold
