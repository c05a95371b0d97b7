#include "quadfold/pattern.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <sstream>

namespace quadfold {

namespace {

constexpr double kPiD = kPi<double>;

double ccw_angle(const Eigen::Vector2d& u, const Eigen::Vector2d& v) {
  double a = std::atan2(u.x() * v.y() - u.y() * v.x(), u.dot(v));
  if (a <= 0) a += 2 * kPiD;
  return a;
}

Eigen::Vector2d dir(double theta) { return {std::cos(theta), std::sin(theta)}; }

std::string at_panel(int P, int Q) { return "panel (" + std::to_string(P) + ", " + std::to_string(Q) + ")"; }

double cross(const Eigen::Vector2d& a, const Eigen::Vector2d& b) { return a.x() * b.y() - a.y() * b.x(); }

}  // namespace

QuadPattern::QuadPattern(int rows, int cols, Eigen::MatrixX2d points, const Tolerances& tol)
    : rows_(rows), cols_(cols), points_(std::move(points)) {
  if (rows < 1 || cols < 1) throw Error(ErrorCode::LayoutFailure, "pattern needs at least one inner vertex");
  if (points_.rows() != grid_rows() * grid_cols())
    throw Error(ErrorCode::LayoutFailure, "point count does not match the grid");
  if (!points_.allFinite()) throw Error(ErrorCode::LayoutFailure, "non-finite coordinates");

  const int H = grid_rows() * (cols_ + 1);
  edges_.resize(H + (rows_ + 1) * grid_cols());
  for (int I = 0; I < grid_rows(); ++I)
    for (int J = 0; J <= cols_; ++J) {
      GridEdge& e = edges_[h_edge(I, J)];
      e = {point(I, J), point(I, J + 1), true, I, J, EdgeRole::Inner};
      if (I == 0 || I == rows_ + 1) e.role = EdgeRole::SheetEdge;
      else if (J == 0 || J == cols_) e.role = EdgeRole::ToBoundary;
    }
  for (int I = 0; I <= rows_; ++I)
    for (int J = 0; J < grid_cols(); ++J) {
      GridEdge& e = edges_[v_edge(I, J)];
      e = {point(I, J), point(I + 1, J), false, I, J, EdgeRole::Inner};
      if (J == 0 || J == cols_ + 1) e.role = EdgeRole::SheetEdge;
      else if (I == 0 || I == rows_) e.role = EdgeRole::ToBoundary;
    }

  vertices_.reserve(rows_ * cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) {
      const Eigen::Vector2d c = xy(i + 1, j + 1);
      const Eigen::Vector2d n = xy(i, j + 1) - c, w = xy(i + 1, j) - c, s = xy(i + 2, j + 1) - c,
                            e = xy(i + 1, j + 2) - c;
      const Eigen::Vector4d a(ccw_angle(e, n), ccw_angle(n, w), ccw_angle(w, s), ccw_angle(s, e));
      if (std::abs(a.sum() - 2 * kPiD) > tol.angle)
        throw Error(ErrorCode::LayoutFailure, "creases around vertex (" + std::to_string(i) + ", " +
                                                  std::to_string(j) + ") are not in counter-clockwise order");
      vertices_.emplace_back(a, tol.angle);
    }

  for (int P = 0; P < panel_rows(); ++P)
    for (int Q = 0; Q < panel_cols(); ++Q) {
      const auto c = panel(P, Q);
      for (int k = 0; k < 4; ++k) {
        const Eigen::Vector2d a = points_.row(c[k]), b = points_.row(c[(k + 1) % 4]),
                              d = points_.row(c[(k + 2) % 4]);
        const Eigen::Vector2d e1 = b - a, e2 = d - b;
        const double l = e1.norm() * e2.norm();
        if (!(l > 0) || cross(e1, e2) <= 1e-12 * l)
          throw Error(ErrorCode::LayoutFailure, at_panel(P, Q) + " is not strictly convex");
      }
    }
}

int QuadPattern::crease(int i, int j, int side) const {
  switch (side) {
    case N: return v_edge(i, j + 1);
    case S: return v_edge(i + 1, j + 1);
    case W: return h_edge(i + 1, j);
    case E: return h_edge(i + 1, j + 1);
  }
  throw Error(ErrorCode::Usage, "crease side must be 0..3");
}

std::vector<std::array<int, 4>> QuadPattern::panels() const {
  std::vector<std::array<int, 4>> out;
  for (int P = 0; P < panel_rows(); ++P)
    for (int Q = 0; Q < panel_cols(); ++Q) out.push_back(panel(P, Q));
  return out;
}

double QuadPattern::crease_direction(int i, int j, int side) const {
  static const int dI[4] = {-1, 0, 1, 0}, dJ[4] = {0, -1, 0, 1};
  const Eigen::Vector2d d = xy(i + 1 + dI[side], j + 1 + dJ[side]) - xy(i + 1, j + 1);
  return std::atan2(d.y(), d.x());
}

QuadPattern layout(int rows, int cols, const std::vector<Vertex4>& V, const LayoutLengths& len,
                   const Tolerances& tol) {
  if (rows < 1 || cols < 1) throw Error(ErrorCode::LayoutFailure, "empty grid");
  if (static_cast<int>(V.size()) != rows * cols) throw Error(ErrorCode::LayoutFailure, "vertex count mismatch");
  auto length = [&](const std::vector<double>& v, int k) {
    const double l = k < static_cast<int>(v.size()) ? v[k] : 1.0;
    if (!(l > 0)) throw Error(ErrorCode::LayoutFailure, "crease lengths must be positive");
    return l;
  };
  if (!(len.boundary > 0)) throw Error(ErrorCode::LayoutFailure, "boundary length must be positive");

  const auto at = [&](int i, int j) -> const Vertex4& { return V[i * cols + j]; };
  std::vector<Eigen::Vector2d> P(rows * cols);
  std::vector<double> thN(rows * cols);
  auto th = [&](int i, int j, int side) {
    const Vertex4& v = at(i, j);
    const double n = thN[i * cols + j];
    switch (side) {
      case N: return n;
      case W: return n + v[1];
      case S: return n + v[1] + v[2];
      default: return n - v[0];
    }
  };

  P[0] = Eigen::Vector2d::Zero();
  thN[0] = kPiD / 2;
  for (int j = 1; j < cols; ++j) {
    const double e = th(0, j - 1, E);
    P[j] = P[j - 1] + length(len.top, j - 1) * dir(e);
    thN[j] = e + kPiD - at(0, j)[1];
  }
  for (int i = 1; i < rows; ++i) {
    const double s = th(i - 1, 0, S);
    P[i * cols] = P[(i - 1) * cols] + length(len.left, i - 1) * dir(s);
    thN[i * cols] = s + kPiD;
  }
  for (int i = 1; i < rows; ++i)
    for (int j = 1; j < cols; ++j) {
      const Eigen::Vector2d a = P[i * cols + j - 1], b = P[(i - 1) * cols + j];
      const Eigen::Vector2d da = dir(th(i, j - 1, E)), db = dir(th(i - 1, j, S));
      Eigen::Matrix2d m;
      m << da, -db;
      if (std::abs(m.determinant()) < 1e-14)
        throw Error(ErrorCode::LayoutFailure, at_panel(i, j) + ": parallel creases never meet");
      const Eigen::Vector2d st = m.partialPivLu().solve(b - a);
      if (!(st[0] > 0 && st[1] > 0))
        throw Error(ErrorCode::LayoutFailure, at_panel(i, j) + ": creases meet behind their vertices");
      P[i * cols + j] = a + st[0] * da;
      thN[i * cols + j] = th(i - 1, j, S) + kPiD;
      const double mismatch = angle_difference(th(i, j, W), th(i, j - 1, E) + kPiD);
      if (mismatch > tol.angle)
        throw Error(ErrorCode::LayoutFailure, at_panel(i, j) + ": sector angles do not close");
    }

  const int gc = cols + 2;
  Eigen::MatrixX2d pts(static_cast<Eigen::Index>((rows + 2) * gc), 2);
  auto put = [&](int I, int J, const Eigen::Vector2d& x) { pts.row(I * gc + J) = x.transpose(); };
  const double b = len.boundary;
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) put(i + 1, j + 1, P[i * cols + j]);
  for (int j = 0; j < cols; ++j) {
    put(0, j + 1, P[j] + b * dir(th(0, j, N)));
    put(rows + 1, j + 1, P[(rows - 1) * cols + j] + b * dir(th(rows - 1, j, S)));
  }
  for (int i = 0; i < rows; ++i) {
    put(i + 1, 0, P[i * cols] + b * dir(th(i, 0, W)));
    put(i + 1, cols + 1, P[i * cols + cols - 1] + b * dir(th(i, cols - 1, E)));
  }
  auto corner = [&](int I, int J, int dI, int dJ) {
    const Eigen::Vector2d x = pts.row((I + dI) * gc + J).transpose() + pts.row(I * gc + J + dJ).transpose() -
                              pts.row((I + dI) * gc + J + dJ).transpose();
    put(I, J, x);
  };
  corner(0, 0, 1, 1);
  corner(0, cols + 1, 1, -1);
  corner(rows + 1, 0, -1, 1);
  corner(rows + 1, cols + 1, -1, -1);

  QuadPattern out(rows, cols, pts, tol);
  for (int k = 0; k < rows * cols; ++k)
    for (int s = 0; s < 4; ++s)
      if (std::abs(out.vertices()[k][s] - V[k][s]) > tol.angle)
        throw Error(ErrorCode::LayoutFailure, "laid-out angles differ from the requested ones");
  return out;
}

namespace {

bool same_vertex(const Vertex4& a, const Vertex4& b, double tol) {
  return (a.alpha() - b.alpha()).cwiseAbs().maxCoeff() <= tol;
}

bool is_ff(const Vertex4& v, double tol) {
  return std::abs(v[0] + v[2] - kPiD) <= tol && std::abs(v[1] + v[3] - kPiD) <= tol;
}

Vertex4 vertex_from(const std::vector<double>& a, size_t offset = 0) {
  if (a.size() < offset + 4) throw Error(ErrorCode::IncompatibleUnits, "descriptor needs four vertex angles");
  return Vertex4(Eigen::Vector4d(a[offset], a[offset + 1], a[offset + 2], a[offset + 3]));
}

Unit resolve(const UnitDescriptor& d, const std::optional<Vertex4>& above, std::optional<BranchId> above_branch,
             const Tolerances& tol) {
  const double ta = tol.angle;
  Unit u;
  switch (d.kind) {
    case UnitKind::FlatFoldable: {
      if (!d.mode) throw Error(ErrorCode::IncompatibleUnits, "flat-foldable unit needs a mode");
      double a1, a2, a3;
      if (above) {
        if (!is_ff(*above, ta))
          throw Error(ErrorCode::IncompatibleUnits, "vertex above a flat-foldable unit is not flat-foldable");
        a1 = (*above)[0];
        a2 = (*above)[1];
        if (d.angles.size() == 1) a3 = d.angles[0];
        else if (d.angles.size() == 3) a3 = d.angles[2];
        else throw Error(ErrorCode::IncompatibleUnits, "stitched flat-foldable unit takes alpha3");
      } else {
        if (d.angles.size() != 3) throw Error(ErrorCode::IncompatibleUnits, "flat-foldable unit takes three angles");
        a1 = d.angles[0];
        a2 = d.angles[1];
        a3 = d.angles[2];
      }
      u = solve_ff_unit(a1, a2, a3, *d.mode, tol);
      break;
    }
    case UnitKind::FlatFoldableBasic: {
      double a1, a2;
      if (above) {
        if (!is_ff(*above, ta))
          throw Error(ErrorCode::IncompatibleUnits, "vertex above a flat-foldable basic unit is not flat-foldable");
        a1 = (*above)[0];
        a2 = (*above)[1];
      } else {
        if (d.angles.size() != 2) throw Error(ErrorCode::IncompatibleUnits, "flat-foldable basic unit takes two angles");
        a1 = d.angles[0];
        a2 = d.angles[1];
      }
      u = make_flatfoldable_basic_unit(a1, a2, d.branch.value_or(above_branch.value_or(BranchId::Branch1)), tol);
      break;
    }
    case UnitKind::StraightLine: {
      const Vertex4 v = above ? *above : vertex_from(d.angles);
      std::optional<BranchId> b = d.branch;
      if (!b && above_branch) b = above_branch;
      u = make_straightline_unit(v, b, tol);
      break;
    }
    case UnitKind::GeneralBasic: {
      const Vertex4 v = above ? *above : vertex_from(d.angles);
      u = make_general_basic_unit(v, d.branch.value_or(above_branch.value_or(BranchId::Branch1)), tol);
      break;
    }
    case UnitKind::Custom:
      if (!d.custom) throw Error(ErrorCode::IncompatibleUnits, "custom unit without data");
      u = *d.custom;
      if (!validate_unit(u, 200, tol).valid) throw Error(ErrorCode::ValidationFailed, "custom unit");
      break;
  }
  u.shared_length = d.shared_length;
  if (above && !same_vertex(u.top, *above, ta))
    throw Error(ErrorCode::IncompatibleUnits, "unit top vertex differs from the bottom vertex above it");
  if (above_branch && *above_branch != u.branch_top)
    throw Error(ErrorCode::IncompatibleUnits, "shared vertex assigned two different branches");
  return u;
}

}  // namespace

Stitched stitch(const StitchPlan& plan, const Tolerances& tol) {
  const int cols = static_cast<int>(plan.columns.size());
  if (cols == 0) throw Error(ErrorCode::IncompatibleUnits, "plan has no columns");
  const int k = static_cast<int>(plan.columns[0].size());
  if (k == 0) throw Error(ErrorCode::IncompatibleUnits, "column without units");
  for (const auto& c : plan.columns)
    if (static_cast<int>(c.size()) != k) throw Error(ErrorCode::IncompatibleUnits, "columns differ in height");
  const int rows = k + 1;

  Stitched out;
  out.units.resize(cols);
  std::vector<Vertex4> V(rows * cols);
  std::vector<BranchId> B(rows * cols);
  std::vector<std::array<int, 2>> links(rows * cols, {1, 1});
  for (int c = 0; c < cols; ++c) {
    std::optional<Vertex4> above;
    std::optional<BranchId> above_branch;
    for (int r = 0; r < k; ++r) {
      Unit u;
      try {
        u = resolve(plan.columns[c][r], above, above_branch, tol);
      } catch (const Error& e) {
        throw Error(e.code(), "column " + std::to_string(c) + ", unit " + std::to_string(r) + ": " + e.detail());
      }
      V[r * cols + c] = u.top;
      B[r * cols + c] = u.branch_top;
      links[(r + 1) * cols + c] = u.signs;
      above = u.bottom_grid();
      above_branch = u.branch_bottom;
      out.units[c].push_back(u);
    }
    V[k * cols + c] = *above;
    B[k * cols + c] = *above_branch;
  }
  LayoutLengths len = plan.lengths;
  if (len.left.empty())
    for (const auto& u : out.units[0]) len.left.push_back(u.shared_length);
  out.pattern = layout(rows, cols, V, len, tol);
  out.pattern.default_branches = B;
  out.pattern.default_links = links;
  return out;
}

bool panel_row_parallel(const QuadPattern& p, int r, const Tolerances& tol) {
  const double ref = p.crease_direction(r, 0, S);
  for (int j = 1; j < p.cols(); ++j) {
    const double d = std::remainder(p.crease_direction(r, j, S) - ref, kPiD);
    if (std::abs(d) > tol.dir) return false;
  }
  return true;
}

namespace {

int unit_dof(const UnitDescriptor& d, bool first, const DofTable& t) {
  if (d.kind == UnitKind::Custom) return d.custom_dof;
  return t.dof[static_cast<int>(d.kind)][first ? 0 : 1];
}

int unit_branches(const UnitDescriptor& d, const DofTable& t) {
  if (d.kind == UnitKind::Custom) return d.custom_branches;
  return t.branches[static_cast<int>(d.kind)];
}

int column_branches(const std::vector<UnitDescriptor>& col, const DofTable& t) {
  int br = std::numeric_limits<int>::max();
  for (const auto& u : col) br = std::min(br, unit_branches(u, t));
  return col.empty() ? 1 : br;
}

DofReport count_impl(const StitchPlan& plan, const QuadPattern& p, const Tolerances& tol, const DofTable& table) {
  DofReport rep;
  std::vector<int> terms;
  for (const auto& col : plan.columns) {
    std::vector<int> t;
    const int br = column_branches(col, table);
    for (size_t r = 0; r < col.size(); ++r) {
      t.push_back(unit_dof(col[r], r == 0, table));
      rep.total += t.back();
      if (t.back() != 0) terms.push_back(t.back());
    }
    rep.unit_terms.push_back(t);
    rep.column_branches.push_back(br);
    rep.branches *= br;
  }
  for (int r = 0; r + 1 < p.rows(); ++r) {
    const bool par = panel_row_parallel(p, r, tol);
    rep.row_parallel.push_back(par);
    rep.row_deductions.push_back(par ? 0 : p.cols() - 1);
    rep.total -= rep.row_deductions.back();
  }
  rep.negative = rep.total < 0;
  std::ostringstream os;
  for (size_t i = 0; i < terms.size(); ++i) os << (i ? " + " : "") << terms[i];
  if (terms.empty()) os << 0;
  int deducted = 0;
  for (int d : rep.row_deductions) deducted += d;
  if (deducted != 0) os << " − " << deducted;
  os << " = " << rep.total << "; branches " << rep.branches;
  rep.caption = os.str();
  return rep;
}

}  // namespace

DofReport count_dof(const StitchPlan& plan, const QuadPattern& stitched, const Tolerances& tol,
                    const DofTable& table) {
  return count_impl(plan, stitched, tol, table);
}

DofReport count_dof(const StitchPlan& plan, const Tolerances& tol, const DofTable& table) {
  return count_impl(plan, stitch(plan, tol).pattern, tol, table);
}

long long count_branches(const StitchPlan& plan, const DofTable& table) {
  long long n = 1;
  for (const auto& col : plan.columns) n *= column_branches(col, table);
  return n;
}

}  // namespace quadfold
