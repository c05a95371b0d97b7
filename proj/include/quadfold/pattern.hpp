#pragma once

#include <Eigen/Core>

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "quadfold/unit.hpp"

namespace quadfold {

enum class EdgeRole { Inner, ToBoundary, SheetEdge };

struct GridEdge {
  int a = 0, b = 0;  // point indices
  bool horizontal = true;
  int I = 0, J = 0;  // grid position of the first endpoint
  EdgeRole role = EdgeRole::Inner;
  bool is_crease() const { return role != EdgeRole::SheetEdge; }
};

// Crease indices in the grid labelling of an inner vertex.
enum Side : int { N = 0, W = 1, S = 2, E = 3 };

// Quadrilateral mesh whose inner vertices form a rows x cols grid. Points live
// on a (rows + 2) x (cols + 2) grid: the outer ring is the sheet boundary and
// inner vertex (i, j) sits at grid point (i + 1, j + 1). Row index grows
// downwards, the sheet lies in the xy-plane with y up.
class QuadPattern {
 public:
  QuadPattern() = default;
  QuadPattern(int rows, int cols, Eigen::MatrixX2d points, const Tolerances& tol = {});

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }
  int grid_rows() const { return rows_ + 2; }
  int grid_cols() const { return cols_ + 2; }
  int point(int I, int J) const { return I * grid_cols() + J; }
  const Eigen::MatrixX2d& points() const { return points_; }
  Eigen::Vector2d xy(int I, int J) const { return points_.row(point(I, J)).transpose(); }

  const Vertex4& vertex(int i, int j) const { return vertices_[i * cols_ + j]; }
  const std::vector<Vertex4>& vertices() const { return vertices_; }

  int h_edge(int I, int J) const { return I * (cols_ + 1) + J; }
  int v_edge(int I, int J) const { return grid_rows() * (cols_ + 1) + I * grid_cols() + J; }
  const std::vector<GridEdge>& edges() const { return edges_; }
  int crease(int i, int j, int side) const;

  int panel_rows() const { return rows_ + 1; }
  int panel_cols() const { return cols_ + 1; }
  // Corners counter-clockwise: top-left, bottom-left, bottom-right, top-right.
  std::array<int, 4> panel(int P, int Q) const {
    return {point(P, Q), point(P + 1, Q), point(P + 1, Q + 1), point(P, Q + 1)};
  }
  std::vector<std::array<int, 4>> panels() const;

  // Direction angle of crease `side` at inner vertex (i, j).
  double crease_direction(int i, int j, int side) const;

  // Branch per inner vertex recorded when the pattern was stitched (may be empty).
  std::vector<BranchId> default_branches;
  // Per inner vertex: signs relating its west and east folding angles to those
  // of the vertex above, used only where the crease between them stays flat.
  std::vector<std::array<int, 2>> default_links;

 private:
  int rows_ = 0, cols_ = 0;
  Eigen::MatrixX2d points_;
  std::vector<Vertex4> vertices_;
  std::vector<GridEdge> edges_;
};

struct LayoutLengths {
  std::vector<double> top;   // cols - 1 creases joining the top-row vertices
  std::vector<double> left;  // rows - 1 creases joining the left-column vertices
  double boundary = 1.0;     // creases running to the sheet edge
};

// Places the vertices from their sector angles: vertex (0, 0) at the origin
// with its north crease pointing up, then the top row and left column from the
// given lengths, then every other vertex by intersecting crease rays.
QuadPattern layout(int rows, int cols, const std::vector<Vertex4>& vertices, const LayoutLengths& lengths,
                   const Tolerances& tol = {});

struct UnitDescriptor {
  UnitKind kind = UnitKind::FlatFoldable;
  std::vector<double> angles;  // radians, meaning depends on kind and position
  std::optional<FFUnitMode> mode;
  std::optional<BranchId> branch;
  std::optional<Unit> custom;
  double shared_length = 1.0;
  int custom_dof = 0;
  int custom_branches = 1;
};

struct StitchPlan {
  std::vector<std::vector<UnitDescriptor>> columns;  // left to right, units top to bottom
  LayoutLengths lengths;
};

struct Stitched {
  QuadPattern pattern;
  std::vector<std::vector<Unit>> units;  // per column
};

Stitched stitch(const StitchPlan& plan, const Tolerances& tol = {});

struct DofReport {
  std::vector<std::vector<int>> unit_terms;  // per column, per unit
  std::vector<int> row_deductions;           // per interior panel row
  std::vector<bool> row_parallel;
  int total = 0;
  bool negative = false;
  std::vector<int> column_branches;
  long long branches = 1;
  std::string caption;
};

// True when all creases crossing interior panel row r (between vertex rows r
// and r + 1) are parallel.
bool panel_row_parallel(const QuadPattern& p, int r, const Tolerances& tol = {});

// Independent sector angles contributed by a unit of each built-in kind when
// it starts a column and when it is stitched below another, and its number
// of motion branches. Flat-foldable units: 3, 1 and 1; the basic-unit rows
// are conventions that can be overridden from the configuration file.
struct DofTable {
  std::array<std::array<int, 2>, 4> dof{{{3, 1}, {2, 0}, {2, 0}, {3, 0}}};
  std::array<int, 4> branches{1, 2, 1, 2};
};

DofReport count_dof(const StitchPlan& plan, const Tolerances& tol = {}, const DofTable& table = {});
DofReport count_dof(const StitchPlan& plan, const QuadPattern& stitched, const Tolerances& tol = {},
                    const DofTable& table = {});
long long count_branches(const StitchPlan& plan, const DofTable& table = {});

}  // namespace quadfold
