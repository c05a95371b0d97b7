#pragma once

#include <array>
#include <string>
#include <vector>

#include "quadfold/pattern.hpp"

namespace quadfold {

// The pattern with every horizontal crease joining adjacent columns below the
// top row cut away; what remains of the interior crease graph is a comb.
struct TreeStructure {
  int rows = 0, cols = 0;
  std::vector<int> cut_creases;  // edge ids, row-major over (i >= 1, j < cols - 1)
  std::vector<std::array<int, 2>> cut_at;  // (i, j) of the vertex west of each cut
};

TreeStructure build_tree(const QuadPattern& p);

using BranchGrid = std::vector<BranchId>;  // one per inner vertex, row-major

struct Propagation {
  std::vector<double> crease;             // folding angle per edge id; 0 on sheet edges
  std::vector<Eigen::Vector4d> vertex;    // per inner vertex, grid labelling
  std::vector<double> theta, phi;         // per cut crease: west and east column values
  double max_residual = 0;
};

// Branch curves of every vertex, built once and reused for each sample. The
// top-left vertex is driven through its north crease, or its west crease when
// the north one stays flat on the chosen branch. Every other top-row vertex
// follows its west neighbour; lower vertices follow the vertex above through
// the crease they share, or through the stored west/east link signs when that
// crease stays flat.
class Propagator {
 public:
  Propagator(const QuadPattern& p, const BranchGrid& branches, const Tolerances& tol = {});

  const QuadPattern& pattern() const { return *p_; }
  const TreeStructure& tree() const { return tree_; }
  const BranchCurve<double>& curve(int i, int j) const { return curves_[i * p_->cols() + j]; }
  int driver_side() const { return driver_; }
  std::pair<double, double> driver_range() const;

  // Folding angles of the north creases of the top row for driving angle t.
  std::vector<double> top_row(double t) const;

  // Tree propagation from prescribed top-row north angles.
  Propagation propagate(const std::vector<double>& rho_top) const;
  // Tree propagation from the driving angle.
  Propagation at(double t) const;

 private:
  std::vector<Eigen::Vector4d> top_states(double t) const;
  Propagation finish(std::vector<Eigen::Vector4d> top) const;

  const QuadPattern* p_;
  Tolerances tol_;
  TreeStructure tree_;
  std::vector<BranchCurve<double>> curves_;
  std::vector<std::array<int, 2>> links_;
  int driver_ = N;
};

struct CompatibilityReport {
  bool rigid_foldable = false;
  std::string reason;
  double lo = 0, hi = 0;
  std::vector<double> samples;
  std::vector<std::vector<double>> theta, phi;  // [sample][cut crease]
  double max_residual = 0;
  BranchGrid branches;
};

CompatibilityReport certify(const QuadPattern& p, const BranchGrid& branches, int n_samples = 200,
                            const Tolerances& tol = {});

// Every combination in which each column takes one branch for all its
// vertices.
std::vector<BranchGrid> column_branch_choices(const QuadPattern& p);
// Same, keeping the stored branch wherever a column only has one option.
std::vector<BranchGrid> column_branch_choices(const QuadPattern& p, const std::vector<int>& column_branch_counts);

enum class Assignment : char { Mountain = 'M', Valley = 'V', Flat = 'F', Boundary = 'B' };

std::vector<Assignment> mv_assignment(const QuadPattern& p, const std::vector<double>& crease_angles,
                                      const Tolerances& tol = {});
// Labels at driving angle t on the given branches.
std::vector<Assignment> mv_assignment(const QuadPattern& p, const BranchGrid& branches, double t,
                                      const Tolerances& tol = {});

}  // namespace quadfold
