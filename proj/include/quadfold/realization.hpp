#pragma once

#include <Eigen/Geometry>

#include <vector>

#include "quadfold/foldability.hpp"
#include "quadfold/rotation.hpp"

namespace quadfold {

struct FoldedState {
  Eigen::MatrixX3d coords;                     // one row per pattern point
  std::vector<Eigen::Isometry3d> panel_frames;  // layout -> space, row-major panels
  std::vector<double> crease;                  // folding angle per edge id
  double driving_angle = 0;
  double rigidity_residual = 0;  // worst relative edge/diagonal length change
  double planarity_residual = 0;
  double closure_residual = 0;   // worst vertex loop or non-tree crossing mismatch
};

// Places the top-left panel in the plane and every other panel by crossing
// creases along a fixed row-major spanning tree of panel adjacencies.
FoldedState realize(const QuadPattern& p, const std::vector<double>& crease_angles, const Tolerances& tol = {});

struct SweepResult {
  std::vector<FoldedState> frames;
  double max_rigidity = 0, max_planarity = 0, max_closure = 0;
  double endpoint = 0;
};

// Frames at evenly spaced driving angles from the flat state to
// fraction * (certified endpoint).
SweepResult sweep(const QuadPattern& p, const BranchGrid& branches, int n_frames, double fraction = 1.0,
                  const Tolerances& tol = {});

}  // namespace quadfold
