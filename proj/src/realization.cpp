#include "quadfold/realization.hpp"

namespace quadfold {

namespace {

Eigen::Vector3d lift(const Eigen::Vector2d& x) { return {x.x(), x.y(), 0.0}; }

// Frame of the panel reached by folding across the crease (a, b) by rho from
// a panel with frame `from`; `inside` is a point of the new panel. Positive
// angles lift the new panel towards +z, i.e. valley folds seen from above.
Eigen::Isometry3d cross_crease(const Eigen::Isometry3d& from, const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                               const Eigen::Vector2d& inside, double rho) {
  Eigen::Vector2d u = (b - a).normalized();
  const Eigen::Vector2d w = inside - a;
  if (u.x() * w.y() - u.y() * w.x() < 0) u = -u;
  Eigen::Isometry3d hinge = Eigen::Isometry3d::Identity();
  hinge.translate(lift(a));
  hinge.rotate(Eigen::AngleAxisd(rho, lift(u)));
  hinge.translate(-lift(a));
  Eigen::Isometry3d out = from * hinge;
  const Eigen::Matrix3d r = out.linear();
  if ((r.transpose() * r - Eigen::Matrix3d::Identity()).norm() > 1e-12)
    out.linear() = Eigen::Quaterniond(r).normalized().toRotationMatrix();
  return out;
}

double frame_distance(const Eigen::Isometry3d& a, const Eigen::Isometry3d& b, double scale) {
  const double rot = (a.linear().transpose() * b.linear() - Eigen::Matrix3d::Identity()).norm();
  return std::max(rot, (a.translation() - b.translation()).norm() / scale);
}

}  // namespace

FoldedState realize(const QuadPattern& p, const std::vector<double>& rho, const Tolerances& tol) {
  if (p.empty()) throw Error(ErrorCode::Usage, "empty pattern");
  if (rho.size() != p.edges().size()) throw Error(ErrorCode::Usage, "need one folding angle per edge");
  const auto& X = p.points();
  const int R = p.panel_rows(), C = p.panel_cols();
  const double scale = std::max(1.0, (X.colwise().maxCoeff() - X.colwise().minCoeff()).norm());
  auto pt = [&](int k) -> Eigen::Vector2d { return X.row(k).transpose(); };
  auto centroid = [&](int P, int Q) {
    Eigen::Vector2d c = Eigen::Vector2d::Zero();
    for (int k : p.panel(P, Q)) c += pt(k);
    return Eigen::Vector2d(c / 4);
  };
  // Panel (P, Q) and (P, Q + 1) share v_edge(P, Q + 1); (P, Q) and (P + 1, Q)
  // share h_edge(P + 1, Q).
  auto across = [&](const Eigen::Isometry3d& from, int edge, int P, int Q) {
    const GridEdge& e = p.edges()[edge];
    return cross_crease(from, pt(e.a), pt(e.b), centroid(P, Q), rho[edge]);
  };

  FoldedState s;
  s.crease = rho;
  s.panel_frames.assign(R * C, Eigen::Isometry3d::Identity());
  auto frame = [&](int P, int Q) -> Eigen::Isometry3d& { return s.panel_frames[P * C + Q]; };
  for (int Q = 1; Q < C; ++Q) frame(0, Q) = across(frame(0, Q - 1), p.v_edge(0, Q), 0, Q);
  for (int P = 1; P < R; ++P)
    for (int Q = 0; Q < C; ++Q) frame(P, Q) = across(frame(P - 1, Q), p.h_edge(P, Q), P, Q);

  for (int P = 1; P < R; ++P)
    for (int Q = 1; Q < C; ++Q) {
      const Eigen::Isometry3d expect = across(frame(P, Q - 1), p.v_edge(P, Q), P, Q);
      s.closure_residual = std::max(s.closure_residual, frame_distance(expect, frame(P, Q), scale));
    }
  for (int i = 0; i < p.rows(); ++i)
    for (int j = 0; j < p.cols(); ++j) {
      Eigen::Vector4d r;
      for (int k = 0; k < 4; ++k) r[k] = rho[p.crease(i, j, k)];
      s.closure_residual = std::max(s.closure_residual, loop_closure_residual(p.vertex(i, j), r));
    }
  if (s.closure_residual > tol.closure)
    throw Error(ErrorCode::ClosureViolation, "folding angles are not consistent around the panels (residual " +
                                                 std::to_string(s.closure_residual) + ")");

  s.coords.resize(X.rows(), 3);
  std::vector<bool> placed(X.rows(), false);
  for (int P = 0; P < R; ++P)
    for (int Q = 0; Q < C; ++Q)
      for (int k : p.panel(P, Q))
        if (!placed[k]) {
          s.coords.row(k) = (frame(P, Q) * lift(pt(k))).transpose();
          placed[k] = true;
        }

  for (int P = 0; P < R; ++P)
    for (int Q = 0; Q < C; ++Q) {
      const auto c = p.panel(P, Q);
      static const int pairs[6][2] = {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}, {1, 3}};
      for (const auto& pr : pairs) {
        const double l0 = (pt(c[pr[0]]) - pt(c[pr[1]])).norm();
        const double l1 = (s.coords.row(c[pr[0]]) - s.coords.row(c[pr[1]])).norm();
        s.rigidity_residual = std::max(s.rigidity_residual, std::abs(l1 - l0) / l0);
      }
      const Eigen::Vector3d a = s.coords.row(c[0]), b = s.coords.row(c[1]), d = s.coords.row(c[2]),
                            e = s.coords.row(c[3]);
      const Eigen::Vector3d n = (b - a).cross(d - a);
      const double size = (d - a).norm();
      s.planarity_residual = std::max(s.planarity_residual, std::abs(n.normalized().dot(e - a)) / size);
    }
  if (s.rigidity_residual > tol.rigid || s.planarity_residual > tol.rigid)
    throw Error(ErrorCode::RigidityViolation, "panels deform (relative residual " +
                                                  std::to_string(std::max(s.rigidity_residual, s.planarity_residual)) +
                                                  ")");
  return s;
}

SweepResult sweep(const QuadPattern& p, const BranchGrid& branches, int n_frames, double fraction,
                  const Tolerances& tol) {
  if (n_frames < 1) throw Error(ErrorCode::Usage, "need at least one frame");
  if (!(fraction > 0 && fraction <= 1)) throw Error(ErrorCode::Usage, "fraction must lie in (0, 1]");
  const CompatibilityReport rep = certify(p, branches, 200, tol);
  if (!rep.rigid_foldable) throw Error(ErrorCode::ValidationFailed, "pattern is not rigid-foldable on these branches");
  const Propagator prop(p, branches, tol);
  SweepResult out;
  out.endpoint = fraction * rep.hi;
  for (int k = 0; k < n_frames; ++k) {
    const double t = n_frames == 1 ? 0.0 : out.endpoint * k / (n_frames - 1);
    FoldedState f = realize(p, prop.at(t).crease, tol);
    f.driving_angle = t;
    out.max_rigidity = std::max(out.max_rigidity, f.rigidity_residual);
    out.max_planarity = std::max(out.max_planarity, f.planarity_residual);
    out.max_closure = std::max(out.max_closure, f.closure_residual);
    out.frames.push_back(std::move(f));
  }
  return out;
}

}  // namespace quadfold
