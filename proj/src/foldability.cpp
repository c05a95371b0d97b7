#include "quadfold/foldability.hpp"

#include <numeric>

#include "quadfold/search.hpp"

namespace quadfold {

namespace {

std::string at_vertex(int i, int j) { return "vertex (" + std::to_string(i) + ", " + std::to_string(j) + ")"; }

struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  bool join(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

}  // namespace

TreeStructure build_tree(const QuadPattern& p) {
  if (p.empty()) throw Error(ErrorCode::Usage, "empty pattern");
  TreeStructure t;
  t.rows = p.rows();
  t.cols = p.cols();
  for (int i = 1; i < p.rows(); ++i)
    for (int j = 0; j + 1 < p.cols(); ++j) {
      t.cut_creases.push_back(p.crease(i, j, E));
      t.cut_at.push_back({i, j});
    }

  // What is left between inner vertices must be a spanning tree of them.
  std::vector<bool> cut(p.edges().size(), false);
  for (int e : t.cut_creases) cut[e] = true;
  DisjointSets sets(p.rows() * p.cols());
  int joined = 0;
  for (int i = 0; i < p.rows(); ++i)
    for (int j = 0; j < p.cols(); ++j) {
      if (j + 1 < p.cols() && !cut[p.crease(i, j, E)]) {
        if (!sets.join(i * p.cols() + j, i * p.cols() + j + 1))
          throw Error(ErrorCode::PropagationConflict, "cut pattern still has a cycle");
        ++joined;
      }
      if (i + 1 < p.rows()) {
        if (!sets.join(i * p.cols() + j, (i + 1) * p.cols() + j))
          throw Error(ErrorCode::PropagationConflict, "cut pattern still has a cycle");
        ++joined;
      }
    }
  if (joined != p.rows() * p.cols() - 1) throw Error(ErrorCode::PropagationConflict, "cut pattern is disconnected");
  return t;
}

Propagator::Propagator(const QuadPattern& p, const BranchGrid& branches, const Tolerances& tol)
    : p_(&p), tol_(tol), tree_(build_tree(p)), links_(p.default_links) {
  const int n = p.rows() * p.cols();
  if (static_cast<int>(branches.size()) != n) throw Error(ErrorCode::Usage, "need one branch per inner vertex");
  if (static_cast<int>(links_.size()) != n) links_.assign(n, {1, 1});
  curves_.reserve(n);
  for (int i = 0; i < p.rows(); ++i)
    for (int j = 0; j < p.cols(); ++j) {
      try {
        curves_.emplace_back(p.vertex(i, j), branches[i * p.cols() + j], tol);
      } catch (const Error& e) {
        throw Error(e.code(), at_vertex(i, j) + ": " + e.detail());
      }
    }
  if (curve(0, 0).structurally_zero(N)) driver_ = W;
}

std::pair<double, double> Propagator::driver_range() const {
  if (curve(0, 0).structurally_zero(driver_))
    throw Error(ErrorCode::NotDrivable, at_vertex(0, 0) + ": neither north nor west crease folds on this branch");
  return curve(0, 0).range(driver_);
}

std::vector<Eigen::Vector4d> Propagator::top_states(double t) const {
  std::vector<Eigen::Vector4d> top(p_->cols());
  for (int j = 0; j < p_->cols(); ++j) {
    const auto& c = curve(0, j);
    try {
      if (j == 0) {
        if (c.structurally_zero(driver_)) throw Error(ErrorCode::NotDrivable, "driving crease never folds");
        top[j] = c.solve_from(driver_, t).lifted;
      } else {
        if (c.structurally_zero(W)) throw Error(ErrorCode::NotDrivable, "not driven by its west crease");
        top[j] = c.solve_from(W, top[j - 1][E]).lifted;
      }
    } catch (const Error& e) {
      throw Error(e.code(), at_vertex(0, j) + ": " + e.detail());
    }
  }
  return top;
}

std::vector<double> Propagator::top_row(double t) const {
  std::vector<double> rho;
  for (const auto& a : top_states(t)) rho.push_back(a[N]);
  return rho;
}

Propagation Propagator::at(double t) const { return finish(top_states(t)); }

Propagation Propagator::propagate(const std::vector<double>& rho_top) const {
  const int n = p_->cols();
  if (static_cast<int>(rho_top.size()) != n) throw Error(ErrorCode::Usage, "need one top-row angle per column");
  std::vector<Eigen::Vector4d> top(n);
  for (int j = 0; j < n; ++j) {
    const auto& c = curve(0, j);
    try {
      if (!c.structurally_zero(N)) top[j] = c.solve_from(N, rho_top[j]).lifted;
      else if (j > 0 && !c.structurally_zero(W)) top[j] = c.solve_from(W, top[j - 1][E]).lifted;
      else throw Error(ErrorCode::NotDrivable, "neither north nor west crease folds on this branch");
      if (angle_difference(top[j][N], rho_top[j]) > tol_.compat)
        throw Error(ErrorCode::PropagationConflict, "north crease disagrees with the prescribed angle");
    } catch (const Error& e) {
      throw Error(e.code(), at_vertex(0, j) + ": " + e.detail());
    }
  }
  return finish(std::move(top));
}

Propagation Propagator::finish(std::vector<Eigen::Vector4d> top) const {
  const QuadPattern& p = *p_;
  const int m = p.rows(), n = p.cols();
  Propagation out;
  out.vertex = std::move(top);
  out.vertex.resize(m * n);
  for (int i = 1; i < m; ++i)
    for (int j = 0; j < n; ++j) {
      const auto& c = curve(i, j);
      const Eigen::Vector4d& up = out.vertex[(i - 1) * n + j];
      const auto& link = links_[i * n + j];
      try {
        if (!c.structurally_zero(N)) out.vertex[i * n + j] = c.solve_from(N, up[S]).lifted;
        else if (!c.structurally_zero(W)) out.vertex[i * n + j] = c.solve_from(W, link[0] * up[W]).lifted;
        else if (!c.structurally_zero(E)) out.vertex[i * n + j] = c.solve_from(E, link[1] * up[E]).lifted;
        else throw Error(ErrorCode::NotDrivable, "no crease links it to the vertex above");
      } catch (const Error& e) {
        throw Error(e.code(), at_vertex(i, j) + ": " + e.detail());
      }
    }

  const auto& edges = p.edges();
  out.crease.assign(edges.size(), 0.0);
  std::vector<bool> set(edges.size(), false), cut(edges.size(), false);
  for (int e : tree_.cut_creases) cut[e] = true;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < 4; ++k) {
        const int e = p.crease(i, j, k);
        const double v = out.vertex[i * n + j][k];
        if (set[e]) {
          if (!cut[e] && angle_difference(out.crease[e], v) > tol_.compat)
            throw Error(ErrorCode::PropagationConflict,
                        at_vertex(i, j) + " disagrees with its neighbour on a shared crease");
          continue;
        }
        out.crease[e] = v;
        set[e] = true;
      }

  for (const auto& [i, j] : tree_.cut_at) {
    const double th = out.vertex[i * n + j][E], ph = out.vertex[i * n + j + 1][W];
    out.theta.push_back(th);
    out.phi.push_back(ph);
    out.max_residual = std::max(out.max_residual, angle_difference(th, ph));
  }
  return out;
}

CompatibilityReport certify(const QuadPattern& p, const BranchGrid& branches, int n_samples, const Tolerances& tol) {
  if (n_samples < 2) throw Error(ErrorCode::Usage, "need at least two samples");
  const Propagator prop(p, branches, tol);
  auto ok = [&](double t) {
    try {
      prop.at(t);
      return true;
    } catch (const Error&) {
      return false;
    }
  };
  const auto [dlo, dhi] = prop.driver_range();
  CompatibilityReport rep;
  rep.branches = branches;
  rep.hi = reach(ok, dhi);
  rep.lo = reach(ok, dlo);
  if (rep.hi - rep.lo <= tol.root) throw Error(ErrorCode::EmptyInterval, "tree structure only admits the flat state");

  for (int s = 0; s < n_samples; ++s) {
    const double t = s + 1 == n_samples ? rep.hi : rep.lo + (rep.hi - rep.lo) * s / (n_samples - 1);
    const Propagation pr = prop.at(t);
    rep.samples.push_back(t);
    rep.theta.push_back(pr.theta);
    rep.phi.push_back(pr.phi);
    rep.max_residual = std::max(rep.max_residual, pr.max_residual);
  }
  rep.rigid_foldable = rep.max_residual < tol.compat;
  if (!rep.rigid_foldable) rep.reason = "cut creases disagree";
  return rep;
}

std::vector<BranchGrid> column_branch_choices(const QuadPattern& p, const std::vector<int>& counts) {
  const int m = p.rows(), n = p.cols();
  if (static_cast<int>(counts.size()) != n) throw Error(ErrorCode::Usage, "need one branch count per column");
  BranchGrid base = p.default_branches;
  if (static_cast<int>(base.size()) != m * n) base.assign(m * n, BranchId::Branch1);
  std::vector<BranchGrid> out{base};
  for (int j = 0; j < n; ++j) {
    if (counts[j] < 2) continue;
    std::vector<BranchGrid> next;
    for (const auto& g : out)
      for (BranchId b : {BranchId::Branch1, BranchId::Branch2}) {
        BranchGrid h = g;
        for (int i = 0; i < m; ++i) h[i * n + j] = b;
        next.push_back(h);
      }
    out = std::move(next);
  }
  return out;
}

std::vector<BranchGrid> column_branch_choices(const QuadPattern& p) {
  return column_branch_choices(p, std::vector<int>(p.cols(), 2));
}

std::vector<Assignment> mv_assignment(const QuadPattern& p, const std::vector<double>& rho, const Tolerances& tol) {
  const auto& edges = p.edges();
  if (rho.size() != edges.size()) throw Error(ErrorCode::Usage, "need one folding angle per edge");
  std::vector<Assignment> out(edges.size());
  for (size_t e = 0; e < edges.size(); ++e) {
    if (!edges[e].is_crease()) out[e] = Assignment::Boundary;
    else if (std::abs(rho[e]) < tol.flat) out[e] = Assignment::Flat;
    else out[e] = rho[e] > 0 ? Assignment::Valley : Assignment::Mountain;
  }
  return out;
}

std::vector<Assignment> mv_assignment(const QuadPattern& p, const BranchGrid& branches, double t,
                                      const Tolerances& tol) {
  return mv_assignment(p, Propagator(p, branches, tol).at(t).crease, tol);
}

}  // namespace quadfold
