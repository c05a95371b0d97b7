#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "quadfold/errors.hpp"
#include "quadfold/tolerances.hpp"

namespace quadfold {

template <typename Scalar>
using Vec4 = Eigen::Matrix<Scalar, 4, 1>;

template <typename Scalar>
inline constexpr Scalar kPi = std::numbers::pi_v<Scalar>;

template <typename Scalar>
Scalar deg2rad(Scalar d) { return d * kPi<Scalar> / Scalar(180); }
template <typename Scalar>
Scalar rad2deg(Scalar r) { return r * Scalar(180) / kPi<Scalar>; }

// Wrap to (-pi, pi].
template <typename Scalar>
Scalar normalize_angle(Scalar a) {
  using std::remainder;
  a = remainder(a, 2 * kPi<Scalar>);
  if (a <= -kPi<Scalar>) a += 2 * kPi<Scalar>;
  return a;
}

template <typename Scalar>
Scalar angle_difference(Scalar a, Scalar b) {
  using std::abs;
  return abs(normalize_angle(a - b));
}

inline int wrap4(int k) { return ((k % 4) + 4) % 4; }

// Degree-4 vertex, sector angles alpha_1..alpha_4 stored 0-based. Crease c_i
// separates alpha_i and alpha_{i+1}; creases are numbered counter-clockwise.
template <typename Scalar>
class Vertex4T {
 public:
  using Angles = Vec4<Scalar>;

  Vertex4T() : alpha_(Angles::Constant(kPi<Scalar> / 2)) {}

  explicit Vertex4T(const Angles& alpha, Scalar tol = Scalar(1e-9)) : alpha_(alpha) {
    using std::abs;
    for (int i = 0; i < 4; ++i)
      if (!(alpha_[i] > 0) || !(alpha_[i] < 2 * kPi<Scalar>))
        throw Error(ErrorCode::InvalidSectorAngles, "sector angle outside (0, 2pi)");
    if (abs(alpha_.sum() - 2 * kPi<Scalar>) > tol)
      throw Error(ErrorCode::InvalidSectorAngles, "sector angles do not sum to 2pi");
  }

  static Vertex4T from_degrees(Scalar a1, Scalar a2, Scalar a3, Scalar a4,
                               Scalar tol = Scalar(1e-9)) {
    return Vertex4T(Angles(deg2rad(a1), deg2rad(a2), deg2rad(a3), deg2rad(a4)), tol);
  }

  const Angles& alpha() const { return alpha_; }
  Scalar operator[](int i) const { return alpha_[i]; }

  // alpha'_k = alpha_{k+s}; crease c'_k is the old c_{k+s}.
  Vertex4T shifted(int s) const {
    Vertex4T out(*this);
    for (int k = 0; k < 4; ++k) out.alpha_[k] = alpha_[wrap4(k + s)];
    return out;
  }

  // Reflection swapping c_1 and c_3.
  Vertex4T mirrored() const {
    Vertex4T out(*this);
    out.alpha_ = Angles(alpha_[3], alpha_[2], alpha_[1], alpha_[0]);
    return out;
  }

 private:
  Angles alpha_;
};

using Vertex4 = Vertex4T<double>;

template <typename Scalar>
Vec4<Scalar> shift_rho(const Vec4<Scalar>& rho, int s) {
  Vec4<Scalar> out;
  for (int k = 0; k < 4; ++k) out[k] = rho[wrap4(k + s)];
  return out;
}

template <typename Scalar>
Vec4<Scalar> mirror_rho(const Vec4<Scalar>& rho) {
  return Vec4<Scalar>(rho[2], rho[1], rho[0], rho[3]);
}

enum class VertexCase { AdjacentCollinear, StraightLine, DoubleCollinear, Generic, Trivial };

enum class BranchId { Branch1, Branch2, LineSegment1, LineSegment2 };

const char* to_string(VertexCase c);
const char* to_string(BranchId b);
BranchId parse_branch(const std::string& s);

struct VertexClass {
  VertexCase tag = VertexCase::Generic;
  std::vector<std::pair<int, int>> collinear_pairs;  // 0-based crease indices
  bool flat_foldable = false;
  int canonical_shift = 0;
  std::vector<std::string> warnings;
};

template <typename Scalar>
struct VertexSolution {
  Vec4<Scalar> rho;     // wrapped to (-pi, pi]
  Vec4<Scalar> lifted;  // continuous branch values, zero at the flat state
  Scalar xi{};
  Scalar parameter{};
  BranchId branch = BranchId::Branch1;
};

template <typename Scalar>
struct FoldIntervalT {
  Scalar lo{}, hi{};
  BranchId branch = BranchId::Branch1;
  int driver = 0;  // crease whose angle equals the branch parameter
};

namespace detail {

// 0 = not equal, 1 = equal, 2 = inside the warning band
template <typename Scalar>
int near_pi(Scalar x, const Tolerances& tol) {
  using std::abs;
  const Scalar d = abs(x - kPi<Scalar>);
  if (d <= Scalar(tol.angle)) return 1;
  if (d <= Scalar(tol.class_band)) return 2;
  return 0;
}

template <typename Scalar>
Scalar checked_acos(Scalar arg, Scalar clamp) {
  using std::abs;
  using std::acos;
  if (!(abs(arg) <= 1 + clamp)) throw Error(ErrorCode::OutOfDomain, "arccos argument outside [-1, 1]");
  return acos(std::clamp(arg, Scalar(-1), Scalar(1)));
}

// Closed-form angles of the two spherical triangles cut off by the diagonal
// xi (sides alpha1, alpha2, xi and alpha3, alpha4, xi), evaluated through
// half-angle formulas with the small semi-perimeter differences formed
// directly. The plain arccos forms lose half the digits next to the flat
// state and next to rho1 = pi.
template <typename Scalar>
struct SphericalAngles {
  Scalar xi, A, B, C, D, E;
  bool valid;
};

template <typename Scalar>
SphericalAngles<Scalar> spherical_angles(const Vec4<Scalar>& a, Scalar t, Scalar clamp) {
  using std::asin;
  using std::atan2;
  using std::cos;
  using std::max;
  using std::min;
  using std::sin;
  using std::sqrt;
  const Scalar pi = kPi<Scalar>;
  const Scalar a1 = a[0], a2 = a[1], a3 = a[2], a4 = a[3];
  const Scalar s = a1 + a2, u = a3 + a4;
  const Scalar sstar = min(s, 2 * pi - s);
  const Scalar d = a1 > a2 ? a1 - a2 : a2 - a1;
  const Scalar st = sin(t / 2), ct = cos(t / 2);
  const Scalar k = sin(a1) * sin(a2);
  const Scalar sh = sin(s / 2), ch = cos(s / 2);
  const Scalar xi0 = 2 * atan2(sqrt(max(Scalar(0), sh * sh - k * st * st)), sqrt(ch * ch + k * st * st));
  auto safe_asin = [](Scalar num, Scalar den) {
    if (!(den > Scalar(1e-300))) return Scalar(0);
    return asin(std::clamp(num / den, Scalar(0), Scalar(1)));
  };
  // xi = s* - 2 delta = d + 2 eps
  const Scalar delta = safe_asin(k * st * st, sin((sstar + xi0) / 2));
  const Scalar eps = safe_asin(k * ct * ct, sin((xi0 + d) / 2));
  const Scalar xi = delta <= eps ? sstar - 2 * delta : d + 2 * eps;

  // Sines of sigma, sigma - alpha1, sigma - alpha2, sigma - xi for each triangle.
  Scalar x0, x1, x2, x3;
  const Scalar xmax = sin(eps), xother = sin(d + eps);
  x1 = a1 >= a2 ? xmax : xother;
  x2 = a1 >= a2 ? xother : xmax;
  if (s <= pi) {
    x3 = sin(delta);
    x0 = sin(max(a1, a2) + eps);
  } else {
    x0 = sin(delta);
    x3 = sin(min(a1, a2) - eps);
  }
  const Scalar y1r = (a4 + xi - a3) / 2, y2r = (a3 + xi - a4) / 2;
  const bool valid = y1r >= -clamp && y2r >= -clamp;
  Scalar y0, y3;
  if (u <= pi) {
    y3 = sin(delta);
    y0 = sin(u - delta);
  } else {
    y0 = sin(delta);
    y3 = sin((u - xi) / 2);
  }
  const Scalar y1 = sin(max(y1r, Scalar(0))), y2 = sin(max(y2r, Scalar(0)));
  auto rt = [](Scalar p, Scalar q) { return sqrt(max(Scalar(0), p * q)); };
  SphericalAngles<Scalar> out;
  out.xi = xi;
  out.A = 2 * atan2(rt(x0, x1), rt(x2, x3));
  out.D = 2 * atan2(rt(x0, x2), rt(x1, x3));
  out.B = 2 * atan2(rt(y1, y3), rt(y0, y2));
  out.E = 2 * atan2(rt(y2, y3), rt(y0, y1));
  out.C = 2 * atan2(rt(y0, y3), rt(y1, y2));
  out.valid = valid;
  return out;
}

}  // namespace detail

template <typename Scalar>
VertexClass classify(const Vertex4T<Scalar>& v, const Tolerances& tol = {}, bool snap = false) {
  VertexClass out;
  const auto& a = v.alpha();
  auto equal_pi = [&](Scalar x, const char* what) {
    int r = detail::near_pi(x, tol);
    if (r == 2) {
      out.warnings.push_back(std::string(what) + " within the near-degenerate band" +
                             (snap ? " (snapped)" : ""));
      return snap;
    }
    return r == 1;
  };
  for (int i = 0; i < 4; ++i)
    if (a[i] > kPi<Scalar> && !equal_pi(a[i], "sector angle near pi")) {
      out.tag = VertexCase::Trivial;
      return out;
    }
  out.flat_foldable = equal_pi(a[0] + a[2], "alpha1 + alpha3 near pi") &&
                      equal_pi(a[1] + a[3], "alpha2 + alpha4 near pi");
  for (int i = 0; i < 4; ++i)
    if (equal_pi(a[i], "sector angle near pi")) {
      out.tag = VertexCase::AdjacentCollinear;
      out.collinear_pairs.push_back({wrap4(i - 1), i});
      out.canonical_shift = wrap4(i - 1);
      return out;
    }
  const bool c13 = equal_pi(a[1] + a[2], "alpha2 + alpha3 near pi");
  const bool c24 = equal_pi(a[2] + a[3], "alpha3 + alpha4 near pi");
  if (c13) out.collinear_pairs.push_back({0, 2});
  if (c24) out.collinear_pairs.push_back({1, 3});
  if (c13 && c24) {
    out.tag = VertexCase::DoubleCollinear;
  } else if (c13 || c24) {
    out.tag = VertexCase::StraightLine;
    out.canonical_shift = c13 ? 0 : 1;
  } else {
    out.tag = VertexCase::Generic;
  }
  return out;
}

template <typename Scalar>
Scalar xi_of(const Vertex4T<Scalar>& v, Scalar rho1, const Tolerances& tol = {}) {
  using std::abs;
  using std::cos;
  using std::sin;
  if (!(abs(rho1) <= kPi<Scalar> + Scalar(tol.angle)))
    throw Error(ErrorCode::OutOfDomain, "rho1 outside [-pi, pi]");
  const Scalar arg = cos(v[0]) * cos(v[1]) - sin(v[0]) * sin(v[1]) * cos(rho1);
  return detail::checked_acos(arg, Scalar(tol.clamp));
}

// One continuous folding branch of a vertex, parametrised by the folding
// angle of a single driver crease. Works for every non-trivial class.
template <typename Scalar>
class BranchCurve {
 public:
  enum class Family { Generic, FlatFoldable, StraightCurve, Line };
  enum class Relation { Driver, Linear, Zero, TanHalf, Monotone };

  BranchCurve(const Vertex4T<Scalar>& v, BranchId branch, const Tolerances& tol = {},
              bool snap = false)
      : vertex_(v), branch_(branch), tol_(tol) {
    using std::abs;
    using std::cos;
    using std::sin;
    const VertexClass cls = classify(v, tol, snap);
    class_ = cls.tag;
    const bool b1 = branch == BranchId::Branch1 || branch == BranchId::LineSegment1;
    switch (cls.tag) {
      case VertexCase::Trivial:
        throw Error(ErrorCode::WrongClass, "vertex with a sector angle above pi does not fold");
      case VertexCase::AdjacentCollinear:
        if (branch != BranchId::LineSegment1)
          throw Error(ErrorCode::WrongClass, "adjacent-collinear vertex only has LineSegment1");
        set_line(cls.canonical_shift, {1, 1, 0, 0});
        break;
      case VertexCase::DoubleCollinear:
        if (cls.flat_foldable) {
          set_flat_foldable(b1);
        } else {
          set_line(0, b1 ? std::array<int, 4>{1, 0, 1, 0} : std::array<int, 4>{0, 1, 0, 1});
        }
        break;
      case VertexCase::StraightLine: {
        const int s = cls.canonical_shift;
        // Intrinsic naming: Branch1 keeps rho1*rho3 >= 0.
        const bool line = (s == 0) ? b1 : !b1;
        if (branch == BranchId::LineSegment1 && s != 0)
          throw Error(ErrorCode::WrongClass, "LineSegment1 needs c1 and c3 collinear");
        if (branch == BranchId::LineSegment2 && s != 1)
          throw Error(ErrorCode::WrongClass, "LineSegment2 needs c2 and c4 collinear");
        if (cls.flat_foldable) {
          set_flat_foldable(b1);
        } else if (line) {
          set_line(s, {1, 0, 1, 0});
        } else {
          set_straight_curve(s);
        }
        break;
      }
      case VertexCase::Generic:
        if (branch == BranchId::LineSegment1 || branch == BranchId::LineSegment2)
          throw Error(ErrorCode::WrongClass, "generic vertex has no line-segment branch");
        if (cls.flat_foldable) set_flat_foldable(b1);
        else set_generic();
        break;
    }
  }

  // Forces the spherical-trigonometry form on a generic vertex.
  static BranchCurve generic_of(const Vertex4T<Scalar>& v, BranchId branch, const Tolerances& tol = {}) {
    BranchCurve c(v, branch, tol);
    if (c.class_ != VertexCase::Generic)
      throw Error(ErrorCode::WrongClass, "generic form needs a generic vertex");
    if (c.family_ != Family::Generic) c.set_generic();
    return c;
  }

  const Vertex4T<Scalar>& vertex() const { return vertex_; }
  BranchId branch() const { return branch_; }
  VertexCase vertex_class() const { return class_; }
  Family family() const { return family_; }
  int shift() const { return shift_; }
  int driver() const { return shift_; }
  Scalar lo() const { return lo_; }
  Scalar hi() const { return hi_; }
  FoldIntervalT<Scalar> interval() const { return {lo_, hi_, branch_, driver()}; }

  // How crease k (0-based, original labelling) depends on the parameter.
  Relation relation(int k) const {
    const int c = wrap4(k - shift_);
    switch (family_) {
      case Family::Line:
        return c == 0 ? Relation::Driver : (line_[c] == 0 ? Relation::Zero : Relation::Linear);
      case Family::FlatFoldable:
        if (c == 0) return Relation::Driver;
        if (c == 2) return Relation::Linear;
        return ff_coef_ == 0 ? Relation::Zero : Relation::TanHalf;
      case Family::StraightCurve:
        if (c == 0) return Relation::Driver;
        if (c == 2) return Relation::Linear;
        return Relation::Monotone;
      case Family::Generic:
        return c == 0 ? Relation::Driver : Relation::Monotone;
    }
    return Relation::Monotone;
  }

  bool structurally_zero(int k) const { return relation(k) == Relation::Zero; }

  // Continuous branch values in the original labelling. Throws OutOfDomain
  // outside the arccos domain.
  Vec4<Scalar> lifted(Scalar t) const {
    if (t < 0) return -lifted_nonneg(-t);
    return lifted_nonneg(t);
  }

  bool valid_at(Scalar t) const {
    using std::abs;
    if (abs(t) > kPi<Scalar>) return false;
    try {
      const Vec4<Scalar> r = lifted(t);
      for (int k = 0; k < 4; ++k)
        if (!(abs(r[k]) <= kPi<Scalar> + Scalar(tol_.clamp))) return false;
      return true;
    } catch (const Error&) {
      return false;
    }
  }

  VertexSolution<Scalar> at(Scalar t) const {
    if (t < lo_ - Scalar(tol_.root) || t > hi_ + Scalar(tol_.root))
      throw Error(ErrorCode::OutOfDomain, "driving angle outside the fold interval");
    t = std::clamp(t, lo_, hi_);
    VertexSolution<Scalar> s;
    s.parameter = t;
    s.lifted = lifted(t);
    for (int k = 0; k < 4; ++k) s.rho[k] = normalize_angle(s.lifted[k]);
    s.branch = branch_;
    s.xi = xi_of(vertex_, std::clamp(s.lifted[0], -kPi<Scalar>, kPi<Scalar>), tol_);
    return s;
  }

  // Range of the lifted angle of crease k over the fold interval.
  std::pair<Scalar, Scalar> range(int k) const {
    const Scalar a = lifted(lo_)[k], b = lifted(hi_)[k];
    return {std::min(a, b), std::max(a, b)};
  }

  // Solve the branch given the folding angle of crease k.
  VertexSolution<Scalar> solve_from(int k, Scalar value) const {
    using std::abs;
    using std::atan;
    using std::tan;
    if (value == 0) return at(Scalar(0));
    const int c = wrap4(k - shift_);
    Scalar t{};
    switch (relation(k)) {
      case Relation::Driver:
        t = value;
        break;
      case Relation::Linear:
        t = value / Scalar(linear_sign(c));
        break;
      case Relation::Zero:
        throw Error(ErrorCode::NotDrivable, "crease is flat along this branch");
      case Relation::TanHalf: {
        // c == 1: rho = 2 atan(k tan(t/2)); c == 3 carries the branch sign.
        const Scalar sgn = (c == 1) ? Scalar(1) : Scalar(ff_side_sign_);
        if (abs(value) > kPi<Scalar> + Scalar(tol_.root))
          throw Error(ErrorCode::OutOfDomain, "target angle outside [-pi, pi]");
        t = 2 * atan(tan(sgn * std::clamp(value, -kPi<Scalar>, kPi<Scalar>) / 2) / ff_coef_);
        break;
      }
      case Relation::Monotone:
        t = invert_monotone(k, value);
        break;
    }
    return at(t);
  }

 private:
  void set_line(int s, std::array<int, 4> pattern) {
    family_ = Family::Line;
    shift_ = s;
    line_ = pattern;
    // Parametrise by the first non-zero canonical crease.
    int first = 0;
    while (line_[first] == 0) ++first;
    shift_ = wrap4(s + first);
    std::array<int, 4> re{};
    for (int c = 0; c < 4; ++c) re[c] = line_[wrap4(c + first)];
    line_ = re;
    lo_ = -kPi<Scalar>;
    hi_ = kPi<Scalar>;
  }

  void set_flat_foldable(bool b1) {
    using std::cos;
    using std::sin;
    using std::tan;
    family_ = Family::FlatFoldable;
    shift_ = 0;
    const Scalar a1 = vertex_[0], a2 = vertex_[1];
    if (b1) {
      ff_coef_ = sin((a2 - a1) / 2) / sin((a2 + a1) / 2);
      ff_lin_ = 1;
      ff_side_sign_ = -1;
    } else {
      const Scalar den = cos((a2 + a1) / 2);
      using std::abs;
      if (abs(den) < Scalar(tol_.angle)) {
        // Infinite coefficient: only c2 and c4 fold, as a single line.
        set_line(0, {0, 1, 0, 1});
        return;
      }
      ff_coef_ = -cos((a2 - a1) / 2) / den;
      ff_lin_ = -1;
      ff_side_sign_ = 1;
    }
    if (std::abs(double(ff_coef_)) < 1e-15) ff_coef_ = 0;
    lo_ = -kPi<Scalar>;
    hi_ = kPi<Scalar>;
  }

  void set_straight_curve(int s) {
    using std::cos;
    using std::sin;
    family_ = Family::StraightCurve;
    shift_ = s;
    canon_ = vertex_.shifted(s).alpha();
    off_ = (canon_[0] + canon_[1] < kPi<Scalar>) ? 2 * kPi<Scalar> : Scalar(0);
    find_interval();
  }

  void set_generic() {
    family_ = Family::Generic;
    shift_ = 0;
    canon_ = vertex_.alpha();
    off_ = (canon_[0] + canon_[1] < kPi<Scalar>) ? 2 * kPi<Scalar> : Scalar(0);
    find_interval();
  }

  int linear_sign(int c) const {
    if (family_ == Family::Line) return line_[c];
    if (family_ == Family::FlatFoldable) return ff_lin_;
    return -1;  // straight curve: rho3 = -rho1
  }

  // Lifted values in canonical labelling for t >= 0.
  Vec4<Scalar> canonical_nonneg(Scalar t) const {
    using std::atan;
    using std::cos;
    using std::sin;
    using std::tan;
    Vec4<Scalar> r = Vec4<Scalar>::Zero();
    if (t == 0) return r;
    const Scalar cl = Scalar(tol_.clamp);
    switch (family_) {
      case Family::Line:
        for (int c = 0; c < 4; ++c) r[c] = Scalar(line_[c]) * t;
        break;
      case Family::FlatFoldable: {
        const Scalar side = 2 * atan(ff_coef_ * tan(t / 2));
        r << t, side, Scalar(ff_lin_) * t, Scalar(ff_side_sign_) * side;
        break;
      }
      case Family::StraightCurve: {
        const auto sp = detail::spherical_angles(canon_, t, cl);
        r << t, 2 * sp.A - off_, -t, 2 * sp.D - off_;
        break;
      }
      case Family::Generic: {
        const auto sp = detail::spherical_angles(canon_, t, cl);
        if (!sp.valid) throw Error(ErrorCode::OutOfDomain, "vertex cannot reach this driving angle");
        if (branch_ == BranchId::Branch1) r << t, sp.A - sp.B, sp.C, sp.D - sp.E;
        else r << t, sp.A + sp.B - off_, -sp.C, sp.D + sp.E - off_;
        break;
      }
    }
    return r;
  }

  Vec4<Scalar> lifted_nonneg(Scalar t) const {
    const Vec4<Scalar> c = canonical_nonneg(t);
    Vec4<Scalar> r;
    for (int k = 0; k < 4; ++k) r[k] = c[wrap4(k - shift_)];
    return r;
  }

  // Largest h such that the branch is defined and physical on [0, h].
  void find_interval() {
    const int n = 64;
    Scalar good = 0, bad = -1;
    for (int i = 1; i <= n; ++i) {
      const Scalar t = kPi<Scalar> * Scalar(i) / Scalar(n);
      if (valid_at(t)) {
        good = t;
      } else {
        bad = t;
        break;
      }
    }
    if (bad > 0) {
      while (bad - good > std::numeric_limits<Scalar>::epsilon() * 4) {
        const Scalar mid = (good + bad) / 2;
        if (mid == good || mid == bad) break;
        if (valid_at(mid)) good = mid;
        else bad = mid;
      }
    }
    lo_ = -good;
    hi_ = good;
  }

  Scalar invert_monotone(int k, Scalar value) const {
    using std::abs;
    Scalar a = lo_, b = hi_;
    const Scalar fa = lifted(a)[k] - value, fb = lifted(b)[k] - value;
    const Scalar slack = Scalar(tol_.root);
    if ((fa > slack && fb > slack) || (fa < -slack && fb < -slack))
      throw Error(ErrorCode::OutOfDomain, "target angle outside the branch range");
    if (fa * fb >= 0) return abs(fa) <= abs(fb) ? a : b;
    const bool increasing = fb > fa;
    for (int it = 0; it < 300; ++it) {
      const Scalar m = (a + b) / 2;
      if (m == a || m == b) break;
      const Scalar fm = lifted(m)[k] - value;
      if (fm == 0) return m;
      if ((fm < 0) == increasing) a = m;
      else b = m;
    }
    return (a + b) / 2;
  }

  Vertex4T<Scalar> vertex_;
  BranchId branch_;
  Tolerances tol_;
  VertexCase class_ = VertexCase::Generic;
  Family family_ = Family::Generic;
  int shift_ = 0;
  Vec4<Scalar> canon_ = Vec4<Scalar>::Zero();
  Scalar off_{};
  std::array<int, 4> line_{};
  Scalar ff_coef_{};
  int ff_lin_ = 1, ff_side_sign_ = -1;
  Scalar lo_{}, hi_{};
};

template <typename Scalar>
VertexSolution<Scalar> solve_generic(const Vertex4T<Scalar>& v, Scalar rho1, BranchId branch,
                                     const Tolerances& tol = {}) {
  if (classify(v, tol).tag != VertexCase::Generic)
    throw Error(ErrorCode::WrongClass, "solve_generic needs a generic vertex");
  if (branch != BranchId::Branch1 && branch != BranchId::Branch2)
    throw Error(ErrorCode::WrongClass, "generic vertex has Branch1 and Branch2 only");
  // Always use the spherical-trigonometry closed form here, even for
  // flat-foldable input, so it can be cross-checked against solve_flatfoldable.
  return BranchCurve<Scalar>::generic_of(v, branch, tol).at(rho1);
}

template <typename Scalar>
VertexSolution<Scalar> solve_straightline(const Vertex4T<Scalar>& v, Scalar rho1, BranchId branch,
                                          const Tolerances& tol = {}) {
  const VertexClass cls = classify(v, tol);
  if (cls.tag != VertexCase::StraightLine)
    throw Error(ErrorCode::WrongClass, "solve_straightline needs a straight-line vertex");
  BranchCurve<Scalar> curve(v, branch, tol);
  return curve.solve_from(0, rho1);
}

template <typename Scalar>
VertexSolution<Scalar> solve_flatfoldable(const Vertex4T<Scalar>& v, Scalar rho1, BranchId branch,
                                          const Tolerances& tol = {}) {
  using std::abs;
  const VertexClass cls = classify(v, tol);
  if (!cls.flat_foldable) throw Error(ErrorCode::WrongClass, "vertex is not flat-foldable");
  if (abs(v[0] - kPi<Scalar> / 2) <= Scalar(tol.angle) && abs(v[1] - kPi<Scalar> / 2) <= Scalar(tol.angle))
    throw Error(ErrorCode::DegenerateVertex, "alpha1 = alpha2 = pi/2");
  if (branch != BranchId::Branch1 && branch != BranchId::Branch2)
    throw Error(ErrorCode::WrongClass, "flat-foldable solve takes Branch1 or Branch2");
  if (!(abs(rho1) <= kPi<Scalar> + Scalar(tol.angle)))
    throw Error(ErrorCode::OutOfDomain, "rho1 outside [-pi, pi]");
  BranchCurve<Scalar> curve(v, branch, tol);
  return curve.solve_from(0, rho1);
}

template <typename Scalar>
FoldIntervalT<Scalar> fold_interval(const Vertex4T<Scalar>& v, BranchId branch, const Tolerances& tol = {}) {
  return BranchCurve<Scalar>(v, branch, tol).interval();
}

template <typename Scalar>
struct MonotonicityReport {
  Scalar min_abs_slope = std::numeric_limits<Scalar>::infinity();
  std::array<bool, 4> checked{};
  int samples = 0;
};

template <typename Scalar>
MonotonicityReport<Scalar> monotonicity_check(const Vertex4T<Scalar>& v, BranchId branch, int n_samples,
                                              const Tolerances& tol = {}) {
  using std::abs;
  const VertexClass cls = classify(v, tol);
  if (cls.tag != VertexCase::Generic && cls.tag != VertexCase::StraightLine)
    throw Error(ErrorCode::WrongClass, "monotonicity check needs a generic or straight-line vertex");
  if (n_samples < 2) throw Error(ErrorCode::OutOfDomain, "need at least two samples");
  BranchCurve<Scalar> curve(v, branch, tol);
  MonotonicityReport<Scalar> rep;
  rep.samples = n_samples;
  std::vector<Vec4<Scalar>> vals(n_samples);
  std::vector<Scalar> ts(n_samples);
  for (int i = 0; i < n_samples; ++i) {
    ts[i] = std::min(curve.hi(), curve.lo() + (curve.hi() - curve.lo()) * Scalar(i) / Scalar(n_samples - 1));
    vals[i] = curve.lifted(ts[i]);
  }
  for (int k = 0; k < 4; ++k) {
    if (k == curve.driver() || curve.structurally_zero(k)) continue;
    rep.checked[k] = true;
    int dir = 0;
    for (int i = 1; i < n_samples; ++i) {
      const Scalar d = vals[i][k] - vals[i - 1][k];
      const int s = d > 0 ? 1 : (d < 0 ? -1 : 0);
      if (s == 0 || (dir != 0 && s != dir))
        throw Error(ErrorCode::MonotonicityViolation,
                    "crease " + std::to_string(k + 1) + " not strictly monotone near sample " +
                        std::to_string(i));
      dir = s;
      rep.min_abs_slope = std::min(rep.min_abs_slope, abs(d / (ts[i] - ts[i - 1])));
    }
  }
  return rep;
}

}  // namespace quadfold
