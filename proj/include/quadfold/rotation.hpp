#pragma once

#include <Eigen/Geometry>

#include "quadfold/vertex.hpp"

namespace quadfold {

template <typename Scalar>
using Mat3 = Eigen::Matrix<Scalar, 3, 3>;
template <typename Scalar>
using Vec3 = Eigen::Matrix<Scalar, 3, 1>;

// Rotation by fold about the in-plane axis at angle theta from +x.
template <typename Scalar>
Mat3<Scalar> crease_rotation(Scalar theta, Scalar fold) {
  using std::cos;
  using std::sin;
  const Vec3<Scalar> axis(cos(theta), sin(theta), Scalar(0));
  return Eigen::AngleAxis<Scalar>(fold, axis).toRotationMatrix();
}

// In-plane crease directions with c1 along +x, counter-clockwise order.
template <typename Scalar>
Vec4<Scalar> crease_directions(const Vertex4T<Scalar>& v) {
  return Vec4<Scalar>(Scalar(0), v[1], v[1] + v[2], v[1] + v[2] + v[3]);
}

// Composition of the four crease rotations around the vertex; the identity
// exactly when the fold angles describe a rigid folded state.
template <typename Scalar>
Mat3<Scalar> loop_product(const Vertex4T<Scalar>& v, const Vec4<Scalar>& rho) {
  const Vec4<Scalar> d = crease_directions(v);
  Mat3<Scalar> m = Mat3<Scalar>::Identity();
  for (int i = 0; i < 4; ++i) m = m * crease_rotation(d[i], rho[i]);
  return m;
}

template <typename Scalar>
Scalar loop_closure_residual(const Vertex4T<Scalar>& v, const Vec4<Scalar>& rho) {
  return (loop_product(v, rho) - Mat3<Scalar>::Identity()).norm();
}

}  // namespace quadfold
