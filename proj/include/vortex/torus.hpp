#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

namespace vortex {

/// A point of the plane used as a continuous lift of a point of the unit
/// torus. The torus image is the componentwise fractional part.
using LiftedPoint = Eigen::Vector2d;
using Vec2 = Eigen::Vector2d;

/// 2N points stored column-wise.
using PointSet = Eigen::Matrix2Xd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Representative of a displacement in [-1/2, 1/2)^2.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, 2, 1> wrap_displacement(const Eigen::MatrixBase<Derived>& d) {
  using std::floor;
  using Scalar = typename Derived::Scalar;
  const Scalar half(0.5);
  return {d(0) - floor(d(0) + half), d(1) - floor(d(1) + half)};
}

/// Torus image in [0, 1)^2.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, 2, 1> torus_image(const Eigen::MatrixBase<Derived>& p) {
  using std::floor;
  using Scalar = typename Derived::Scalar;
  Eigen::Matrix<Scalar, 2, 1> r(p(0) - floor(p(0)), p(1) - floor(p(1)));
  // floor can round x - floor(x) up to exactly 1 for tiny negative x
  for (int i = 0; i < 2; ++i)
    if (r(i) >= Scalar(1)) r(i) -= Scalar(1);
  return r;
}

template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar periodic_distance(const Eigen::MatrixBase<DerivedA>& p,
                                            const Eigen::MatrixBase<DerivedB>& q) {
  return wrap_displacement(p - q).norm();
}

/// The rotation (x, y) -> (y, -x).
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, 2, 1> rotate_J(const Eigen::MatrixBase<Derived>& v) {
  return {v(1), -v(0)};
}

inline Eigen::Matrix2d rotation_J() {
  Eigen::Matrix2d j;
  j << 0.0, 1.0, -1.0, 0.0;
  return j;
}

/// Smallest periodic distance between distinct columns; +inf for fewer than two points.
inline double min_periodic_distance(const PointSet& points) {
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 0; k < points.cols(); ++k)
    for (Eigen::Index l = k + 1; l < points.cols(); ++l)
      best = std::min(best, periodic_distance(points.col(k), points.col(l)));
  return best;
}

}  // namespace vortex
