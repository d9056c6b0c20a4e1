#pragma once

#include <Eigen/Dense>

namespace plates {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;
using Mat32 = Eigen::Matrix<double, 3, 2>;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat6 = Eigen::Matrix<double, 6, 6>;

// Voigt ordering conventions used throughout: symmetric 2x2 matrices are
// stored as (11, 22, 12) and symmetric 3x3 matrices as (11, 22, 33, 23, 13, 12),
// with the off-diagonal entries unscaled.

inline Vec3 voigt2(const Mat2& a) {
  return Vec3(a(0, 0), a(1, 1), 0.5 * (a(0, 1) + a(1, 0)));
}

inline Mat2 from_voigt2(const Vec3& v) {
  Mat2 m;
  m << v[0], v[2], v[2], v[1];
  return m;
}

inline Vec6 voigt3(const Mat3& a) {
  Mat3 s = 0.5 * (a + a.transpose());
  Vec6 v;
  v << s(0, 0), s(1, 1), s(2, 2), s(1, 2), s(0, 2), s(0, 1);
  return v;
}

inline Mat3 from_voigt3(const Vec6& v) {
  Mat3 m;
  m << v[0], v[5], v[4], v[5], v[1], v[3], v[4], v[3], v[2];
  return m;
}

// Embeds a 2x2 matrix into 3x3 with zero third row and column.
inline Mat3 embed2(const Mat2& a) {
  Mat3 m = Mat3::Zero();
  m.topLeftCorner<2, 2>() = a;
  return m;
}

inline Vec2 rotate90(const Vec2& t) { return Vec2(-t[1], t[0]); }

struct Rect {
  double x0 = 0.0, y0 = 0.0, x1 = 1.0, y1 = 1.0;
  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  double area() const { return width() * height(); }
};

}  // namespace plates
