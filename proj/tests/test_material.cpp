#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "plates/material.hpp"

using namespace plates;

namespace {
Mat3 rot_z(double angle) {
  Mat3 r = Mat3::Identity();
  r(0, 0) = std::cos(angle);
  r(0, 1) = -std::sin(angle);
  r(1, 0) = std::sin(angle);
  r(1, 1) = std::cos(angle);
  return r;
}
}  // namespace

TEST_CASE("W vanishes on rotations and at identity") {
  const auto mat = PeriodicMaterial::laminate_y1({1.0, 10.0}, {0.5, 2.0});
  const Vec2 y(0.3, 0.7);
  CHECK(eval_W(mat, y, Mat3::Identity()) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(eval_W(mat, y, rot_z(M_PI / 6)) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(eval_W(mat, y, rot_z(1.234)) < 1e-28);
}

TEST_CASE("W quadratic anchor: uniaxial stretch") {
  const auto mat = PeriodicMaterial::homogeneous(1.0, 0.0);
  const double d = 1e-3;
  Mat3 F = Mat3::Identity();
  F(0, 0) = 1.0 + d;
  const double w = eval_W(mat, Vec2(0.1, 0.1), F);
  CHECK(std::abs(w - d * d) <= 3.0 * d * d * d);
}

TEST_CASE("frame indifference on random samples") {
  const auto mat = PeriodicMaterial::laminate_y1({1.0, 10.0}, {0.0, 3.0});
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int i = 0; i < 100; ++i) {
    Mat3 F;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) F(r, c) = u(rng);
    const Mat3 R = oracles::random_rotation(rng);
    const Vec2 y(0.5 * (u(rng) + 1.5) / 1.5, 0.5 * (u(rng) + 1.5) / 1.5);
    CHECK(std::abs(eval_W(mat, y, R * F) - eval_W(mat, y, F)) <= 1e-12);
  }
}

TEST_CASE("nondegeneracy W >= C dist^2(F, SO(3)) on samples") {
  const auto mat = PeriodicMaterial::laminate_y1({1.0, 10.0}, {0.0, 3.0});
  std::mt19937_64 rng(12);
  std::normal_distribution<double> n(0.0, 0.4);
  double min_ratio = 1e300;
  for (int i = 0; i < 1000; ++i) {
    Mat3 F = oracles::random_rotation(rng);
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) F(r, c) += n(rng);
    const double d2 = oracles::dist2_SO3(F);
    if (d2 < 1e-12) continue;
    const double w = eval_W(mat, Vec2(0.3, 0.6), F);
    min_ratio = std::min(min_ratio, w / d2);
  }
  CHECK(min_ratio > 0.0);
  MESSAGE("sampled nondegeneracy ratio >= ", min_ratio);
}

TEST_CASE("Q3 values and quadratic expansion") {
  const auto mat1 = PeriodicMaterial::homogeneous(1.0, 0.0);
  const auto q3_1 = linearize_q3(mat1);
  Mat3 G = Mat3::Zero();
  G(0, 0) = 1.0;
  CHECK(q3_1.eval(Vec2(0.1, 0.1), G) == doctest::Approx(1.0));

  const auto mat2 = PeriodicMaterial::homogeneous(2.0, 0.0);
  const auto q3_2 = linearize_q3(mat2);
  Mat3 G12 = Mat3::Zero();
  G12(0, 1) = 1.0;  // |sym|^2 = 1/2
  CHECK(q3_2.eval(Vec2(0.1, 0.1), G12) == doctest::Approx(1.0));

  // skew matrices carry no energy
  Mat3 S = Mat3::Zero();
  S(0, 1) = 1.0;
  S(1, 0) = -1.0;
  S(1, 2) = 0.4;
  S(2, 1) = -0.4;
  const auto matl = PeriodicMaterial::laminate_y1({1.0, 10.0}, {0.7, 0.2});
  const auto q3l = linearize_q3(matl);
  CHECK(q3l.eval(Vec2(0.6, 0.2), S) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("remainder W(I+G) - Q3(G) is o(|G|^2)") {
  const auto mat = PeriodicMaterial::laminate_y1({1.0, 10.0}, {0.5, 1.5});
  const auto q3 = linearize_q3(mat);
  std::mt19937_64 rng(13);
  std::normal_distribution<double> n(0.0, 1.0);
  Mat3 Gdir;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) Gdir(r, c) = n(rng);
  Gdir /= Gdir.norm();
  const Vec2 y(0.8, 0.1);
  double prev = 1e300;
  for (double delta : {1e-2, 1e-3, 1e-4}) {
    const Mat3 G = delta * Gdir;
    const double ratio = std::abs(eval_W(mat, y, Mat3::Identity() + G) - q3.eval(y, G)) /
                         (delta * delta);
    CHECK(ratio < prev);
    prev = ratio;
  }
  CHECK(prev < 1e-3);
}

TEST_CASE("reduce_q2 closed-form anchors") {
  const auto q2a = reduce_q2(linearize_q3(PeriodicMaterial::homogeneous(1.0, 0.0)));
  CHECK(q2a.eval(Vec2(0.1, 0.1), Mat2::Identity()) == doctest::Approx(2.0));
  CHECK(q2a.minimizer_a(Vec2(0.1, 0.1), Mat2::Identity()).norm() ==
        doctest::Approx(0.0).epsilon(1e-14));

  const auto q2b = reduce_q2(linearize_q3(PeriodicMaterial::homogeneous(1.0, 1.0)));
  CHECK(q2b.eval(Vec2(0.1, 0.1), Mat2::Identity()) == doctest::Approx(10.0 / 3.0));
  const Vec3 a = q2b.minimizer_a(Vec2(0.1, 0.1), Mat2::Identity());
  CHECK(a[0] == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(a[1] == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(a[2] == doctest::Approx(-2.0 / 3.0));

  CHECK(q2b.eval(Vec2(0.1, 0.1), Mat2::Zero()) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("Q2 <= Q3 on embedded matrices and PSD") {
  const auto mat = PeriodicMaterial::laminate_y1({2.0, 7.0}, {1.0, 0.3});
  const auto q3 = linearize_q3(mat);
  const auto q2 = reduce_q2(q3);
  std::mt19937_64 rng(14);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    Mat2 A;
    A << n(rng), 0, 0, n(rng);
    A(0, 1) = A(1, 0) = n(rng);
    const Vec2 y(0.25, 0.9);
    CHECK(q2.eval(y, A) <= q3.eval(y, embed2(A)) + 1e-12);
    CHECK(q2.eval(y, A) >= -1e-14);
  }
}

TEST_CASE("reduce_q2 agrees with brute-force minimization over a") {
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> um(0.5, 8.0), ul(0.0, 4.0);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const auto mat = PeriodicMaterial::laminate_y1({um(rng), um(rng)}, {ul(rng), ul(rng)});
    const auto q3 = linearize_q3(mat);
    const auto q2 = reduce_q2(q3);
    Mat2 A;
    A << n(rng), 0, 0, n(rng);
    A(0, 1) = A(1, 0) = n(rng);
    const Vec2 y(trial % 2 ? 0.2 : 0.8, 0.5);

    // shrinking grid search over a in R^3
    auto f = [&](const Vec3& a) {
      Mat3 G = embed2(A);
      G.col(2) += a;
      return q3.eval(y, G);
    };
    Vec3 center = Vec3::Zero();
    double radius = 4.0, best = f(center);
    for (int round = 0; round < 20; ++round) {
      Vec3 arg = center;
      for (int i = -4; i <= 4; ++i)
        for (int j = -4; j <= 4; ++j)
          for (int k = -4; k <= 4; ++k) {
            const Vec3 a = center + radius / 4.0 * Vec3(i, j, k);
            const double v = f(a);
            if (v < best) {
              best = v;
              arg = a;
            }
          }
      center = arg;
      radius *= 0.5;
    }
    CHECK(q2.eval(y, A) == doctest::Approx(best).epsilon(1e-8));
  }
}

TEST_CASE("minimizer map is linear in A") {
  const auto q2 = reduce_q2(linearize_q3(PeriodicMaterial::laminate_y1({1.0, 5.0}, {2.0, 0.4})));
  std::mt19937_64 rng(16);
  std::normal_distribution<double> n(0.0, 1.0);
  const Vec2 y(0.7, 0.3);
  for (int i = 0; i < 20; ++i) {
    Mat2 A, B;
    A << n(rng), 0, 0, n(rng);
    A(0, 1) = A(1, 0) = n(rng);
    B << n(rng), 0, 0, n(rng);
    B(0, 1) = B(1, 0) = n(rng);
    const double al = n(rng), be = n(rng);
    const Vec3 lhs = q2.minimizer_a(y, al * A + be * B);
    const Vec3 rhs = al * q2.minimizer_a(y, A) + be * q2.minimizer_a(y, B);
    CHECK((lhs - rhs).norm() <= 1e-12);
  }
}

TEST_CASE("material validation") {
  PeriodicMaterial bad;
  bad.resolution = 2;
  bad.mu = {1.0, -1.0, 1.0, 1.0};
  bad.lambda = {0.0, 0.0, 0.0, 0.0};
  CHECK_THROWS_AS(bad.validate(), ValidationError);
}
