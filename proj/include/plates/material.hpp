#pragma once

#include <vector>

#include "plates/errors.hpp"
#include "plates/types.hpp"

namespace plates {

// Periodic two-Lame-coefficient material on the unit cell Y = [0,1)^2,
// piecewise constant on an M x M grid of subcells. Subcell (i, j) covers
// [i/M,(i+1)/M) x [j/M,(j+1)/M); linear storage index is j*M + i, i.e. the
// file lists M rows of M values, row j giving the y2-slab j.
//
// The stored-energy density is of St. Venant-Kirchhoff type,
//   W(y,F) = mu(y)/4 |F^T F - I|^2 + lambda(y)/8 (tr(F^T F - I))^2,
// which is frame indifferent, vanishes exactly on SO(3) and admits the
// quadratic expansion Q_3(y,G) = mu |sym G|^2 + lambda/2 (tr G)^2 at the
// identity.
struct PeriodicMaterial {
  int resolution = 1;
  std::vector<double> mu;
  std::vector<double> lambda;

  static PeriodicMaterial homogeneous(double mu_val, double lambda_val);
  // mu varying in y1 only: column i of the cell grid carries mu_vals[i].
  static PeriodicMaterial laminate_y1(const std::vector<double>& mu_vals,
                                      const std::vector<double>& lambda_vals);
  static PeriodicMaterial checkerboard(double mu0, double mu1, double lambda0, double lambda1,
                                       int resolution);

  int cell_index(const Vec2& y) const;
  double mu_at(const Vec2& y) const { return mu[cell_index(y)]; }
  double lambda_at(const Vec2& y) const { return lambda[cell_index(y)]; }

  // Throws ValidationError if the invariants (mu > 0, lambda >= 0, sizes) fail.
  void validate() const;
};

double eval_W(const PeriodicMaterial& mat, const Vec2& y, const Mat3& F);

// Quadratic form Q_3(y, G) acting on the symmetric part of 3x3 matrices,
// stored as one symmetric 6x6 Voigt matrix per subcell.
struct QuadraticForm3 {
  int resolution = 1;
  std::vector<Mat6> C;

  int cell_index(const Vec2& y) const;
  double eval(const Vec2& y, const Mat3& G) const;
  double eval_cell(int c, const Mat3& G) const;
  double bilinear_cell(int c, const Vec6& a, const Vec6& b) const { return a.dot(C[c] * b); }
};

QuadraticForm3 linearize_q3(const PeriodicMaterial& mat);

// Reduced form Q_2(y, A) on symmetric 2x2 matrices together with the linear
// minimizer map A -> a(y, A) of the out-of-plane relaxation
//   Q_2(y, A) = min_a Q_3(y, A + a x e_3).
struct QuadraticForm2 {
  int resolution = 1;
  std::vector<Mat3> C;          // Voigt (11,22,12), unscaled off-diagonal
  std::vector<Mat3> minimizer;  // a = minimizer[c] * voigt2(A)

  int cell_index(const Vec2& y) const;
  double eval(const Vec2& y, const Mat2& A) const;
  double eval_cell(int c, const Vec3& v) const { return v.dot(C[c] * v); }
  double bilinear_cell(int c, const Vec3& a, const Vec3& b) const { return a.dot(C[c] * b); }
  Vec3 minimizer_a(const Vec2& y, const Mat2& A) const;

  // Exact cell average of Q_2(., A); subcell sums, no quadrature error.
  double mean_value(const Mat2& A) const;
};

// Throws SingularReduction if the out-of-plane normal equations are singular.
QuadraticForm2 reduce_q2(const QuadraticForm3& q3);

}  // namespace plates
