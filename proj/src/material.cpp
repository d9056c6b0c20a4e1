#include "plates/material.hpp"

#include <cmath>

namespace plates {

namespace {

int wrap_cell(double y, int m) {
  double f = y - std::floor(y);
  int i = static_cast<int>(f * m);
  if (i >= m) i = m - 1;  // guards f == 1.0 after rounding
  if (i < 0) i = 0;
  return i;
}

}  // namespace

PeriodicMaterial PeriodicMaterial::homogeneous(double mu_val, double lambda_val) {
  PeriodicMaterial m;
  m.resolution = 1;
  m.mu = {mu_val};
  m.lambda = {lambda_val};
  m.validate();
  return m;
}

PeriodicMaterial PeriodicMaterial::laminate_y1(const std::vector<double>& mu_vals,
                                               const std::vector<double>& lambda_vals) {
  PeriodicMaterial m;
  const int M = static_cast<int>(mu_vals.size());
  m.resolution = M;
  m.mu.resize(M * M);
  m.lambda.resize(M * M);
  for (int j = 0; j < M; ++j)
    for (int i = 0; i < M; ++i) {
      m.mu[j * M + i] = mu_vals[i];
      m.lambda[j * M + i] = lambda_vals[i];
    }
  m.validate();
  return m;
}

PeriodicMaterial PeriodicMaterial::checkerboard(double mu0, double mu1, double lambda0,
                                                double lambda1, int resolution) {
  PeriodicMaterial m;
  m.resolution = resolution;
  m.mu.resize(resolution * resolution);
  m.lambda.resize(resolution * resolution);
  for (int j = 0; j < resolution; ++j)
    for (int i = 0; i < resolution; ++i) {
      bool odd = (i + j) % 2 == 1;
      m.mu[j * resolution + i] = odd ? mu1 : mu0;
      m.lambda[j * resolution + i] = odd ? lambda1 : lambda0;
    }
  m.validate();
  return m;
}

int PeriodicMaterial::cell_index(const Vec2& y) const {
  int i = wrap_cell(y[0], resolution);
  int j = wrap_cell(y[1], resolution);
  return j * resolution + i;
}

void PeriodicMaterial::validate() const {
  const std::size_t n = static_cast<std::size_t>(resolution) * resolution;
  if (resolution < 1 || mu.size() != n || lambda.size() != n)
    throw ValidationError("material: field sizes do not match resolution");
  for (double v : mu)
    if (!(v > 0.0)) throw ValidationError("material: mu must be positive everywhere");
  for (double v : lambda)
    if (!(v >= 0.0)) throw ValidationError("material: lambda must be nonnegative");
}

double eval_W(const PeriodicMaterial& mat, const Vec2& y, const Mat3& F) {
  const Mat3 E = F.transpose() * F - Mat3::Identity();
  const double mu = mat.mu_at(y);
  const double la = mat.lambda_at(y);
  return 0.25 * mu * E.squaredNorm() + 0.125 * la * E.trace() * E.trace();
}

int QuadraticForm3::cell_index(const Vec2& y) const {
  int i = wrap_cell(y[0], resolution);
  int j = wrap_cell(y[1], resolution);
  return j * resolution + i;
}

double QuadraticForm3::eval(const Vec2& y, const Mat3& G) const {
  return eval_cell(cell_index(y), G);
}

double QuadraticForm3::eval_cell(int c, const Mat3& G) const {
  const Vec6 v = voigt3(G);
  return v.dot(C[c] * v);
}

QuadraticForm3 linearize_q3(const PeriodicMaterial& mat) {
  mat.validate();
  QuadraticForm3 q;
  q.resolution = mat.resolution;
  q.C.resize(mat.mu.size());
  // |sym G|^2 in unscaled Voigt coordinates weights the off-diagonal slots by 2.
  Vec6 diag;
  diag << 1, 1, 1, 2, 2, 2;
  Vec6 tr;
  tr << 1, 1, 1, 0, 0, 0;
  for (std::size_t c = 0; c < mat.mu.size(); ++c)
    q.C[c] = mat.mu[c] * diag.asDiagonal().toDenseMatrix() +
             0.5 * mat.lambda[c] * tr * tr.transpose();
  return q;
}

int QuadraticForm2::cell_index(const Vec2& y) const {
  int i = wrap_cell(y[0], resolution);
  int j = wrap_cell(y[1], resolution);
  return j * resolution + i;
}

double QuadraticForm2::eval(const Vec2& y, const Mat2& A) const {
  const Vec3 v = voigt2(A);
  return eval_cell(cell_index(y), v);
}

Vec3 QuadraticForm2::minimizer_a(const Vec2& y, const Mat2& A) const {
  return minimizer[cell_index(y)] * voigt2(A);
}

double QuadraticForm2::mean_value(const Mat2& A) const {
  const Vec3 v = voigt2(A);
  double sum = 0.0;
  for (const Mat3& c : C) sum += v.dot(c * v);
  return sum / static_cast<double>(C.size());
}

QuadraticForm2 reduce_q2(const QuadraticForm3& q3) {
  QuadraticForm2 q2;
  q2.resolution = q3.resolution;
  q2.C.resize(q3.C.size());
  q2.minimizer.resize(q3.C.size());

  // Voigt vectors of sym(e_i x e_3) and of the embedded 2x2 basis.
  Mat3 amat[3] = {Mat3::Zero(), Mat3::Zero(), Mat3::Zero()};
  for (int i = 0; i < 3; ++i) {
    amat[i].col(2) += 0.5 * Vec3::Unit(i);
    amat[i].row(2) += 0.5 * Vec3::Unit(i).transpose();
  }
  Mat2 basis2[3];
  basis2[0] << 1, 0, 0, 0;
  basis2[1] << 0, 0, 0, 1;
  basis2[2] << 0, 1, 1, 0;  // voigt2 = (0,0,1)

  for (std::size_t c = 0; c < q3.C.size(); ++c) {
    Vec6 av[3];
    for (int i = 0; i < 3; ++i) av[i] = voigt3(amat[i]);
    Mat3 K;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) K(i, j) = q3.bilinear_cell(static_cast<int>(c), av[i], av[j]);

    Eigen::FullPivLU<Mat3> lu(K);
    if (!lu.isInvertible())
      throw SingularReduction("reduce_q2: singular out-of-plane normal equations in subcell " +
                              std::to_string(c));

    // Columns of the minimizer map: a for each Voigt basis matrix of A.
    Mat3 amap;
    Vec6 bv[3];
    for (int k = 0; k < 3; ++k) {
      bv[k] = voigt3(embed2(basis2[k]));
      Vec3 f;
      for (int i = 0; i < 3; ++i) f[i] = q3.bilinear_cell(static_cast<int>(c), bv[k], av[i]);
      amap.col(k) = lu.solve(-f);
    }
    q2.minimizer[c] = amap;

    // Q_2 bilinear form evaluated at the relaxed pairs: with x_k the Voigt
    // vector of basis2[k] + a_k x e_3, the reduced matrix is x_i^T C3 x_j.
    Vec6 xv[3];
    for (int k = 0; k < 3; ++k) {
      Vec6 x = bv[k];
      for (int i = 0; i < 3; ++i) x += amap(i, k) * av[i];
      xv[k] = x;
    }
    Mat3 C2;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) C2(i, j) = q3.bilinear_cell(static_cast<int>(c), xv[i], xv[j]);
    q2.C[c] = 0.5 * (C2 + C2.transpose());
  }
  return q2;
}

}  // namespace plates
