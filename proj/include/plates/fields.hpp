#pragma once

#include <vector>

#include "plates/types.hpp"

namespace plates {

// Periodic 1D profile psi_T on [0, period). The smooth part is a finite
// trigonometric sum; an optional piecewise-constant second-derivative part on
// uniform breakpoints carries correctors of laminate-type coefficients
// exactly. psi' is continuous in both representations.
struct Profile1D {
  double period = 1.0;
  Eigen::VectorXd cos_c;  // coefficients of cos(2 pi m t / period), m = 1..N
  Eigen::VectorXd sin_c;
  Eigen::VectorXd pc_g;  // mean-zero second-derivative values on uniform intervals

  int modes() const { return static_cast<int>(cos_c.size()); }
  bool zero() const;

  double psi(double t) const;
  double dpsi(double t) const;
  double d2psi(double t) const;

  double coeff_norm() const;

  // Precomputed antiderivative tables for the pc part; call after editing pc_g.
  void finalize();

 private:
  std::vector<double> prefix_g_;   // G(t_m) = int_0^{t_m} g
  std::vector<double> prefix_G_;   // H(t_m) = int_0^{t_m} G
  double mean_G_ = 0.0, mean_psi_ = 0.0;
  bool finalized_ = false;
};

// Directional component of a 2D field: psi(y) += profile(T . y).
struct StripComponent {
  Vec2 T;
  Profile1D profile;
};

// Zero-mean Y-periodic scalar field: finite trigonometric sum over integer
// wavevectors plus optional directional strip components. Second derivatives
// are evaluated exactly from the representation.
struct PeriodicScalarField2 {
  int modes = 0;  // nominal spectral cutoff (bookkeeping)
  std::vector<Eigen::Vector2i> kvecs;
  Eigen::VectorXd c_cos, c_sin;
  std::vector<StripComponent> strips;

  bool zero() const;
  double eval(const Vec2& y) const;
  Vec2 grad(const Vec2& y) const;
  Mat2 hess(const Vec2& y) const;
  double coeff_norm() const;

  // this += a * other; requires identical kvec layout (or other empty).
  void axpy(double a, const PeriodicScalarField2& other);
};

// psi(y) = coeff * profile(T . y) for a rational direction T = (p,q)/r: the
// trigonometric modes land on the integer lattice m*(p,q) and transfer
// exactly; the pc part becomes a strip component.
PeriodicScalarField2 profile_as_field(const Profile1D& prof, int p, int q, double coeff);

}  // namespace plates
