#pragma once

#include <vector>

#include "plates/fields.hpp"
#include "plates/material.hpp"
#include "plates/polygon.hpp"
#include "plates/types.hpp"

namespace plates {

enum class AssemblyBackend { Exact, Quadrature };

// Galerkin basis element for the cell problems. The Hessian of the underlying
// scalar function is Gmat * f(y) where f is either an oscillatory factor
// cos(omega . y + phase) or a signed combination of band indicators of the
// projected coordinate t = T . y (wrapped modulo per).
struct BasisFn {
  enum class Kind { Osc, Band };
  enum class Tag { TrigCos, TrigSin, ProfileCos, ProfileSin, AxisStrip, DirStrip };

  Kind kind = Kind::Osc;
  Tag tag = Tag::TrigCos;
  Vec3 Gv = Vec3::Zero();  // voigt2 of the Hessian profile matrix

  // Osc
  Vec2 omega = Vec2::Zero();
  double phase = 0.0;

  // Band: f(y) = sum_i sign[i] * chi_{ lo[i] <= wrap(T.y, per) < hi[i] }
  Vec2 T = Vec2::Zero();
  double per = 1.0;
  std::vector<double> lo, hi, sign;

  // reconstruction bookkeeping
  Eigen::Vector2i kvec = Eigen::Vector2i::Zero();  // TrigCos/TrigSin
  int profile_mode = 0;                            // ProfileCos/ProfileSin
  int strip_index = -1, strip_count = 0;           // strips
  int axis = -1;                                   // AxisStrip
};

// E(x) = c0 + 2 g^T x + x^T A x over the basis coefficients.
struct CellSystem {
  Eigen::MatrixXd A;
  Eigen::VectorXd g;
  double c0 = 0.0;
};

// Basis builders. The canonical trigonometric lattice uses the half-plane
// convention k1 > 0 or (k1 == 0 and k2 > 0); the constant mode is excluded.
std::vector<BasisFn> trig_lattice_basis(int N);
void add_axis_strips(std::vector<BasisFn>& basis, int axis, int M);
void add_dir_strips(std::vector<BasisFn>& basis, int p, int q, int M, int period_multiplier = 1);
// 1D profile modes along a rational direction, frequencies 2 pi m / (k P).
void add_profile_modes(std::vector<BasisFn>& basis, int p, int q, int N,
                       int period_multiplier = 1);
// Integer lattice modes m*(p,q) not already covered by |k|_inf <= N.
void add_lattice_modes_along(std::vector<BasisFn>& basis, int p, int q, int n_modes, int N);

CellSystem assemble_exact(const QuadraticForm2& q2, const Mat2& ii,
                          const std::vector<BasisFn>& basis);
CellSystem assemble_quadrature(const QuadraticForm2& q2, const Mat2& ii,
                               const std::vector<BasisFn>& basis, int order);

struct SolveResult {
  Eigen::VectorXd x;
  double energy = 0.0;
  double residual = 0.0;
};

// Minimizes the cell system; throws SolverFailure if the relative stationarity
// residual cannot be brought below the tolerance.
SolveResult solve_cell_system(const CellSystem& sys, double residual_tol = 1e-10);

// Evaluates f_a(y) for a basis function (used by the quadrature backend and
// the penalized oracle).
double basis_factor(const BasisFn& fn, const Vec2& y);

// Polygon pieces of `cell` where lo + wrap*per <= T.y < hi + wrap*per,
// enumerated over integer wrap offsets.
struct BandPiece {
  Polygon poly;
  int wrap = 0;
};
std::vector<BandPiece> band_pieces_of(const Polygon& cell, const Vec2& T, double per, double lo,
                                      double hi);

}  // namespace plates
