#pragma once

#include <vector>

#include "plates/cell_moderate.hpp"
#include "plates/material.hpp"
#include "plates/parallel.hpp"

namespace plates {

// Bending direction of a rank-1 second fundamental form. Rationality is an
// input-level declaration: integer pairs are reduced and carry the cell
// period P = 1/sqrt(p^2+q^2); angles are tagged irrational verbatim.
struct Direction {
  bool rational = true;
  int p = 1, q = 0;
  double angle = 0.0;
  Vec2 T = Vec2(1, 0);
  double period = 1.0;
};

Direction classify_direction(int p, int q);
Direction classify_direction_angle(double radians);

// II = -coeff * T x T, stored factored; det II = 0 by construction.
struct BendingTensor {
  Direction dir;
  double coeff = 0.0;

  Mat2 tilde() const { return dir.T * dir.T.transpose(); }
  Mat2 ii() const { return -coeff * tilde(); }
};

// Factors a (numerically) rank-1 symmetric matrix. Throws NotRankOne if
// |det ii| > tol * |ii|^2. Gauge: T1 > 0, or T = (0,1) when T1 = 0; the zero
// matrix maps to coeff = 0, T = (1,0).
BendingTensor factor_bending(const Mat2& ii, double tol = 1e-9);

struct ScOptions {
  int modes = 16;
  bool strip_enrichment = true;
  int period_multiplier = 1;
  AssemblyBackend backend = AssemblyBackend::Exact;
  int quad_order = 0;
};

// Constrained cell problem. Irrational directions admit only constant
// correctors, so the energy is the plain cell average; rational directions
// reduce to the 1D periodic profile problem along T.
CellSolution solve_cell_sc(const QuadraticForm2& q2, const BendingTensor& bending,
                           const ScOptions& opts = {});

struct PenaltyOptions {
  int modes = 4;
  std::vector<double> rho_schedule;  // empty -> 10^0 .. 10^-6
  double grad_tol = 1e-9;
  int max_newton = 200;
  double violation_stop = 1e-8;
  int quad_order = 0;  // 0 -> 4*modes + 2
  unsigned seed = 0;   // reserved for perturbed restarts
};

struct PenalizedResult {
  double energy = 0.0;
  double violation = 0.0;
  double rho_final = 0.0;
  int newton_iterations = 0;
};

// Penalized 2D oracle for the determinant constraint: minimizes
// int Q_2(y, II + hess psi) + (1/rho) int det(II + hess psi)^2 over the full
// 2D trigonometric space by continuation in rho. Validates the reduction to
// the 1D profile problem from an independent route.
PenalizedResult oracle_penalized_2d(const QuadraticForm2& q2, const BendingTensor& bending,
                                    const PenaltyOptions& opts = {});

struct SweepRow {
  int p = 0, q = 0;
  double T1 = 0, T2 = 0, P = 0;
  double q_sc = 0, q_m = 0, mean_q2 = 0, gap = 0;
  bool ok = true;
  bool baseline = false;
};

struct SweepOptions {
  int modes = 16;
  int modes_m = 16;
  ExecPolicy policy = ExecPolicy::Parallel;
};

// Enumerates coprime pairs 0 <= p,q <= max_denominator ordered by (q,p) and
// appends the irrational golden-angle baseline row (marked p = q = -1).
std::vector<SweepRow> direction_sweep(const QuadraticForm2& q2, int max_denominator,
                                      const SweepOptions& opts = {});

}  // namespace plates
