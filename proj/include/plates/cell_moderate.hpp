#pragma once

#include "plates/cell_basis.hpp"
#include "plates/fields.hpp"
#include "plates/material.hpp"

namespace plates {

// Corrector and minimum value of a cell problem. Moderate solves fill
// `corrector`; supercritical solves fill `profile` (1D along the bending
// direction, constant for irrational directions).
struct CellSolution {
  PeriodicScalarField2 corrector;
  Profile1D profile;
  double energy = 0.0;
  int modes = 0;
  double residual_norm = 0.0;
};

struct ModerateOptions {
  int modes = 16;
  // Enrichment of the trigonometric space with subcell-aligned strip
  // functions; laminate-type correctors then lie in the search space exactly.
  bool axis_enrichment = true;
  // Extra strip families (and optionally lattice modes) along rational
  // directions; used where a solve must dominate a 1D profile space.
  std::vector<std::pair<int, int>> dir_enrichment;
  int dir_profile_modes = 0;  // extended lattice modes m*(p,q) per direction, m <= this
  AssemblyBackend backend = AssemblyBackend::Exact;
  int quad_order = 0;  // 0 -> 2*modes + 2
};

CellSolution solve_cell_m(const QuadraticForm2& q2, const Mat2& ii,
                          const ModerateOptions& opts = {});

struct HomogenizedForm {
  Mat3 H = Mat3::Zero();  // Voigt (11,22,12), unscaled off-diagonal
  int modes = 0;
};

HomogenizedForm assemble_qhom_m(const QuadraticForm2& q2, const ModerateOptions& opts = {});

inline double qhom_eval(const HomogenizedForm& hf, const Mat2& ii) {
  const Vec3 v = voigt2(ii);
  return v.dot(hf.H * v);
}

// Shared helper: builds the moderate search space.
std::vector<BasisFn> moderate_basis(const QuadraticForm2& q2, const ModerateOptions& opts);

// Extracts the corrector field from solved coefficients.
PeriodicScalarField2 corrector_from_solution(const std::vector<BasisFn>& basis,
                                             const Eigen::VectorXd& x, int modes);

}  // namespace plates
