#include "plates/cell_moderate.hpp"

#include <algorithm>
#include <cmath>

#include "plates/errors.hpp"

namespace plates {

std::vector<BasisFn> moderate_basis(const QuadraticForm2& q2, const ModerateOptions& opts) {
  if (opts.modes < 1) throw ValidationError("solve_cell_m: modes must be >= 1");
  std::vector<BasisFn> basis = trig_lattice_basis(opts.modes);
  if (opts.axis_enrichment) {
    add_axis_strips(basis, 0, q2.resolution);
    add_axis_strips(basis, 1, q2.resolution);
  }
  for (const auto& [p, q] : opts.dir_enrichment) {
    const bool axis_dir = (p == 0 || q == 0);
    if (axis_dir && opts.axis_enrichment) {
      // identical to an axis strip family; skip the duplicate
    } else {
      add_dir_strips(basis, p, q, q2.resolution);
    }
    if (opts.dir_profile_modes > 0)
      add_lattice_modes_along(basis, p, q, opts.dir_profile_modes, opts.modes);
  }
  // drop duplicate lattice modes possibly introduced by overlapping enrichments
  std::vector<BasisFn> dedup;
  dedup.reserve(basis.size());
  for (const auto& fn : basis) {
    bool dup = false;
    if (fn.tag == BasisFn::Tag::TrigCos || fn.tag == BasisFn::Tag::TrigSin) {
      for (const auto& other : dedup)
        if (other.tag == fn.tag && other.kvec == fn.kvec) {
          dup = true;
          break;
        }
    }
    if (!dup) dedup.push_back(fn);
  }
  return dedup;
}

PeriodicScalarField2 corrector_from_solution(const std::vector<BasisFn>& basis,
                                             const Eigen::VectorXd& x, int modes) {
  PeriodicScalarField2 f;
  f.modes = modes;
  // collect lattice modes
  for (std::size_t a = 0; a < basis.size(); ++a) {
    const BasisFn& fn = basis[a];
    if (fn.tag == BasisFn::Tag::TrigCos) {
      f.kvecs.push_back(fn.kvec);
    }
  }
  f.c_cos = Eigen::VectorXd::Zero(f.kvecs.size());
  f.c_sin = Eigen::VectorXd::Zero(f.kvecs.size());
  std::size_t idx = 0;
  // strip accumulators keyed by (T, count)
  struct StripAcc {
    Vec2 T;
    double per;
    Eigen::VectorXd g;
  };
  std::vector<StripAcc> accs;
  for (std::size_t a = 0; a < basis.size(); ++a) {
    const BasisFn& fn = basis[a];
    const double xa = x[a];
    switch (fn.tag) {
      case BasisFn::Tag::TrigCos: {
        // basis psi = -cos(omega.y)/|omega|^2
        f.c_cos[idx] = -xa / fn.omega.squaredNorm();
        break;
      }
      case BasisFn::Tag::TrigSin: {
        f.c_sin[idx] = -xa / fn.omega.squaredNorm();
        ++idx;  // sin follows its cos partner
        break;
      }
      case BasisFn::Tag::AxisStrip:
      case BasisFn::Tag::DirStrip: {
        StripAcc* acc = nullptr;
        for (auto& s : accs)
          if ((s.T - fn.T).norm() < 1e-14 && s.g.size() == fn.strip_count) acc = &s;
        if (!acc) {
          accs.push_back({fn.T, fn.per, Eigen::VectorXd::Zero(fn.strip_count)});
          acc = &accs.back();
        }
        acc->g[fn.strip_index] += xa;
        acc->g[fn.strip_count - 1] -= xa;
        break;
      }
      default:
        throw std::logic_error("corrector_from_solution: unexpected basis tag");
    }
  }
  for (auto& acc : accs) {
    if (acc.g.cwiseAbs().maxCoeff() < 1e-300) continue;
    StripComponent sc;
    sc.T = acc.T;
    sc.profile.period = acc.per;
    sc.profile.pc_g = acc.g;
    sc.profile.finalize();
    f.strips.push_back(std::move(sc));
  }
  return f;
}

namespace {

CellSystem assemble(const QuadraticForm2& q2, const Mat2& ii, const std::vector<BasisFn>& basis,
                    const ModerateOptions& opts) {
  if (opts.backend == AssemblyBackend::Exact) return assemble_exact(q2, ii, basis);
  const int order = opts.quad_order > 0 ? opts.quad_order : 2 * opts.modes + 2;
  return assemble_quadrature(q2, ii, basis, order);
}

}  // namespace

CellSolution solve_cell_m(const QuadraticForm2& q2, const Mat2& ii, const ModerateOptions& opts) {
  const std::vector<BasisFn> basis = moderate_basis(q2, opts);
  const CellSystem sys = assemble(q2, ii, basis, opts);
  const SolveResult res = solve_cell_system(sys);
  CellSolution sol;
  sol.energy = res.energy;
  sol.modes = opts.modes;
  sol.residual_norm = res.residual;
  sol.corrector = corrector_from_solution(basis, res.x, opts.modes);
  return sol;
}

HomogenizedForm assemble_qhom_m(const QuadraticForm2& q2, const ModerateOptions& opts) {
  const std::vector<BasisFn> basis = moderate_basis(q2, opts);
  const Mat2 e11 = (Mat2() << 1, 0, 0, 0).finished();
  const Mat2 e22 = (Mat2() << 0, 0, 0, 1).finished();
  const Mat2 e12 = (Mat2() << 0, 1, 1, 0).finished();
  const Mat2 units[3] = {e11, e22, e12};

  CellSystem sys[3];
  SolveResult res[3];
  for (int k = 0; k < 3; ++k) {
    sys[k] = assemble(q2, units[k], basis, opts);
    res[k] = solve_cell_system(sys[k]);
  }
  // The minimum is quadratic in II (the corrector is linear in II); its
  // bilinear extension at the minimizers is c0(A,B) + g_A . x_B.
  HomogenizedForm hf;
  hf.modes = opts.modes;
  const int M = q2.resolution;
  const double w2 = 1.0 / (M * M);
  for (int a = 0; a < 3; ++a) {
    for (int b = a; b < 3; ++b) {
      double c0ab = 0.0;
      const Vec3 va = voigt2(units[a]), vb = voigt2(units[b]);
      for (const Mat3& C : q2.C) c0ab += va.dot(C * vb) * w2;
      const double val = c0ab + (res[a].x.size() > 0 ? sys[a].g.dot(res[b].x) : 0.0);
      hf.H(a, b) = val;
      hf.H(b, a) = val;
    }
  }
  return hf;
}

}  // namespace plates
