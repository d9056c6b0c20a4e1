#include <cmath>

#include "plates/geometry.hpp"
#include "plates/trig_integrals.hpp"

namespace plates {

namespace {

double arm_energy(const Piece& piece, const QuadraticForm2& q2, Regime regime,
                  const HomogenizedForm* H, const SurfaceEnergyOptions& opts) {
  // supercritical arms reuse one cell solve: the direction is constant and
  // the density scales as c^2
  double q_unit = 0.0;
  bool pointwise_mean = false;
  if (regime == Regime::Supercritical) {
    if (!piece.direction)
      throw ValidationError("surface_energy: supercritical arms need a direction tag");
    if (piece.direction->rational) {
      // constant T required
      for (double kg : piece.curve.kappa_gamma)
        if (std::abs(kg) > 1e-12)
          throw ValidationError("surface_energy: rational supercritical arm must be straight");
      BendingTensor b;
      b.dir = *piece.direction;
      b.coeff = 1.0;
      ScOptions so;
      so.modes = opts.modes;
      q_unit = solve_cell_sc(q2, b, so).energy;
    } else {
      pointwise_mean = true;
      for (double kg : piece.curve.kappa_gamma)
        if (std::abs(kg) > 1e-12)
          throw ValidationError("surface_energy: supercritical arms must have constant T");
    }
  }

  std::vector<double> nt, wt, ns, ws;
  gauss_rule(opts.gauss_t, nt, wt);
  gauss_rule(opts.gauss_s, ns, ws);

  double acc = 0.0;
  const int n_int = piece.curve.nodes() - 1;
  const double dt = piece.curve.dt;
  for (int i = 0; i < n_int; ++i) {
    for (int qi = 0; qi < opts.gauss_t; ++qi) {
      const double t = (i + 0.5 * (1 + nt[qi])) * dt;
      const double kg = piece.curve.kappa_gamma_at(t);
      const double k = piece.curve.kappa_at(t);
      const Vec2 T = piece.curve.T_at(t);
      double density_unit;  // Q(II)/c^2 at this t
      if (regime == Regime::Moderate) {
        const Mat2 tilde = T * T.transpose();
        density_unit = qhom_eval(*H, tilde);
      } else if (pointwise_mean) {
        const Mat2 tilde = T * T.transpose();
        density_unit = q2.mean_value(tilde);
      } else {
        density_unit = q_unit;
      }
      for (int qj = 0; qj < opts.gauss_s; ++qj) {
        const double s =
            piece.s_min + 0.5 * (1 + ns[qj]) * (piece.s_max - piece.s_min);
        const double jac = 1.0 - s * kg;
        if (jac <= 0.0) throw JacobianSignError("surface_energy: Jacobian sign");
        const double c = k / jac;
        acc += 0.25 * wt[qi] * ws[qj] * dt * (piece.s_max - piece.s_min) * c * c *
               density_unit * jac;
      }
    }
  }
  return acc / 12.0;
}

}  // namespace

double surface_energy(const DevelopableSurface& surface, const QuadraticForm2& q2, Regime regime,
                      const SurfaceEnergyOptions& opts) {
  HomogenizedForm H;
  if (regime == Regime::Moderate) {
    ModerateOptions mo;
    mo.modes = opts.modes;
    H = assemble_qhom_m(q2, mo);
  }
  double total = 0.0;
  for (const Piece& p : surface.pieces) {
    if (p.kind == Piece::Kind::Body) continue;  // II = 0
    total += arm_energy(p, q2, regime, &H, opts);
  }
  return total;
}

}  // namespace plates
