#include <cmath>

#include "plates/cell_supercritical.hpp"
#include "plates/errors.hpp"
#include "plates/trig_integrals.hpp"

namespace plates {

namespace {

struct PenaltyWork {
  Eigen::MatrixXd A;  // elastic quadratic part
  Eigen::VectorXd g;
  double c0 = 0.0;
  // quadrature data for the determinant penalty
  std::vector<double> wt;
  std::vector<Eigen::MatrixXd> B;  // 3 x D per point: v(y,x) = v0 + B x
  Vec3 v0;

  double elastic(const Eigen::VectorXd& x) const {
    return c0 + 2.0 * g.dot(x) + x.dot(A * x);
  }
  double penalty(const Eigen::VectorXd& x) const {
    double s = 0.0;
    for (std::size_t i = 0; i < wt.size(); ++i) {
      const Vec3 v = v0 + B[i] * x;
      const double d = v[0] * v[1] - v[2] * v[2];
      s += wt[i] * d * d;
    }
    return s;
  }
};

}  // namespace

PenalizedResult oracle_penalized_2d(const QuadraticForm2& q2, const BendingTensor& bending,
                                    const PenaltyOptions& opts) {
  if (!bending.dir.rational)
    throw ValidationError("oracle_penalized_2d: requires a rational direction");
  if (opts.modes < 1 || opts.modes > 6)
    throw ValidationError("oracle_penalized_2d: modes must be in [1,6]");

  const Mat2 ii = bending.ii();
  const std::vector<BasisFn> basis = trig_lattice_basis(opts.modes);
  const int D = static_cast<int>(basis.size());

  PenaltyWork w;
  {
    const CellSystem sys = assemble_exact(q2, ii, basis);
    w.A = sys.A;
    w.g = sys.g;
    w.c0 = sys.c0;
  }
  w.v0 = voigt2(ii);

  // Quadrature mesh for the quartic penalty term.
  const int order = opts.quad_order > 0 ? opts.quad_order : 4 * opts.modes + 2;
  std::vector<double> nodes, wts;
  gauss_rule(order, nodes, wts);
  const int M = q2.resolution;
  const double h = 1.0 / M;
  for (int cj = 0; cj < M; ++cj)
    for (int ci = 0; ci < M; ++ci)
      for (int qi = 0; qi < order; ++qi)
        for (int qj = 0; qj < order; ++qj) {
          const Vec2 y((ci + 0.5 * (1 + nodes[qi])) * h, (cj + 0.5 * (1 + nodes[qj])) * h);
          Eigen::MatrixXd B(3, D);
          for (int a = 0; a < D; ++a) B.col(a) = basis[a].Gv * basis_factor(basis[a], y);
          w.B.push_back(std::move(B));
          w.wt.push_back(wts[qi] * wts[qj] * 0.25 * h * h);
        }

  std::vector<double> rho = opts.rho_schedule;
  if (rho.empty())
    for (int k = 0; k <= 6; ++k) rho.push_back(std::pow(10.0, -k));

  // Warm start from the unconstrained (moderate) trigonometric minimizer.
  Eigen::VectorXd x = Eigen::LDLT<Eigen::MatrixXd>(w.A).solve(-w.g);

  const double ii_scale = std::max(ii.squaredNorm(), 1e-30);
  Eigen::Matrix3d D2det;
  D2det << 0, 1, 0, 1, 0, 0, 0, 0, -2;

  PenalizedResult result;
  int total_newton = 0;
  for (double r : rho) {
    double tau = 1e-8;
    for (int it = 0; it < opts.max_newton; ++it) {
      // gradient and Hessian of F = E + C / r
      Eigen::VectorXd grad = 2.0 * (w.g + w.A * x);
      Eigen::MatrixXd hess = 2.0 * w.A;
      for (std::size_t i = 0; i < w.wt.size(); ++i) {
        const Vec3 v = w.v0 + w.B[i] * x;
        const double d = v[0] * v[1] - v[2] * v[2];
        const Vec3 dd(v[1], v[0], -2.0 * v[2]);
        const Eigen::VectorXd bd = w.B[i].transpose() * dd;
        grad += (2.0 * w.wt[i] / r) * d * bd;
        hess += (2.0 * w.wt[i] / r) *
                (bd * bd.transpose() + d * (w.B[i].transpose() * D2det * w.B[i]));
      }
      const double gnorm = grad.lpNorm<Eigen::Infinity>();
      const double fcur = w.elastic(x) + w.penalty(x) / r;
      if (gnorm <= opts.grad_tol * std::max(1.0, std::abs(fcur))) break;

      bool accepted = false;
      for (int tries = 0; tries < 40; ++tries) {
        Eigen::MatrixXd H = hess;
        H.diagonal().array() += tau;
        Eigen::LDLT<Eigen::MatrixXd> ldlt(H);
        const Eigen::VectorXd step = ldlt.solve(-grad);
        const Eigen::VectorXd xn = x + step;
        const double fn = w.elastic(xn) + w.penalty(xn) / r;
        if (fn < fcur - 1e-14 * std::abs(fcur)) {
          x = xn;
          tau = std::max(1e-10, tau * 0.3);
          accepted = true;
          break;
        }
        tau *= 10.0;
      }
      ++total_newton;
      if (!accepted) break;  // stationary to line-search resolution
    }
    result.rho_final = r;
    result.violation = std::sqrt(w.penalty(x)) / ii_scale;
    if (result.violation < opts.violation_stop) break;
  }

  result.energy = w.elastic(x);
  result.newton_iterations = total_newton;
  if (!(result.violation < 1e3))
    throw NonConvergence("oracle_penalized_2d: constraint violation " +
                             std::to_string(result.violation),
                         result.violation);
  return result;
}

}  // namespace plates
