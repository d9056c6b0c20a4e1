#include "plates/cell_supercritical.hpp"

#include <cmath>
#include <numeric>

#include "plates/errors.hpp"
#include "plates/polygon.hpp"
#include "plates/trig_integrals.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace plates {

Direction classify_direction(int p, int q) {
  if (p == 0 && q == 0) throw ZeroDirection("classify_direction: (0,0) has no direction");
  const int g = std::gcd(std::abs(p), std::abs(q));
  p /= g;
  q /= g;
  // sign gauge: T1 > 0, or T = (0,1)
  if (p < 0 || (p == 0 && q < 0)) {
    p = -p;
    q = -q;
  }
  Direction d;
  d.rational = true;
  d.p = p;
  d.q = q;
  const double r = std::hypot(static_cast<double>(p), static_cast<double>(q));
  d.T = Vec2(p / r, q / r);
  d.period = 1.0 / r;  // equals |T1/p| for p != 0 and |T2/q| otherwise
  d.angle = std::atan2(d.T[1], d.T[0]);
  return d;
}

Direction classify_direction_angle(double radians) {
  Direction d;
  d.rational = false;
  d.angle = radians;
  d.T = Vec2(std::cos(radians), std::sin(radians));
  d.period = 0.0;
  d.p = d.q = 0;
  return d;
}

BendingTensor factor_bending(const Mat2& ii, double tol) {
  BendingTensor b;
  const double norm2 = ii.squaredNorm();
  if (norm2 == 0.0) {
    b.dir.rational = false;
    b.dir.T = Vec2(1, 0);
    b.dir.angle = 0.0;
    b.coeff = 0.0;
    return b;
  }
  if (std::abs(ii.determinant()) > tol * norm2)
    throw NotRankOne("factor_bending: |det II| = " + std::to_string(ii.determinant()) +
                     " exceeds rank-1 tolerance");
  Eigen::SelfAdjointEigenSolver<Mat2> es(0.5 * (ii + ii.transpose()));
  const Vec2 ev = es.eigenvalues();
  const int imax = std::abs(ev[0]) > std::abs(ev[1]) ? 0 : 1;
  Vec2 T = es.eigenvectors().col(imax);
  if (T[0] < 0 || (std::abs(T[0]) < 1e-15 && T[1] < 0)) T = -T;
  if (std::abs(T[0]) < 1e-15) T = Vec2(0, 1);
  b.dir.rational = false;  // direction tag must come from classify_direction
  b.dir.T = T;
  b.dir.angle = std::atan2(T[1], T[0]);
  b.coeff = -ev[imax];
  return b;
}

namespace {

// Piecewise-linear representation of the fiber average
//   qbar(t) = average over { y : T.y = t (mod P) } of Q_2(y, tilde),
// exact for subcell-piecewise-constant coefficients: the breakpoints land on
// the uniform grid m P / M because coprime (p,q) reach every corner residue.
struct FiberProfile {
  double P = 1.0;
  int n = 1;                  // intervals per period
  std::vector<double> A, B;   // qbar = A[m] + B[m] * (t - tmid[m]) on interval m
  std::vector<double> tmid;

  double mean() const {
    double s = 0.0;
    for (int m = 0; m < n; ++m) s += A[m];
    return s / n;
  }
  // int over [a,b] (contained in one interval, wrap w) of qbar(t) cos(wt+p)
  double int_cos_against(int m, int wrap, double w, double ph, double a, double b) const {
    const double shift = tmid[m] + wrap * P;
    return (A[m] - B[m] * shift) * int_cos(w, ph, a, b) + B[m] * int_t_cos(w, ph, a, b);
  }
  double int_plain(int m) const { return A[m] * P / n; }
};

FiberProfile fiber_profile(const QuadraticForm2& q2, const Direction& dir) {
  FiberProfile fp;
  const int M = q2.resolution;
  fp.P = dir.period;
  fp.n = M;
  fp.A.assign(M, 0.0);
  fp.B.assign(M, 0.0);
  fp.tmid.assign(M, 0.0);
  const double delta = fp.P / M;
  const Mat2 tilde = dir.T * dir.T.transpose();
  const Vec3 vt = voigt2(tilde);
  const double h = 1.0 / M;
  for (int m = 0; m < M; ++m) {
    const double lo = m * delta, hi = (m + 1) * delta;
    fp.tmid[m] = 0.5 * (lo + hi);
    double m0 = 0.0, m1 = 0.0;  // int_band w dy and int_band w * t dy (t mod P)
    for (int cj = 0; cj < M; ++cj)
      for (int ci = 0; ci < M; ++ci) {
        const double wcell = vt.dot(q2.C[cj * M + ci] * vt);
        const Polygon cell = {Vec2(ci * h, cj * h), Vec2((ci + 1) * h, cj * h),
                              Vec2((ci + 1) * h, (cj + 1) * h), Vec2(ci * h, (cj + 1) * h)};
        for (const auto& piece : band_pieces_of(cell, dir.T, fp.P, lo, hi)) {
          const double area = poly_area(piece.poly);
          const Vec2 mom = poly_moment1(piece.poly);
          m0 += wcell * area;
          m1 += wcell * (dir.T.dot(mom) - piece.wrap * fp.P * area);
        }
      }
    // (1/P) int_I qbar = m0 and (1/P) int_I (t - tmid) qbar = m1 - tmid m0
    fp.A[m] = fp.P * m0 / delta;
    fp.B[m] = 12.0 * fp.P * (m1 - fp.tmid[m] * m0) / (delta * delta * delta);
  }
  return fp;
}

}  // namespace

CellSolution solve_cell_sc(const QuadraticForm2& q2, const BendingTensor& bending,
                           const ScOptions& opts) {
  CellSolution sol;
  sol.modes = opts.modes;
  const Mat2 ii = bending.ii();
  if (!bending.dir.rational || bending.coeff == 0.0) {
    // constant corrector; exact subcell average
    sol.energy = q2.mean_value(ii);
    sol.residual_norm = 0.0;
    sol.profile.period = 1.0;
    return sol;
  }
  if (opts.modes < 1) throw ValidationError("solve_cell_sc: modes must be >= 1");
  const int p = bending.dir.p, q = bending.dir.q;
  const int mult = std::max(1, opts.period_multiplier);
  const double c = bending.coeff;
  const double P = bending.dir.period;
  const double kP = mult * P;
  const int M = q2.resolution;

  if (opts.backend == AssemblyBackend::Quadrature) {
    // validation route through the generic 2D assembler (single period only)
    if (mult != 1)
      throw ValidationError("solve_cell_sc: quadrature backend supports period_multiplier 1");
    std::vector<BasisFn> basis;
    add_profile_modes(basis, p, q, opts.modes, 1);
    if (opts.strip_enrichment) add_dir_strips(basis, p, q, M, 1);
    const CellSystem sys = assemble_quadrature(
        q2, ii, basis, opts.quad_order > 0 ? opts.quad_order : 2 * opts.modes + 4);
    const SolveResult res = solve_cell_system(sys);
    sol.energy = res.energy;
    sol.residual_norm = res.residual;
    sol.profile.period = P;
    return sol;
  }

  // 1D reduced problem on [0, kP): minimize (1/kP) int qbar(t) (psi'' - c)^2 dt
  const FiberProfile fp = fiber_profile(q2, bending.dir);
  const int n_modes = opts.modes * mult;
  const int n_strips = (opts.strip_enrichment && M * mult >= 2) ? M * mult - 1 : 0;
  const int n_int = M * mult;  // integration intervals, aligned with strips
  const double delta = P / M;
  const int D = 2 * n_modes + n_strips;

  // basis: psi''(t) = sum_a x_a f_a with f = cos/sin oscillations and strip
  // indicator differences (chi_j - chi_last)
  std::vector<double> freq(2 * n_modes), phase(2 * n_modes);
  for (int m = 1; m <= n_modes; ++m) {
    freq[2 * (m - 1)] = 2.0 * M_PI * m / kP;
    phase[2 * (m - 1)] = 0.0;
    freq[2 * (m - 1) + 1] = freq[2 * (m - 1)];
    phase[2 * (m - 1) + 1] = -M_PI / 2.0;
  }
  auto strip_val = [&](int a, int interval) -> double {
    const int s = a - 2 * n_modes;
    if (interval == s) return 1.0;
    if (interval == n_int - 1) return -1.0;
    return 0.0;
  };

  CellSystem sys;
  sys.A = Eigen::MatrixXd::Zero(D, D);
  sys.g = Eigen::VectorXd::Zero(D);
  sys.c0 = c * c * fp.mean();

  for (int J = 0; J < n_int; ++J) {
    const int m = J % M;     // qbar interval
    const int wrap = J / M;  // period copy
    const double a = J * delta, b = (J + 1) * delta;
    // linear terms: -(c/kP) int qbar f_a
    for (int i = 0; i < 2 * n_modes; ++i)
      sys.g[i] += -(c / kP) * fp.int_cos_against(m, wrap, freq[i], phase[i], a, b);
    for (int s = 0; s < n_strips; ++s)
      sys.g[2 * n_modes + s] += -(c / kP) * strip_val(2 * n_modes + s, J) * fp.int_plain(m);
    // quadratic terms
    for (int i = 0; i < 2 * n_modes; ++i) {
      for (int j = i; j < 2 * n_modes; ++j) {
        const double v =
            0.5 * (fp.int_cos_against(m, wrap, freq[i] - freq[j], phase[i] - phase[j], a, b) +
                   fp.int_cos_against(m, wrap, freq[i] + freq[j], phase[i] + phase[j], a, b));
        sys.A(i, j) += v / kP;
      }
      for (int s = 0; s < n_strips; ++s) {
        const double sv = strip_val(2 * n_modes + s, J);
        if (sv == 0.0) continue;
        sys.A(i, 2 * n_modes + s) +=
            sv * fp.int_cos_against(m, wrap, freq[i], phase[i], a, b) / kP;
      }
    }
    for (int s = 0; s < n_strips; ++s) {
      const double sv = strip_val(2 * n_modes + s, J);
      if (sv == 0.0) continue;
      for (int s2 = s; s2 < n_strips; ++s2) {
        const double sv2 = strip_val(2 * n_modes + s2, J);
        if (sv2 == 0.0) continue;
        sys.A(2 * n_modes + s, 2 * n_modes + s2) += sv * sv2 * fp.int_plain(m) / kP;
      }
    }
  }
  for (int i = 0; i < D; ++i)
    for (int j = i + 1; j < D; ++j) sys.A(j, i) = sys.A(i, j);

  const SolveResult res = solve_cell_system(sys);
  sol.energy = res.energy;
  sol.residual_norm = res.residual;

  // profile reconstruction: psi''_T contribution of oscillator a is x_a f_a,
  // i.e. psi_T coefficient -x_a / freq^2; strip coefficients are pc g values.
  sol.profile.period = kP;
  sol.profile.cos_c = Eigen::VectorXd::Zero(n_modes);
  sol.profile.sin_c = Eigen::VectorXd::Zero(n_modes);
  for (int m2 = 1; m2 <= n_modes; ++m2) {
    const double w = freq[2 * (m2 - 1)];
    sol.profile.cos_c[m2 - 1] = -res.x[2 * (m2 - 1)] / (w * w);
    sol.profile.sin_c[m2 - 1] = -res.x[2 * (m2 - 1) + 1] / (w * w);
  }
  if (n_strips > 0) {
    Eigen::VectorXd pc = Eigen::VectorXd::Zero(n_int);
    for (int s = 0; s < n_strips; ++s) {
      pc[s] += res.x[2 * n_modes + s];
      pc[n_int - 1] -= res.x[2 * n_modes + s];
    }
    if (pc.cwiseAbs().maxCoeff() > 0) sol.profile.pc_g = pc;
  }
  sol.profile.finalize();
  return sol;
}

std::vector<SweepRow> direction_sweep(const QuadraticForm2& q2, int max_denominator,
                                      const SweepOptions& opts) {
  if (max_denominator < 1) throw ValidationError("sweep: max denominator must be >= 1");
  std::vector<std::pair<int, int>> pairs;
  for (int q = 0; q <= max_denominator; ++q)
    for (int p = 0; p <= max_denominator; ++p) {
      if (p == 0 && q == 0) continue;
      if (std::gcd(p, q) != 1) continue;
      pairs.emplace_back(p, q);
    }

  std::vector<SweepRow> rows(pairs.size() + 1);
  const int n = static_cast<int>(pairs.size());

  auto run_row = [&](int i) {
    SweepRow& row = rows[i];
    const auto [p, q] = pairs[i];
    row.p = p;
    row.q = q;
    try {
      const Direction dir = classify_direction(p, q);
      row.T1 = dir.T[0];
      row.T2 = dir.T[1];
      row.P = dir.period;
      BendingTensor bend;
      bend.dir = dir;
      bend.coeff = 1.0;
      ScOptions sc_opts;
      sc_opts.modes = opts.modes;
      row.q_sc = solve_cell_sc(q2, bend, sc_opts).energy;
      ModerateOptions m_opts;
      m_opts.modes = opts.modes_m;
      m_opts.dir_enrichment = {{p, q}};
      row.q_m = solve_cell_m(q2, bend.ii(), m_opts).energy;
      row.mean_q2 = q2.mean_value(bend.ii());
      row.gap = row.mean_q2 - row.q_sc;
      row.ok = true;
    } catch (const Error&) {
      row.q_sc = row.q_m = row.mean_q2 = row.gap = std::nan("");
      row.ok = false;
    }
  };

  if (opts.policy == ExecPolicy::Parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(max_threads())
#endif
    for (int i = 0; i < n; ++i) run_row(i);
  } else {
    for (int i = 0; i < n; ++i) run_row(i);
  }

  // irrational golden-angle baseline
  SweepRow& base = rows.back();
  base.baseline = true;
  base.p = base.q = -1;
  const double phi = 0.5 * (1.0 + std::sqrt(5.0));
  const Direction dir = classify_direction_angle(std::atan2(1.0, phi));
  base.T1 = dir.T[0];
  base.T2 = dir.T[1];
  base.P = 0.0;
  BendingTensor bend;
  bend.dir = dir;
  bend.coeff = 1.0;
  base.q_sc = solve_cell_sc(q2, bend, ScOptions{}).energy;
  ModerateOptions m_opts;
  m_opts.modes = opts.modes_m;
  base.q_m = solve_cell_m(q2, bend.ii(), m_opts).energy;
  base.mean_q2 = q2.mean_value(bend.ii());
  base.gap = base.mean_q2 - base.q_sc;
  return rows;
}

}  // namespace plates
