#include "plates/cell_basis.hpp"

#include <cmath>

#include "plates/errors.hpp"
#include "plates/polygon.hpp"
#include "plates/trig_integrals.hpp"

namespace plates {

namespace {

constexpr double kSnapTol = 1e-9;

Vec3 unit_hessian_voigt(const Vec2& dir) {
  const Vec2 u = dir.normalized();
  return voigt2(u * u.transpose());
}

double wrap_period(double t, double per) {
  double f = t / per;
  return (f - std::floor(f)) * per;
}

// All polygon pieces of subcell `cell` on which the band lo <= wrap(T.y) < hi
// is active, enumerated over wrap offsets.
void band_pieces(const Polygon& cell, const Vec2& T, double per, double lo, double hi,
                 std::vector<Polygon>& out) {
  for (auto& piece : band_pieces_of(cell, T, per, lo, hi)) out.push_back(std::move(piece.poly));
}

// int over subcell of f_a f_b where both factors are band combinations.
double band_band_integral(const Polygon& cell, const BasisFn& a, const BasisFn& b) {
  double total = 0.0;
  std::vector<Polygon> pieces_a;
  for (std::size_t i = 0; i < a.lo.size(); ++i) {
    pieces_a.clear();
    band_pieces(cell, a.T, a.per, a.lo[i], a.hi[i], pieces_a);
    for (const Polygon& pa : pieces_a) {
      std::vector<Polygon> pieces_b;
      for (std::size_t j = 0; j < b.lo.size(); ++j) {
        pieces_b.clear();
        band_pieces(pa, b.T, b.per, b.lo[j], b.hi[j], pieces_b);
        for (const Polygon& pb : pieces_b) total += a.sign[i] * b.sign[j] * poly_area(pb);
      }
    }
  }
  return total;
}

// int over subcell of f_band * cos(omega.y + phase)
double band_osc_integral(const Polygon& cell, const BasisFn& band, const Vec2& omega,
                         double phase) {
  double total = 0.0;
  std::vector<Polygon> pieces;
  for (std::size_t i = 0; i < band.lo.size(); ++i) {
    pieces.clear();
    band_pieces(cell, band.T, band.per, band.lo[i], band.hi[i], pieces);
    for (const Polygon& p : pieces) total += band.sign[i] * poly_cos(p, omega, phase);
  }
  return total;
}

// int over rect subcell of f_a f_b for two oscillatory factors
double osc_osc_integral(const Vec2& lo, const Vec2& hi, const BasisFn& a, const BasisFn& b) {
  // cos(u+pa) cos(v+pb) = 1/2 [cos(u-v+pa-pb) + cos(u+v+pa+pb)]
  return 0.5 * (rect_cos(a.omega - b.omega, a.phase - b.phase, lo, hi) +
                rect_cos(a.omega + b.omega, a.phase + b.phase, lo, hi));
}

}  // namespace

std::vector<BandPiece> band_pieces_of(const Polygon& cell, const Vec2& T, double per, double lo,
                                      double hi) {
  std::vector<BandPiece> out;
  double tmin = 1e300, tmax = -1e300;
  for (const Vec2& v : cell) {
    const double t = T.dot(v);
    tmin = std::min(tmin, t);
    tmax = std::max(tmax, t);
  }
  const int n0 = static_cast<int>(std::floor((tmin - hi) / per)) - 1;
  const int n1 = static_cast<int>(std::ceil((tmax - lo) / per)) + 1;
  for (int n = n0; n <= n1; ++n) {
    const double a = lo + n * per, b = hi + n * per;
    if (b <= tmin - kSnapTol || a >= tmax + kSnapTol) continue;
    std::vector<double> vals(cell.size());
    for (std::size_t i = 0; i < cell.size(); ++i) {
      double v = a - T.dot(cell[i]);
      if (std::abs(v) < kSnapTol) v = 0.0;
      vals[i] = v;  // keep T.y >= a
    }
    Polygon p1 = clip_by_values(cell, vals);
    if (p1.size() < 3) continue;
    vals.resize(p1.size());
    for (std::size_t i = 0; i < p1.size(); ++i) {
      double v = T.dot(p1[i]) - b;
      if (std::abs(v) < kSnapTol) v = 0.0;
      vals[i] = v;  // keep T.y <= b
    }
    Polygon p2 = clip_by_values(p1, vals);
    if (p2.size() >= 3 && std::abs(poly_area(p2)) > 1e-15) out.push_back({std::move(p2), n});
  }
  return out;
}

double basis_factor(const BasisFn& fn, const Vec2& y) {
  if (fn.kind == BasisFn::Kind::Osc) return std::cos(fn.omega.dot(y) + fn.phase);
  const double t = wrap_period(fn.T.dot(y), fn.per);
  double v = 0.0;
  for (std::size_t i = 0; i < fn.lo.size(); ++i)
    if (t >= fn.lo[i] && t < fn.hi[i]) v += fn.sign[i];
  return v;
}

std::vector<BasisFn> trig_lattice_basis(int N) {
  std::vector<BasisFn> basis;
  for (int k1 = 0; k1 <= N; ++k1) {
    for (int k2 = -N; k2 <= N; ++k2) {
      if (k1 == 0 && k2 <= 0) continue;
      const Vec2 k(k1, k2);
      for (int sinpart = 0; sinpart < 2; ++sinpart) {
        BasisFn fn;
        fn.kind = BasisFn::Kind::Osc;
        fn.tag = sinpart ? BasisFn::Tag::TrigSin : BasisFn::Tag::TrigCos;
        fn.kvec = Eigen::Vector2i(k1, k2);
        fn.omega = 2.0 * M_PI * k;
        fn.phase = sinpart ? -M_PI / 2.0 : 0.0;
        fn.Gv = unit_hessian_voigt(k);  // psi = -f / |omega|^2
        basis.push_back(fn);
      }
    }
  }
  return basis;
}

void add_axis_strips(std::vector<BasisFn>& basis, int axis, int M) {
  if (M < 2) return;
  const double width = 1.0 / M;
  for (int m = 0; m + 1 < M; ++m) {
    BasisFn fn;
    fn.kind = BasisFn::Kind::Band;
    fn.tag = BasisFn::Tag::AxisStrip;
    fn.axis = axis;
    fn.strip_index = m;
    fn.strip_count = M;
    fn.T = axis == 0 ? Vec2(1, 0) : Vec2(0, 1);
    fn.per = 1.0;
    fn.lo = {m * width, (M - 1) * width};
    fn.hi = {(m + 1) * width, 1.0};
    fn.sign = {1.0, -1.0};
    Mat2 G = fn.T * fn.T.transpose();
    fn.Gv = voigt2(G);
    basis.push_back(fn);
  }
}

void add_dir_strips(std::vector<BasisFn>& basis, int p, int q, int M, int period_multiplier) {
  const double r = std::hypot(static_cast<double>(p), static_cast<double>(q));
  const Vec2 T(p / r, q / r);
  const double P = period_multiplier / r;
  const int n = M * period_multiplier;
  if (n < 2) return;
  const double width = P / n;
  for (int m = 0; m + 1 < n; ++m) {
    BasisFn fn;
    fn.kind = BasisFn::Kind::Band;
    fn.tag = BasisFn::Tag::DirStrip;
    fn.strip_index = m;
    fn.strip_count = n;
    fn.T = T;
    fn.per = P;
    fn.lo = {m * width, (n - 1) * width};
    fn.hi = {(m + 1) * width, P};
    fn.sign = {1.0, -1.0};
    fn.Gv = voigt2(Mat2(T * T.transpose()));
    basis.push_back(fn);
  }
}

void add_profile_modes(std::vector<BasisFn>& basis, int p, int q, int N, int period_multiplier) {
  const double r = std::hypot(static_cast<double>(p), static_cast<double>(q));
  const Vec2 T(p / r, q / r);
  const double P = period_multiplier / r;
  for (int m = 1; m <= N * period_multiplier; ++m) {
    const double w = 2.0 * M_PI * m / P;
    for (int sinpart = 0; sinpart < 2; ++sinpart) {
      BasisFn fn;
      fn.kind = BasisFn::Kind::Osc;
      fn.tag = sinpart ? BasisFn::Tag::ProfileSin : BasisFn::Tag::ProfileCos;
      fn.profile_mode = m;
      fn.omega = w * T;
      fn.phase = sinpart ? -M_PI / 2.0 : 0.0;
      fn.Gv = unit_hessian_voigt(T);  // psi = -f / w^2 along T
      basis.push_back(fn);
    }
  }
}

void add_lattice_modes_along(std::vector<BasisFn>& basis, int p, int q, int n_modes, int N) {
  for (int m = 1; m <= n_modes; ++m) {
    const Eigen::Vector2i k(m * p, m * q);
    if (std::max(std::abs(k[0]), std::abs(k[1])) <= N) continue;  // already in the lattice
    // canonical sign
    Eigen::Vector2i kc = k;
    if (kc[0] < 0 || (kc[0] == 0 && kc[1] < 0)) kc = -kc;
    const Vec2 kd = kc.cast<double>();
    for (int sinpart = 0; sinpart < 2; ++sinpart) {
      BasisFn fn;
      fn.kind = BasisFn::Kind::Osc;
      fn.tag = sinpart ? BasisFn::Tag::TrigSin : BasisFn::Tag::TrigCos;
      fn.kvec = kc;
      fn.omega = 2.0 * M_PI * kd;
      fn.phase = sinpart ? -M_PI / 2.0 : 0.0;
      fn.Gv = unit_hessian_voigt(kd);
      basis.push_back(fn);
    }
  }
}

namespace {

// Material-weighted oscillation tables over the integer lattice:
//   cos_t[w] = sum_cells C_cell * int_cell cos(2 pi w . y) dy, likewise sin_t.
// Assembly entries between lattice modes reduce to two table lookups.
struct TrigTables {
  int kmax = 0;
  std::vector<Mat3> cos_t, sin_t;

  int idx(int w1, int w2) const { return (w1 + kmax) * (2 * kmax + 1) + (w2 + kmax); }
  bool covers(const Eigen::Vector2i& w) const {
    return std::abs(w[0]) <= kmax && std::abs(w[1]) <= kmax;
  }
  // C-weighted integral of cos(2 pi w . y + phase)
  Mat3 eval(const Eigen::Vector2i& w, double phase) const {
    const int i = idx(w[0], w[1]);
    return std::cos(phase) * cos_t[i] - std::sin(phase) * sin_t[i];
  }
};

TrigTables build_tables(const QuadraticForm2& q2, int kmax) {
  TrigTables t;
  t.kmax = kmax;
  const int n = 2 * kmax + 1;
  t.cos_t.assign(n * n, Mat3::Zero());
  t.sin_t.assign(n * n, Mat3::Zero());
  const int M = q2.resolution;
  const double w = 1.0 / M;
  for (int w1 = -kmax; w1 <= kmax; ++w1) {
    for (int w2 = -kmax; w2 <= kmax; ++w2) {
      const Vec2 om = 2.0 * M_PI * Vec2(w1, w2);
      Mat3 mc = Mat3::Zero(), ms = Mat3::Zero();
      for (int cj = 0; cj < M; ++cj)
        for (int ci = 0; ci < M; ++ci) {
          const Vec2 lo(ci * w, cj * w), hi((ci + 1) * w, (cj + 1) * w);
          const double ic = rect_cos(om, 0.0, lo, hi);
          const double is = rect_cos(om, -M_PI / 2.0, lo, hi);
          const Mat3& C = q2.C[cj * M + ci];
          mc += ic * C;
          ms += is * C;
        }
      t.cos_t[t.idx(w1, w2)] = mc;
      t.sin_t[t.idx(w1, w2)] = ms;
    }
  }
  return t;
}

bool lattice_kvec(const BasisFn& fn, Eigen::Vector2i& k) {
  if (fn.kind != BasisFn::Kind::Osc) return false;
  const Vec2 w = fn.omega / (2.0 * M_PI);
  const double r0 = std::round(w[0]), r1 = std::round(w[1]);
  if (std::abs(w[0] - r0) > 1e-12 || std::abs(w[1] - r1) > 1e-12) return false;
  k = Eigen::Vector2i(static_cast<int>(r0), static_cast<int>(r1));
  return true;
}

}  // namespace

CellSystem assemble_exact(const QuadraticForm2& q2, const Mat2& ii,
                          const std::vector<BasisFn>& basis) {
  const int D = static_cast<int>(basis.size());
  const int M = q2.resolution;
  const double w = 1.0 / M;
  CellSystem sys;
  sys.A = Eigen::MatrixXd::Zero(D, D);
  sys.g = Eigen::VectorXd::Zero(D);
  const Vec3 vii = voigt2(ii);
  sys.c0 = 0.0;
  for (const Mat3& C : q2.C) sys.c0 += vii.dot(C * vii) * w * w;
  if (D == 0) return sys;

  std::vector<Eigen::Vector2i> kvec(D);
  std::vector<char> lattice(D, 0);
  int kmax = 0, n_lattice = 0;
  for (int a = 0; a < D; ++a) {
    lattice[a] = lattice_kvec(basis[a], kvec[a]) ? 1 : 0;
    if (lattice[a]) {
      kmax = std::max({kmax, std::abs(kvec[a][0]), std::abs(kvec[a][1])});
      ++n_lattice;
    }
  }
  // Tables pay off only when the lattice pair count dominates the table size.
  const double table_cost = static_cast<double>(4 * kmax + 1) * (4 * kmax + 1);
  const bool use_tables = n_lattice > 0 && table_cost < 0.5 * n_lattice * n_lattice;
  if (!use_tables) std::fill(lattice.begin(), lattice.end(), 0);

  if (use_tables) {
    const TrigTables tables = build_tables(q2, 2 * kmax);
    for (int a = 0; a < D; ++a) {
      if (!lattice[a]) continue;
      sys.g[a] += basis[a].Gv.dot(tables.eval(kvec[a], basis[a].phase) * vii);
      for (int b = a; b < D; ++b) {
        if (!lattice[b]) continue;
        const Mat3 m = 0.5 * (tables.eval(kvec[a] - kvec[b], basis[a].phase - basis[b].phase) +
                              tables.eval(kvec[a] + kvec[b], basis[a].phase + basis[b].phase));
        sys.A(a, b) += basis[a].Gv.dot(m * basis[b].Gv);
      }
    }
  }

  // everything touching bands or non-lattice oscillations: per-subcell geometry
  bool any_general = false;
  for (int a = 0; a < D; ++a)
    if (!lattice[a]) any_general = true;
  if (any_general) {
    for (int cj = 0; cj < M; ++cj) {
      for (int ci = 0; ci < M; ++ci) {
        const int cell = cj * M + ci;
        const Vec2 lo(ci * w, cj * w), hi((ci + 1) * w, (cj + 1) * w);
        const Polygon cell_poly = {lo, Vec2(hi[0], lo[1]), hi, Vec2(lo[0], hi[1])};
        const Mat3& C = q2.C[cell];
        for (int a = 0; a < D; ++a) {
          const BasisFn& fa = basis[a];
          if (lattice[a]) continue;
          const Vec3 Ca = C * fa.Gv;
          // linear term
          double Ia = 0.0;
          if (fa.kind == BasisFn::Kind::Osc)
            Ia = rect_cos(fa.omega, fa.phase, lo, hi);
          else {
            std::vector<Polygon> pieces;
            for (std::size_t i = 0; i < fa.lo.size(); ++i) {
              pieces.clear();
              band_pieces(cell_poly, fa.T, fa.per, fa.lo[i], fa.hi[i], pieces);
              for (const Polygon& p : pieces) Ia += fa.sign[i] * poly_area(p);
            }
          }
          sys.g[a] += vii.dot(Ca) * Ia;

          for (int b = 0; b < D; ++b) {
            if (!lattice[b] && b < a) continue;  // general-general pairs once
            const BasisFn& fb = basis[b];
            const double bc = fb.Gv.dot(Ca);
            if (bc == 0.0) continue;
            double Iab;
            if (fa.kind == BasisFn::Kind::Osc && fb.kind == BasisFn::Kind::Osc)
              Iab = osc_osc_integral(lo, hi, fa, fb);
            else if (fa.kind == BasisFn::Kind::Band && fb.kind == BasisFn::Kind::Band)
              Iab = band_band_integral(cell_poly, fa, fb);
            else if (fa.kind == BasisFn::Kind::Band)
              Iab = band_osc_integral(cell_poly, fa, fb.omega, fb.phase);
            else
              Iab = band_osc_integral(cell_poly, fb, fa.omega, fa.phase);
            if (b >= a)
              sys.A(a, b) += bc * Iab;
            else
              sys.A(b, a) += bc * Iab;
          }
        }
      }
    }
  }

  for (int a = 0; a < D; ++a)
    for (int b = a + 1; b < D; ++b) sys.A(b, a) = sys.A(a, b);
  return sys;
}

CellSystem assemble_quadrature(const QuadraticForm2& q2, const Mat2& ii,
                               const std::vector<BasisFn>& basis, int order) {
  const int D = static_cast<int>(basis.size());
  const int M = q2.resolution;
  const double w = 1.0 / M;
  std::vector<double> nodes, wts;
  gauss_rule(order, nodes, wts);

  CellSystem sys;
  sys.A = Eigen::MatrixXd::Zero(D, D);
  sys.g = Eigen::VectorXd::Zero(D);
  const Vec3 vii = voigt2(ii);
  sys.c0 = 0.0;

  Eigen::MatrixXd V(3, D);
  for (int a = 0; a < D; ++a) V.col(a) = basis[a].Gv;

  Eigen::VectorXd f(D);
  for (int cj = 0; cj < M; ++cj) {
    for (int ci = 0; ci < M; ++ci) {
      const int cell = cj * M + ci;
      const Mat3& C = q2.C[cell];
      sys.c0 += vii.dot(C * vii) * w * w;
      Eigen::MatrixXd S = Eigen::MatrixXd::Zero(D, D);
      Eigen::VectorXd m = Eigen::VectorXd::Zero(D);
      for (int qi = 0; qi < order; ++qi) {
        const double y1 = (ci + 0.5 * (1 + nodes[qi])) * w;
        for (int qj = 0; qj < order; ++qj) {
          const double y2 = (cj + 0.5 * (1 + nodes[qj])) * w;
          const double wt = wts[qi] * wts[qj] * 0.25 * w * w;
          const Vec2 y(y1, y2);
          for (int a = 0; a < D; ++a) f[a] = basis_factor(basis[a], y);
          S.selfadjointView<Eigen::Lower>().rankUpdate(f, wt);
          m += wt * f;
        }
      }
      S.triangularView<Eigen::StrictlyUpper>() = S.transpose();
      const Eigen::MatrixXd B = V.transpose() * C * V;  // D x D contraction weights
      sys.A += B.cwiseProduct(S);
      sys.g += (V.transpose() * (C * vii)).cwiseProduct(m);
    }
  }
  return sys;
}

SolveResult solve_cell_system(const CellSystem& sys, double residual_tol) {
  SolveResult r;
  const int D = static_cast<int>(sys.A.rows());
  if (D == 0) {
    r.x = Eigen::VectorXd();
    r.energy = sys.c0;
    r.residual = 0.0;
    return r;
  }
  Eigen::LDLT<Eigen::MatrixXd> ldlt(sys.A);
  r.x = ldlt.solve(-sys.g);
  const double scale = std::max({sys.g.lpNorm<Eigen::Infinity>(), std::abs(sys.c0), 1e-30});
  r.residual = (sys.A * r.x + sys.g).lpNorm<Eigen::Infinity>() / scale;
  if (!(r.residual <= residual_tol)) {
    // semidefinite or ill-conditioned system; fall back to a rank-revealing solve
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(sys.A);
    r.x = cod.solve(-sys.g);
    r.residual = (sys.A * r.x + sys.g).lpNorm<Eigen::Infinity>() / scale;
  }
  if (!(r.residual <= residual_tol))
    throw SolverFailure("cell solve: stationarity residual " + std::to_string(r.residual),
                        r.residual);
  r.energy = sys.c0 + sys.g.dot(r.x);
  return r;
}

}  // namespace plates
