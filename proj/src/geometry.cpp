#include "plates/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace plates {

namespace {

int half_index(const LeadingCurve& c, double t) {
  const double step = c.dt / 2.0;
  int i = static_cast<int>(std::lround(t / step));
  const int n = static_cast<int>(c.T.size());
  return std::clamp(i, 0, n - 1);
}

Mat3 darboux_generator(double kg, double k) {
  Mat3 B;
  B << 0, -kg, -k, kg, 0, 0, k, 0, 0;
  return B;
}

Mat3 polar_project(const Mat3& F) {
  Eigen::JacobiSVD<Mat3> svd(F, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat3 R = svd.matrixU() * svd.matrixV().transpose();
  if (R.determinant() < 0) {
    Mat3 U = svd.matrixU();
    U.col(2) *= -1.0;
    R = U * svd.matrixV().transpose();
  }
  return R;
}

}  // namespace

double LeadingCurve::kappa_gamma_at(double t) const {
  if (kappa_gamma_fn) return kappa_gamma_fn(t);
  return kappa_gamma[half_index(*this, t)];
}

double LeadingCurve::kappa_at(double t) const {
  if (kappa_fn) return kappa_fn(t);
  return kappa[half_index(*this, t)];
}

Vec2 LeadingCurve::T_at(double t) const {
  if (T_fn) return T_fn(t);
  return T[half_index(*this, t)];
}

Vec2 LeadingCurve::gamma_at(double t) const {
  const int i = std::clamp(static_cast<int>(t / dt), 0, nodes() - 1);
  const double t0 = i * dt;
  // Simpson on the partial interval
  const double h = t - t0;
  if (h <= 0) return gamma[i];
  return gamma[i] + (h / 6.0) * (T_at(t0) + 4.0 * T_at(t0 + 0.5 * h) + T_at(t));
}

void LeadingCurve::resample() {
  const int n = std::max(1, static_cast<int>(std::lround(length / dt)));
  dt = length / n;
  T.resize(2 * n + 1);
  kappa_gamma.resize(2 * n + 1);
  kappa.resize(2 * n + 1);
  for (int i = 0; i <= 2 * n; ++i) {
    const double t = i * dt / 2.0;
    T[i] = T_fn ? T_fn(t) : Vec2(1, 0);
    kappa_gamma[i] = kappa_gamma_fn ? kappa_gamma_fn(t) : 0.0;
    kappa[i] = kappa_fn ? kappa_fn(t) : 0.0;
  }
  gamma.resize(n + 1);
  gamma[0] = gamma0;
  for (int i = 0; i < n; ++i)
    gamma[i + 1] = gamma[i] + (dt / 6.0) * (T[2 * i] + 4.0 * T[2 * i + 1] + T[2 * i + 2]);
}

LeadingCurve straight_curve(const Vec2& T, double length, double kappa, double dt) {
  LeadingCurve c;
  c.length = length;
  c.dt = dt;
  const Vec2 Tu = T.normalized();
  c.T_fn = [Tu](double) { return Tu; };
  c.kappa_gamma_fn = [](double) { return 0.0; };
  c.kappa_fn = [kappa](double) { return kappa; };
  c.resample();
  return c;
}

LeadingCurve arc_curve(double kappa_gamma, double kappa, double length, double dt) {
  LeadingCurve c;
  c.length = length;
  c.dt = dt;
  c.T_fn = [kappa_gamma](double t) {
    return Vec2(std::cos(kappa_gamma * t), std::sin(kappa_gamma * t));
  };
  c.kappa_gamma_fn = [kappa_gamma](double) { return kappa_gamma; };
  c.kappa_fn = [kappa](double) { return kappa; };
  c.resample();
  return c;
}

DarbouxFrames integrate_darboux(const LeadingCurve& curve, const Mat3& initial_frame,
                                double drift_limit) {
  const int n = curve.nodes() - 1;
  DarbouxFrames out;
  out.R.resize(n + 1);
  out.R[0] = initial_frame;
  const double h = curve.dt;
  Mat3 F = initial_frame;
  for (int i = 0; i < n; ++i) {
    const double t = i * h;
    const Mat3 B0 = darboux_generator(curve.kappa_gamma_at(t), curve.kappa_at(t));
    const Mat3 Bh = darboux_generator(curve.kappa_gamma_at(t + 0.5 * h),
                                      curve.kappa_at(t + 0.5 * h));
    const Mat3 B1 = darboux_generator(curve.kappa_gamma_at(t + h), curve.kappa_at(t + h));
    const Mat3 k1 = F * B0;
    const Mat3 k2 = (F + 0.5 * h * k1) * Bh;
    const Mat3 k3 = (F + 0.5 * h * k2) * Bh;
    const Mat3 k4 = (F + h * k3) * B1;
    F += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    const double drift = (F.transpose() * F - Mat3::Identity()).lpNorm<Eigen::Infinity>();
    out.max_drift = std::max(out.max_drift, drift);
    if (drift > drift_limit)
      throw StepTooLarge("integrate_darboux: pre-projection drift " + std::to_string(drift),
                         drift);
    F = polar_project(F);
    out.max_gram_err = std::max(
        out.max_gram_err, (F.transpose() * F - Mat3::Identity()).lpNorm<Eigen::Infinity>());
    out.R[i + 1] = F;
  }
  return out;
}

Mat3 Piece::frame_at(double t) const {
  if (kind == Kind::Body) return Mat3::Identity();
  if (analytic) {
    const double kg = curve.kappa_gamma_at(0.0), k = curve.kappa_at(0.0);
    const Vec3 omega(0.0, -k, kg);
    const double th = omega.norm() * t;
    Mat3 E = Mat3::Identity();
    if (omega.norm() > 0) E = Eigen::AngleAxisd(th, omega.normalized()).toRotationMatrix();
    // initial frame: tau, nu in-plane from T(0), N(0); n = e3
    Mat3 F0;
    const Vec2 T0 = curve.T_at(0.0), N0 = rotate90(T0);
    F0.col(0) = Vec3(T0[0], T0[1], 0.0);
    F0.col(1) = Vec3(N0[0], N0[1], 0.0);
    F0.col(2) = Vec3(0.0, 0.0, 1.0);
    return F0 * E;
  }
  const int i = std::clamp(static_cast<int>(std::lround(t / curve.dt)), 0,
                           static_cast<int>(frames.R.size()) - 1);
  return frames.R[i];
}

namespace {

// integral of the frame's tau column for constant-coefficient arms:
// gamma3(t) = F0 * V(t) * e1 with V = int_0^t exp(uB) du
Vec3 analytic_gamma3(const Piece& piece, double t) {
  const double kg = piece.curve.kappa_gamma_at(0.0), k = piece.curve.kappa_at(0.0);
  const Vec3 omega(0.0, -k, kg);
  const double w = omega.norm();
  const Mat3 B = darboux_generator(kg, k);
  Mat3 V = t * Mat3::Identity();
  if (w > 0) {
    const double th = w * t;
    V += ((1.0 - std::cos(th)) / (w * w)) * B + ((t - std::sin(th) / w) / (w * w)) * (B * B);
  }
  Mat3 F0;
  const Vec2 T0 = piece.curve.T_at(0.0), N0 = rotate90(T0);
  F0.col(0) = Vec3(T0[0], T0[1], 0.0);
  F0.col(1) = Vec3(N0[0], N0[1], 0.0);
  F0.col(2) = Vec3(0.0, 0.0, 1.0);
  return F0 * (V * Vec3::UnitX());
}

}  // namespace

SurfacePoint Piece::eval(double t, double s) const {
  SurfacePoint pt;
  if (kind == Kind::Body) {
    pt.u = R_glue * Vec3(t, s, 0.0) + b_glue;
    pt.grad.col(0) = R_glue.col(0);
    pt.grad.col(1) = R_glue.col(1);
    pt.n = R_glue.col(2);
    pt.c = 0.0;
    pt.T = Vec2(1, 0);
    pt.jac = 1.0;
    return pt;
  }
  const double kg = curve.kappa_gamma_at(t);
  pt.jac = 1.0 - s * kg;
  if (pt.jac <= 0.0)
    throw JacobianSignError("surface eval: 1 - s kappa_gamma nonpositive at t=" +
                            std::to_string(t));
  const Mat3 F = frame_at(t);
  const Vec3 tau = F.col(0), nu = F.col(1), n3 = F.col(2);
  Vec3 g3;
  if (analytic)
    g3 = analytic_gamma3(*this, t);
  else {
    const int i = std::clamp(static_cast<int>(std::lround(t / curve.dt)), 0,
                             static_cast<int>(frames.gamma3.size()) - 1);
    g3 = frames.gamma3[i];
  }
  const Vec2 T = curve.T_at(t);
  pt.u = R_glue * (g3 + s * nu) + b_glue;
  pt.grad.col(0) = R_glue * (T[0] * tau - T[1] * nu);
  pt.grad.col(1) = R_glue * (T[1] * tau + T[0] * nu);
  pt.n = R_glue * (tau.cross(nu));
  pt.c = curve.kappa_at(t) / pt.jac;
  pt.T = T;
  return pt;
}

Piece make_arm(LeadingCurve curve, double s_min, double s_max, std::optional<Direction> dir) {
  Piece p;
  p.kind = Piece::Kind::Arm;
  p.curve = std::move(curve);
  p.s_min = s_min;
  p.s_max = s_max;
  p.direction = dir;
  // constant-coefficient arms get closed-form frames
  double kg0 = p.curve.kappa_gamma_at(0.0), k0 = p.curve.kappa_at(0.0);
  bool constant = true;
  for (int i = 0; i < static_cast<int>(p.curve.kappa_gamma.size()); ++i) {
    if (std::abs(p.curve.kappa_gamma[i] - kg0) > 1e-14 ||
        std::abs(p.curve.kappa[i] - k0) > 1e-14) {
      constant = false;
      break;
    }
  }
  p.analytic = constant;
  if (!p.analytic) {
    Mat3 F0;
    const Vec2 T0 = p.curve.T_at(0.0), N0 = rotate90(T0);
    F0.col(0) = Vec3(T0[0], T0[1], 0.0);
    F0.col(1) = Vec3(N0[0], N0[1], 0.0);
    F0.col(2) = Vec3(0.0, 0.0, 1.0);
    p.frames = integrate_darboux(p.curve, F0);
    // accumulate gamma3 by Simpson over the frame tangents (midpoint frames
    // from a half-step integration would double the cost; trapezoid with the
    // integrator's accuracy is adequate at these step sizes)
    p.frames.gamma3.resize(p.frames.R.size());
    p.frames.gamma3[0] = Vec3::Zero();
    for (std::size_t i = 0; i + 1 < p.frames.R.size(); ++i)
      p.frames.gamma3[i + 1] = p.frames.gamma3[i] +
                               0.5 * p.curve.dt * (p.frames.R[i].col(0) + p.frames.R[i + 1].col(0));
  }
  // Jacobian positivity across the s-range (affine in s: endpoints suffice)
  for (int i = 0; i < static_cast<int>(p.curve.kappa_gamma.size()); ++i) {
    const double kg = p.curve.kappa_gamma[i];
    if (1.0 - s_min * kg <= 0.0 || 1.0 - s_max * kg <= 0.0)
      throw JacobianSignError("make_arm: 1 - s kappa_gamma changes sign on the arm");
  }
  return p;
}

Piece make_body(double a, double b) {
  Piece p;
  p.kind = Piece::Kind::Body;
  p.body_a = a;
  p.body_b = b;
  p.s_min = 0.0;
  p.s_max = b;
  return p;
}

void DevelopableSurface::append(Piece piece) {
  if (!pieces.empty()) {
    const Piece& prev = pieces.back();
    const double te = prev.t_max();
    // match frames and positions along the shared edge
    Mat3 Fe, Fs;
    Vec3 ue;
    if (prev.kind == Piece::Kind::Arm) {
      Fe = prev.R_glue * prev.frame_at(te);
      ue = prev.eval(te, 0.0).u;
    } else {
      Fe = prev.R_glue;
      ue = prev.eval(te, 0.0).u;
    }
    if (piece.kind == Piece::Kind::Arm)
      Fs = piece.frame_at(0.0);
    else
      Fs = Mat3::Identity();
    piece.R_glue = Fe * Fs.transpose();
    Vec3 us_local;
    if (piece.kind == Piece::Kind::Arm)
      us_local = piece.analytic ? analytic_gamma3(piece, 0.0) : piece.frames.gamma3.front();
    else
      us_local = Vec3::Zero();
    piece.b_glue = ue - piece.R_glue * us_local;
  }
  pieces.push_back(std::move(piece));
}

double DevelopableSurface::isometry_defect(int samples) const {
  double worst = 0.0;
  for (const Piece& p : pieces) {
    const int nt = std::max(2, static_cast<int>(std::sqrt(static_cast<double>(samples))));
    const int ns = nt;
    for (int i = 0; i < nt; ++i) {
      double t;
      if (p.kind == Piece::Kind::Arm && !p.analytic) {
        const int node = (i * (p.curve.nodes() - 1)) / std::max(1, nt - 1);
        t = p.curve.t_at(node);
      } else {
        t = p.t_max() * i / std::max(1, nt - 1);
      }
      for (int j = 0; j < ns; ++j) {
        const double s = p.s_min + (p.s_max - p.s_min) * j / std::max(1, ns - 1);
        const SurfacePoint pt = p.eval(t, s);
        const Mat2 gram = pt.grad.transpose() * pt.grad;
        worst = std::max(worst, (gram - Mat2::Identity()).lpNorm<Eigen::Infinity>());
      }
    }
  }
  return worst;
}

double DevelopableSurface::interface_mismatch(int samples) const {
  double worst = 0.0;
  for (std::size_t k = 0; k + 1 < pieces.size(); ++k) {
    const Piece& a = pieces[k];
    const Piece& b = pieces[k + 1];
    const double slo = std::max(a.s_min, b.s_min), shi = std::min(a.s_max, b.s_max);
    for (int j = 0; j < samples; ++j) {
      const double s = slo + (shi - slo) * j / std::max(1, samples - 1);
      worst = std::max(worst, (a.eval(a.t_max(), s).u - b.eval(0.0, s).u).norm());
    }
  }
  return worst;
}

LipschitzReport lipschitz_check(const LeadingCurve& curve, const Rect& omega, int samples) {
  LipschitzReport rep;
  const int n = curve.nodes();
  auto dist_boundary = [&](const Vec2& p) {
    return std::min(std::min(p[0] - omega.x0, omega.x1 - p[0]),
                    std::min(p[1] - omega.y0, omega.y1 - p[1]));
  };
  for (int i = 0; i < samples; ++i) {
    const int a = (i * 7919) % n;
    const int b = (a + 1 + (i * 104729) % (n - 1)) % n;
    if (a == b) continue;
    const double ta = curve.t_at(a), tb = curve.t_at(b);
    const Vec2 Na = rotate90(curve.T_at(ta)), Nb = rotate90(curve.T_at(tb));
    const Vec2 ga = curve.gamma_at(ta), gb = curve.gamma_at(tb);
    const double dg = (ga - gb).norm();
    if (dg < 1e-12) continue;
    const double ratio = (Na - Nb).norm() / dg;
    rep.worst_ratio = std::max(rep.worst_ratio, ratio);
    const double d = std::min(dist_boundary(ga), dist_boundary(gb));
    if (d > 0) rep.worst_margin = std::max(rep.worst_margin, ratio - 1.0 / d);
  }
  for (int i = 0; i < 2 * (n - 1); ++i)
    rep.max_curvature =
        std::max(rep.max_curvature, std::abs(curve.kappa_gamma_at(i * curve.dt / 2.0)));
  return rep;
}

}  // namespace plates
