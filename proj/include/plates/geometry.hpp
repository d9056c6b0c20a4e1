#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "plates/cell_moderate.hpp"
#include "plates/cell_supercritical.hpp"
#include "plates/errors.hpp"
#include "plates/material.hpp"
#include "plates/types.hpp"

namespace plates {

// Planar leading curve, arclength-parametrised on a uniform grid including
// half-steps (needed by the one-step integrator). Optional analytic samplers
// override grid interpolation.
struct LeadingCurve {
  double length = 1.0;
  double dt = 1e-3;
  Vec2 gamma0 = Vec2::Zero();

  // samples at t_i = i * dt/2, i = 0..2n (grid nodes and midpoints)
  std::vector<Vec2> T;
  std::vector<double> kappa_gamma;
  std::vector<double> kappa;
  std::vector<Vec2> gamma;  // at full nodes t = i * dt, Simpson-accumulated

  std::function<double(double)> kappa_gamma_fn;  // optional analytic samplers
  std::function<double(double)> kappa_fn;
  std::function<Vec2(double)> T_fn;

  int nodes() const { return static_cast<int>(gamma.size()); }
  double t_at(int i) const { return i * dt; }

  double kappa_gamma_at(double t) const;
  double kappa_at(double t) const;
  Vec2 T_at(double t) const;
  Vec2 gamma_at(double t) const;  // piecewise-Simpson interpolation of int T

  // fills T/kappa_gamma/kappa arrays from the samplers and integrates gamma
  void resample();
};

// Leading curves with constant curvatures (closed-form frames downstream).
LeadingCurve straight_curve(const Vec2& T, double length, double kappa, double dt = 1e-3);
LeadingCurve arc_curve(double kappa_gamma, double kappa, double length, double dt = 1e-3);

// Orthonormal Darboux triads (tau | nu | n) as matrix columns per grid node.
struct DarbouxFrames {
  std::vector<Mat3> R;        // at t_i = i * dt
  std::vector<Vec3> gamma3;   // accumulated space curve int tau (filled by arms)
  double max_drift = 0.0;     // pre-projection orthonormality defect per step
  double max_gram_err = 0.0;  // post-projection defect
};

// Classical 4th-order one-step integration of the Darboux system
//   tau' = kg nu + k n,  nu' = -kg tau,  n' = -k tau
// with per-step polar re-orthonormalisation. Throws StepTooLarge when the
// pre-projection drift of a step exceeds drift_limit.
DarbouxFrames integrate_darboux(const LeadingCurve& curve, const Mat3& initial_frame,
                                double drift_limit = 1e-6);

struct Piece;

// Ruled surface u(t,s) = gamma(t) + s nu(t) over an arm plus affine bodies,
// glued by rigid motions. Curvature data is stored factored (coefficient and
// direction), so det II = 0 holds structurally.
struct DevelopableSurface {
  std::vector<Piece> pieces;

  // appends a piece glued so that u and the tangent frame match the previous
  // piece's end curve point (identity motion for the first piece)
  void append(Piece piece);

  double isometry_defect(int samples) const;
  // worst |u_prev(end) - u_next(start)| over piece interfaces
  double interface_mismatch(int samples = 50) const;
};

struct SurfacePoint {
  Vec3 u;
  Mat32 grad;      // columns d1 u, d2 u
  Vec3 n;
  double c;        // II = -c * T x T
  Vec2 T;
  double jac;      // 1 - s * kappa_gamma
};

struct Piece {
  enum class Kind { Arm, Body } kind = Kind::Arm;

  // Arm data
  LeadingCurve curve;
  std::optional<Direction> direction;  // supercritical tag (constant-T arms)
  double s_min = 0.0, s_max = 1.0;
  bool analytic = false;  // constant curvatures: closed-form frames
  DarbouxFrames frames;   // integrated path (non-analytic)
  // Body data: rectangle [0,a]x[0,b] mapped rigidly
  double body_a = 1.0, body_b = 1.0;

  Mat3 R_glue = Mat3::Identity();
  Vec3 b_glue = Vec3::Zero();

  Mat3 frame_at(double t) const;  // analytic or nearest-node frames
  SurfacePoint eval(double t, double s) const;
  double t_min() const { return 0.0; }
  double t_max() const { return kind == Kind::Arm ? curve.length : body_a; }
};

Piece make_arm(LeadingCurve curve, double s_min, double s_max,
               std::optional<Direction> direction = std::nullopt);
Piece make_body(double a, double b);

// Lipschitz report for the normal field of a leading curve inside omega.
struct LipschitzReport {
  double worst_ratio = 0.0;        // max |N(t)-N(t')| / |Gamma(t)-Gamma(t')|
  double worst_margin = -1e300;    // max of ratio - 1/dist bound (<= tol expected)
  double max_curvature = 0.0;      // max |kappa_gamma| observed
};

LipschitzReport lipschitz_check(const LeadingCurve& curve, const Rect& omega, int samples = 400);

// --- fat Cantor leading curve ---

struct DyadicInterval {
  std::int64_t lo_num = 0, hi_num = 0;  // endpoints lo_num/2^log2den
  int log2den = 0;
  int level = 0;
  double lo() const { return static_cast<double>(lo_num) / (1ll << log2den); }
  double hi() const { return static_cast<double>(hi_num) / (1ll << log2den); }
};

struct CantorCurve {
  LeadingCurve curve;
  std::vector<DyadicInterval> removed;  // the sets B_1..B_n
  double beta = 0.0;
  int levels = 0;

  // exact removed measure as a dyadic rational (num / 2^log2den)
  void removed_measure(std::int64_t& num, int& log2den) const;
};

// Recursive construction with beta_k = beta / 2^(2k) and the cubed-sine bump.
// Throws LevelTooDeep for levels > 12.
CantorCurve cantor_curve(double beta, int levels, double dt = 0.0);

// --- energies ---

enum class Regime { Moderate, Supercritical };

struct SurfaceEnergyOptions {
  int modes = 16;
  int gauss_t = 6;  // per grid interval of the arm parametrisation
  int gauss_s = 6;
};

// E = (1/12) int_omega Q(II) dx' in the requested regime; supercritical arms
// must carry a Direction tag and reuse one cell solve per arm.
double surface_energy(const DevelopableSurface& surface, const QuadraticForm2& q2, Regime regime,
                      const SurfaceEnergyOptions& opts = {});

}  // namespace plates
