#include "plates/fields.hpp"

#include <cmath>
#include <stdexcept>

namespace plates {

namespace {
double wrap_period(double t, double per) {
  double f = t / per;
  return (f - std::floor(f)) * per;
}
}  // namespace

bool Profile1D::zero() const {
  return cos_c.size() == 0 && sin_c.size() == 0 && pc_g.size() == 0;
}

void Profile1D::finalize() {
  const int n = static_cast<int>(pc_g.size());
  finalized_ = true;
  prefix_g_.assign(n + 1, 0.0);
  prefix_G_.assign(n + 1, 0.0);
  if (n == 0) return;
  const double dt = period / n;
  for (int m = 0; m < n; ++m) prefix_g_[m + 1] = prefix_g_[m] + dt * pc_g[m];
  for (int m = 0; m < n; ++m)
    prefix_G_[m + 1] = prefix_G_[m] + dt * prefix_g_[m] + 0.5 * dt * dt * pc_g[m];
  mean_G_ = prefix_G_[n] / period;
  // mean of psi_unc(t) = H(t) - mean_G * t over the period, interval-wise.
  double acc = 0.0;
  for (int m = 0; m < n; ++m) {
    const double t0 = m * dt;
    // int over [0,dt] of H_m + u G_m + u^2 g_m / 2 - mean_G (t0 + u)
    acc += dt * prefix_G_[m] + 0.5 * dt * dt * prefix_g_[m] + pc_g[m] * dt * dt * dt / 6.0 -
           mean_G_ * (t0 * dt + 0.5 * dt * dt);
  }
  mean_psi_ = acc / period;
}

double Profile1D::psi(double t) const {
  double v = 0.0;
  const double w0 = 2.0 * M_PI / period;
  for (int m = 0; m < cos_c.size(); ++m) {
    const double w = w0 * (m + 1);
    v += cos_c[m] * std::cos(w * t) + sin_c[m] * std::sin(w * t);
  }
  const int n = static_cast<int>(pc_g.size());
  if (n > 0) {
    if (!finalized_) throw std::logic_error("Profile1D: finalize() not called");
    const double s = wrap_period(t, period);
    const double dt = period / n;
    int m = std::min(n - 1, static_cast<int>(s / dt));
    const double u = s - m * dt;
    const double H = prefix_G_[m] + u * prefix_g_[m] + 0.5 * u * u * pc_g[m];
    v += H - mean_G_ * s - mean_psi_;
  }
  return v;
}

double Profile1D::dpsi(double t) const {
  double v = 0.0;
  const double w0 = 2.0 * M_PI / period;
  for (int m = 0; m < cos_c.size(); ++m) {
    const double w = w0 * (m + 1);
    v += w * (-cos_c[m] * std::sin(w * t) + sin_c[m] * std::cos(w * t));
  }
  const int n = static_cast<int>(pc_g.size());
  if (n > 0) {
    if (!finalized_) throw std::logic_error("Profile1D: finalize() not called");
    const double s = wrap_period(t, period);
    const double dt = period / n;
    int m = std::min(n - 1, static_cast<int>(s / dt));
    const double u = s - m * dt;
    v += prefix_g_[m] + u * pc_g[m] - mean_G_;
  }
  return v;
}

double Profile1D::d2psi(double t) const {
  double v = 0.0;
  const double w0 = 2.0 * M_PI / period;
  for (int m = 0; m < cos_c.size(); ++m) {
    const double w = w0 * (m + 1);
    v += -w * w * (cos_c[m] * std::cos(w * t) + sin_c[m] * std::sin(w * t));
  }
  const int n = static_cast<int>(pc_g.size());
  if (n > 0) {
    const double s = wrap_period(t, period);
    const double dt = period / n;
    int m = std::min(n - 1, static_cast<int>(s / dt));
    v += pc_g[m];
  }
  return v;
}

double Profile1D::coeff_norm() const {
  double s = cos_c.squaredNorm() + sin_c.squaredNorm();
  s += pc_g.squaredNorm();
  return std::sqrt(s);
}

bool PeriodicScalarField2::zero() const {
  if (c_cos.size() > 0 && c_cos.cwiseAbs().maxCoeff() > 0) return false;
  if (c_sin.size() > 0 && c_sin.cwiseAbs().maxCoeff() > 0) return false;
  for (const auto& s : strips)
    if (!s.profile.zero()) return false;
  return true;
}

double PeriodicScalarField2::eval(const Vec2& y) const {
  double v = 0.0;
  for (std::size_t i = 0; i < kvecs.size(); ++i) {
    const double a = 2.0 * M_PI * (kvecs[i][0] * y[0] + kvecs[i][1] * y[1]);
    v += c_cos[i] * std::cos(a) + c_sin[i] * std::sin(a);
  }
  for (const auto& s : strips) v += s.profile.psi(s.T.dot(y));
  return v;
}

Vec2 PeriodicScalarField2::grad(const Vec2& y) const {
  Vec2 g = Vec2::Zero();
  for (std::size_t i = 0; i < kvecs.size(); ++i) {
    const Vec2 k = kvecs[i].cast<double>();
    const double a = 2.0 * M_PI * k.dot(y);
    g += 2.0 * M_PI * k * (-c_cos[i] * std::sin(a) + c_sin[i] * std::cos(a));
  }
  for (const auto& s : strips) g += s.T * s.profile.dpsi(s.T.dot(y));
  return g;
}

Mat2 PeriodicScalarField2::hess(const Vec2& y) const {
  Mat2 h = Mat2::Zero();
  for (std::size_t i = 0; i < kvecs.size(); ++i) {
    const Vec2 k = kvecs[i].cast<double>();
    const double a = 2.0 * M_PI * k.dot(y);
    h += -4.0 * M_PI * M_PI * (k * k.transpose()) *
         (c_cos[i] * std::cos(a) + c_sin[i] * std::sin(a));
  }
  for (const auto& s : strips) h += (s.T * s.T.transpose()) * s.profile.d2psi(s.T.dot(y));
  return h;
}

double PeriodicScalarField2::coeff_norm() const {
  double s = 0.0;
  if (c_cos.size() > 0) s += c_cos.squaredNorm();
  if (c_sin.size() > 0) s += c_sin.squaredNorm();
  for (const auto& st : strips) {
    const double n = st.profile.coeff_norm();
    s += n * n;
  }
  return std::sqrt(s);
}

void PeriodicScalarField2::axpy(double a, const PeriodicScalarField2& other) {
  if (other.zero()) return;
  if (kvecs.size() != other.kvecs.size() || !strips.empty() || !other.strips.empty())
    throw std::logic_error("PeriodicScalarField2::axpy: incompatible layouts");
  c_cos += a * other.c_cos;
  c_sin += a * other.c_sin;
}

PeriodicScalarField2 profile_as_field(const Profile1D& prof, int p, int q, double coeff) {
  PeriodicScalarField2 f;
  f.modes = prof.modes();
  const int n = prof.modes();
  f.kvecs.resize(n);
  f.c_cos.resize(n);
  f.c_sin.resize(n);
  for (int m = 1; m <= n; ++m) {
    // cos(2 pi m t / P) with t = T.y and P = 1/r equals cos(2 pi m (p,q).y)
    f.kvecs[m - 1] = Eigen::Vector2i(m * p, m * q);
    f.c_cos[m - 1] = coeff * prof.cos_c[m - 1];
    f.c_sin[m - 1] = coeff * prof.sin_c[m - 1];
  }
  if (prof.pc_g.size() > 0) {
    StripComponent sc;
    const double r = std::hypot(static_cast<double>(p), static_cast<double>(q));
    sc.T = Vec2(p / r, q / r);
    sc.profile.period = prof.period;
    sc.profile.pc_g = coeff * prof.pc_g;
    sc.profile.finalize();
    f.strips.push_back(std::move(sc));
  }
  return f;
}

}  // namespace plates
