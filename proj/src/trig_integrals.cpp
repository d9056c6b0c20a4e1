#include "plates/trig_integrals.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace plates {

double int_cos(double w, double p, double a, double b) {
  const double L = b - a, m = 0.5 * (a + b);
  if (w == 0.0) return L * std::cos(p);
  // sin(wb+p) - sin(wa+p) = 2 cos(wm+p) sin(wL/2), cancellation-free
  return 2.0 * std::cos(w * m + p) * std::sin(0.5 * w * L) / w;
}

double int_t_cos(double w, double p, double a, double b) {
  const double L = b - a, m = 0.5 * (a + b), G = 0.5 * L;
  const double base = m * int_cos(w, p, a, b);
  if (w == 0.0) return base;
  const double c = w * m + p, x = w * G;
  double S;  // (sin x - x cos x) / x^3
  if (std::abs(x) < 1e-4)
    S = (1.0 / 3.0) - x * x / 30.0;
  else
    S = (std::sin(x) - x * std::cos(x)) / (x * x * x);
  return base - std::sin(c) * 2.0 * G * G * G * w * S;
}

double rect_cos(const Vec2& w, double p, const Vec2& lo, const Vec2& hi) {
  // inner y1 integral of cos(w1 y1 + c) is A cos(c) - B sin(c) with
  // A = int cos(w1 y1), B = int sin(w1 y1); fold into one phase-shifted cosine
  // and integrate the y2 axis in closed form.
  const double A = int_cos(w[0], 0.0, lo[0], hi[0]);
  const double B = int_cos(w[0], -M_PI / 2.0, lo[0], hi[0]);
  const double R = std::hypot(A, B);
  if (R == 0.0) return 0.0;
  const double phi = std::atan2(B, A);
  return R * int_cos(w[1], p + phi, lo[1], hi[1]);
}

void gauss_rule(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw std::invalid_argument("gauss_rule: n must be >= 1");
  nodes.resize(n);
  weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double p1 = 0.0, dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = x;
    weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
}

}  // namespace plates
