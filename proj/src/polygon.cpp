#include "plates/polygon.hpp"

#include <cmath>

namespace plates {

double poly_area(const Polygon& p) {
  const std::size_t n = p.size();
  if (n < 3) return 0.0;
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = p[i];
    const Vec2& b = p[(i + 1) % n];
    s += a[0] * b[1] - a[1] * b[0];
  }
  return 0.5 * s;
}

Polygon clip_by_values(const Polygon& p, const std::vector<double>& values) {
  Polygon out;
  const std::size_t n = p.size();
  out.reserve(n + 2);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = p[i];
    const Vec2& b = p[(i + 1) % n];
    const double va = values[i];
    const double vb = values[(i + 1) % n];
    if (va <= 0.0) out.push_back(a);
    if ((va < 0.0 && vb > 0.0) || (va > 0.0 && vb < 0.0)) {
      const double t = va / (va - vb);
      out.push_back(a + t * (b - a));
    }
  }
  return out;
}

Polygon clip_halfplane(const Polygon& p, const Vec2& n, double c) {
  std::vector<double> vals(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) vals[i] = n.dot(p[i]) - c;
  return clip_by_values(p, vals);
}

Vec2 poly_moment1(const Polygon& p) {
  const std::size_t n = p.size();
  Vec2 m = Vec2::Zero();
  if (n < 3) return m;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = p[i];
    const Vec2& b = p[(i + 1) % n];
    const double cr = a[0] * b[1] - b[0] * a[1];
    m[0] += (a[0] + b[0]) * cr;
    m[1] += (a[1] + b[1]) * cr;
  }
  return m / 6.0;
}

double poly_cos(const Polygon& p, const Vec2& w, double phase) {
  const std::size_t n = p.size();
  if (n < 3) return 0.0;
  const double w2 = w.squaredNorm();
  if (w2 == 0.0) return poly_area(p) * std::cos(phase);
  // cos(w.y+phase) = div( sin(w.y+phase) w / |w|^2 ); each CCW edge a->b with
  // outward normal contributes cross(w,e)/|w|^2 * avg of sin along the edge.
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = p[i];
    const Vec2 e = p[(i + 1) % n] - a;
    const double wxe = w[0] * e[1] - w[1] * e[0];
    if (wxe == 0.0) continue;
    const double c = w.dot(a) + phase;
    const double d = w.dot(e);
    const double half = 0.5 * d;
    const double sinc = std::abs(half) < 1e-8 ? 1.0 - half * half / 6.0 : std::sin(half) / half;
    total += (wxe / w2) * std::sin(c + half) * sinc;
  }
  return total;
}

}  // namespace plates
