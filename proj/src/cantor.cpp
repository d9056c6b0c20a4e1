#include <algorithm>
#include <cmath>

#include "plates/geometry.hpp"

namespace plates {

void CantorCurve::removed_measure(std::int64_t& num, int& log2den) const {
  log2den = 2 * levels + 1;
  num = 0;
  for (const auto& iv : removed) {
    const int shift = log2den - iv.log2den;
    num += (iv.hi_num - iv.lo_num) << shift;
  }
}

CantorCurve cantor_curve(double beta, int levels, double dt) {
  if (levels < 0 || levels > 12)
    throw LevelTooDeep("cantor_curve: levels must be in [0,12]");
  if (!(beta > 0.0 && beta <= 2.0 * std::sqrt(2.0)))
    throw ValidationError("cantor_curve: beta must lie in (0, 2 sqrt 2]");

  CantorCurve out;
  out.beta = beta;
  out.levels = levels;

  // exact dyadic interval endpoints at denominator 2^(2n+1)
  const int E = 2 * levels + 1;
  struct Kept {
    std::int64_t lo, hi;  // at denominator 2^E
  };
  std::vector<Kept> kept = {{0, std::int64_t(1) << E}};
  for (int k = 1; k <= levels; ++k) {
    // remove the middle open interval of length 2^-2k from each kept interval
    const std::int64_t half_rm = std::int64_t(1) << (E - 2 * k - 1);  // 2^-2k / 2
    std::vector<Kept> next;
    next.reserve(kept.size() * 2);
    for (const Kept& iv : kept) {
      const std::int64_t mid = (iv.lo + iv.hi) / 2;
      DyadicInterval rm;
      rm.lo_num = mid - half_rm;
      rm.hi_num = mid + half_rm;
      rm.log2den = E;
      rm.level = k;
      out.removed.push_back(rm);
      next.push_back({iv.lo, mid - half_rm});
      next.push_back({mid + half_rm, iv.hi});
    }
    kept = std::move(next);
  }
  std::sort(out.removed.begin(), out.removed.end(),
            [](const DyadicInterval& a, const DyadicInterval& b) { return a.lo_num < b.lo_num; });

  // tangent field: perturbed on removed intervals, (1,0) on the Cantor set
  const double den = static_cast<double>(std::int64_t(1) << E);
  std::vector<double> lo(out.removed.size()), hi(out.removed.size());
  std::vector<int> lvl(out.removed.size());
  for (std::size_t i = 0; i < out.removed.size(); ++i) {
    lo[i] = out.removed[i].lo_num / den;
    hi[i] = out.removed[i].hi_num / den;
    lvl[i] = out.removed[i].level;
  }
  auto find_interval = [lo, hi](double t) -> int {
    auto it = std::upper_bound(lo.begin(), lo.end(), t);
    if (it == lo.begin()) return -1;
    const int i = static_cast<int>(it - lo.begin()) - 1;
    return t < hi[static_cast<std::size_t>(i)] ? i : -1;
  };
  auto phival = [lo, lvl, beta, find_interval](double t) -> double {
    const int i = find_interval(t);
    if (i < 0) return 0.0;
    const double scale = std::pow(2.0, 2 * lvl[static_cast<std::size_t>(i)]);
    const double xi = (t - lo[static_cast<std::size_t>(i)]) * scale;
    const double s = std::sin(2.0 * M_PI * xi);
    return beta / scale * s * s * s;
  };
  auto dphival = [lo, lvl, beta, find_interval](double t) -> double {
    const int i = find_interval(t);
    if (i < 0) return 0.0;
    const double scale = std::pow(2.0, 2 * lvl[static_cast<std::size_t>(i)]);
    const double xi = (t - lo[static_cast<std::size_t>(i)]) * scale;
    const double s = std::sin(2.0 * M_PI * xi), c = std::cos(2.0 * M_PI * xi);
    return beta * 6.0 * M_PI * s * s * c;  // beta_k * 2^{2k} = beta
  };

  LeadingCurve& c = out.curve;
  c.length = 1.0;
  if (dt <= 0.0) {
    const int log2dt = std::min(2 * levels + 2, 16);
    dt = 1.0 / (1 << log2dt);
  }
  c.dt = dt;
  c.T_fn = [phival](double t) {
    const double ph = phival(t);
    return Vec2(std::sqrt(1.0 - ph * ph), ph);
  };
  c.kappa_gamma_fn = [phival, dphival](double t) {
    const double ph = phival(t);
    return dphival(t) / std::sqrt(1.0 - ph * ph);
  };
  c.kappa_fn = [](double) { return 1.0; };
  c.resample();
  return out;
}

}  // namespace plates
