#pragma once

#include <cmath>

#include "tfim/correlators.hpp"
#include "tfim/numeric.hpp"

namespace tfim::detail {

/// Running sums of the per-mode summands of sz, xx, yy and their
/// lambda-derivatives.
struct ModeSums {
  CompensatedSum sz, xx, yy, d_sz, d_xx, d_yy;

  void add(const ModeSums& o) noexcept {
    sz.add(o.sz);
    xx.add(o.xx);
    yy.add(o.yy);
    d_sz.add(o.d_sz);
    d_xx.add(o.d_xx);
    d_yy.add(o.d_yy);
  }
};

/// Adds the summands of one mode. With w = omega(phi):
///   sz: (1 - l cos)/w       d/dl: -l sin^2 / w^3
///   xx: (l - cos)/w         d/dl:  sin^2 / w^3
///   yy: (l cos2 - cos)/w    d/dl:  sin^2 (2 l cos - 1) / w^3
inline void accumulate_mode(ModeSums& s, double lambda, double phi) noexcept {
  const double c = std::cos(phi);
  const double sn = std::sin(phi);
  const double half = std::sin(0.5 * phi);
  const double gap = 1.0 - lambda;
  const double w2 = gap * gap + 4.0 * lambda * half * half;
  const double w = std::sqrt(w2);
  const double inv_w = 1.0 / w;
  const double s2_w3 = sn * sn * inv_w / w2;
  s.sz.add((1.0 - lambda * c) * inv_w);
  s.xx.add((lambda - c) * inv_w);
  s.yy.add((lambda * (2.0 * c * c - 1.0) - c) * inv_w);
  s.d_sz.add(-lambda * s2_w3);
  s.d_xx.add(s2_w3);
  s.d_yy.add((2.0 * lambda * c - 1.0) * s2_w3);
}

/// Fills the zz fields from sz, xx, yy via zz = sz^2 - xx yy.
inline void close_zz(CorrelatorSet& c) noexcept {
  c.zz = c.sz * c.sz - c.xx * c.yy;
  c.d_zz = 2.0 * c.sz * c.d_sz - c.d_xx * c.yy - c.xx * c.d_yy;
}

}  // namespace tfim::detail
