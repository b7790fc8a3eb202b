#include <cmath>

#include "mode_terms.hpp"
#include "tfim/correlators.hpp"

namespace tfim::reference {

CorrelatorSet correlators_finite_serial(const ChainSpec& spec) {
  const MomentumGrid grid = momentum_grid(spec);
  const double l = spec.lambda;
  CompensatedSum sz, xx, yy, d_sz, d_xx, d_yy;
  for (double phi : grid.phis) {
    const double w = dispersion(l, phi);
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    const double w3 = w * w * w;
    sz.add((1.0 - l * c) / w);
    xx.add((l - c) / w);
    yy.add((l * std::cos(2.0 * phi) - c) / w);
    d_sz.add(-l * s * s / w3);
    d_xx.add(s * s / w3);
    d_yy.add(s * s * (2.0 * l * c - 1.0) / w3);
  }
  const double inv_n = 1.0 / static_cast<double>(spec.n_sites);
  CorrelatorSet out;
  out.sz = inv_n * sz.value();
  out.xx = inv_n * xx.value();
  out.yy = inv_n * yy.value();
  out.d_sz = inv_n * d_sz.value();
  out.d_xx = inv_n * d_xx.value();
  out.d_yy = inv_n * d_yy.value();
  detail::close_zz(out);
  out.regime = Regime::finite;
  out.n_sites = spec.n_sites;
  return out;
}

}  // namespace tfim::reference
