#include "tfim/correlators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "mode_terms.hpp"
#include "tfim/elliptic.hpp"
#include "tfim/errors.hpp"

namespace tfim {

namespace {

// Modes per parallel block. Fixed so the summation tree, and therefore the
// rounding, is independent of the number of threads.
constexpr std::int64_t kBlockModes = 2048;

// Below this coupling the elliptic closed forms lose digits to 1/lambda^2
// cancellation. The gapped chain's finite-size error there is O(lambda^N),
// so a modest momentum sum is exact to machine precision.
constexpr double kSmallCoupling = 1e-2;
constexpr std::int64_t kSmallCouplingSites = 1024;

CorrelatorSet finite_blocked(std::int64_t n, double lambda) {
  // Summands are even in phi: sum the N/2 positive modes phi = pi (2m + 1) / N
  // and double.
  const std::int64_t half_modes = n / 2;
  const std::int64_t blocks = (half_modes + kBlockModes - 1) / kBlockModes;
  std::vector<detail::ModeSums> partial(static_cast<std::size_t>(blocks));
  const double step = std::numbers::pi / static_cast<double>(n);

#pragma omp parallel for schedule(static) if (blocks > 1)
  for (std::int64_t blk = 0; blk < blocks; ++blk) {
    detail::ModeSums& s = partial[static_cast<std::size_t>(blk)];
    const std::int64_t begin = blk * kBlockModes;
    const std::int64_t end = std::min(begin + kBlockModes, half_modes);
    for (std::int64_t m = begin; m < end; ++m) {
      detail::accumulate_mode(s, lambda, step * static_cast<double>(2 * m + 1));
    }
  }

  detail::ModeSums total;
  for (const auto& s : partial) total.add(s);

  const double scale = 2.0 / static_cast<double>(n);
  CorrelatorSet c;
  c.sz = scale * total.sz.value();
  c.xx = scale * total.xx.value();
  c.yy = scale * total.yy.value();
  c.d_sz = scale * total.d_sz.value();
  c.d_xx = scale * total.d_xx.value();
  c.d_yy = scale * total.d_yy.value();
  detail::close_zz(c);
  return c;
}

}  // namespace

CorrelatorSet correlators_finite(const ChainSpec& spec) {
  validate(spec);
  CorrelatorSet c = finite_blocked(spec.n_sites, spec.lambda);
  c.regime = Regime::finite;
  c.n_sites = spec.n_sites;
  return c;
}

CorrelatorSet correlators_thermo(double lambda) {
  if (!std::isfinite(lambda) || lambda < 0.0) {
    throw DomainError("correlators_thermo: lambda must be finite and >= 0");
  }
  constexpr double pi = std::numbers::pi;
  CorrelatorSet c;
  c.regime = Regime::thermodynamic;
  c.n_sites = 0;

  if (lambda == 1.0) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    c.sz = 2.0 / pi;
    c.xx = 2.0 / pi;
    c.yy = -2.0 / (3.0 * pi);
    c.zz = 16.0 / (3.0 * pi * pi);
    c.d_sz = -inf;
    c.d_xx = inf;
    c.d_yy = inf;
    c.d_zz = -inf;
    c.derivatives_divergent = true;
    return c;
  }

  if (lambda < kSmallCoupling) {
    CorrelatorSet s = finite_blocked(kSmallCouplingSites, lambda);
    s.regime = Regime::thermodynamic;
    s.n_sites = 0;
    return s;
  }

  const double l = lambda;
  const double l2 = l * l;
  const double complement = std::abs(1.0 - l) / (1.0 + l);
  const double modulus = 2.0 * std::sqrt(l) / (1.0 + l);
  const auto [K, E] = elliptic_ke(modulus, complement);

  c.sz = ((1.0 - l) * K + (1.0 + l) * E) / pi;
  c.xx = ((l - 1.0) * K + (1.0 + l) * E) / (pi * l);
  c.yy = (K * (l - 1.0) * (2.0 * l2 + 1.0) - E * (l + 1.0) * (2.0 * l2 - 1.0)) / (3.0 * pi * l);

  // Differentiated with dK/dk = [E / (1 - k^2) - K] / k, dE/dk = (E - K) / k and
  // dk/dlambda = (1 - l) / (sqrt(l) (1 + l)^2); the 1 / (1 - l) poles cancel.
  c.d_sz = (l + 1.0) / (pi * l) * E - (l2 + 1.0) / (pi * l * (l + 1.0)) * K;
  c.d_xx = (l2 + 1.0) / (pi * l2 * (l + 1.0)) * K - (l + 1.0) / (pi * l2) * E;
  c.d_yy = (4.0 * l2 * l2 + l2 + 1.0) / (3.0 * pi * l2 * (l + 1.0)) * K -
           (l + 1.0) * (4.0 * l2 + 1.0) / (3.0 * pi * l2) * E;
  detail::close_zz(c);
  return c;
}

std::string_view to_string(CorrelatorTag tag) noexcept {
  switch (tag) {
    case CorrelatorTag::sz: return "sz";
    case CorrelatorTag::xx: return "xx";
    case CorrelatorTag::yy: return "yy";
    case CorrelatorTag::zz: return "zz";
  }
  return "?";
}

double log_divergence_coefficient(CorrelatorTag tag) noexcept {
  constexpr double pi = std::numbers::pi;
  switch (tag) {
    case CorrelatorTag::sz: return -1.0 / pi;
    case CorrelatorTag::xx: return 1.0 / pi;
    case CorrelatorTag::yy: return 1.0 / pi;
    // d zz = 2 sz d sz - yy d xx - xx d yy at the critical values.
    case CorrelatorTag::zz: return -16.0 / (3.0 * pi * pi);
  }
  return 0.0;
}

}  // namespace tfim
