#pragma once

#include <cstdint>
#include <string_view>

#include "tfim/chain.hpp"

namespace tfim {

enum class Regime { finite, thermodynamic };

/// Ground-state magnetization, nearest-neighbour correlators and their
/// first lambda-derivatives.
struct CorrelatorSet {
  double sz = 0.0;  // <sigma^z>
  double xx = 0.0;  // <sigma^x_0 sigma^x_1>
  double yy = 0.0;  // <sigma^y_0 sigma^y_1>
  double zz = 0.0;  // <sigma^z_0 sigma^z_1> = sz^2 - xx * yy
  double d_sz = 0.0;
  double d_xx = 0.0;
  double d_yy = 0.0;
  double d_zz = 0.0;
  Regime regime = Regime::finite;
  std::int64_t n_sites = 0;  // 0 in the thermodynamic limit
  // Set only for the thermodynamic limit at lambda == 1, where the
  // derivative fields hold signed infinities.
  bool derivatives_divergent = false;
};

/// Exact finite-N values from the half-odd momentum sums. The sums are
/// split into fixed-size blocks evaluated in parallel and merged in block
/// order, so the result does not depend on the thread count.
CorrelatorSet correlators_finite(const ChainSpec& spec);

/// N -> infinity through complete elliptic integrals of k = 2 sqrt(lambda) / (1 + lambda).
CorrelatorSet correlators_thermo(double lambda);

enum class CorrelatorTag { sz, xx, yy, zz };

std::string_view to_string(CorrelatorTag tag) noexcept;

/// Coefficient of ln N (finite chains at lambda = 1) or of ln 1/|1 - lambda|
/// (thermodynamic limit) in the divergent first derivative of `tag`.
double log_divergence_coefficient(CorrelatorTag tag) noexcept;

namespace reference {

/// Straight serial evaluation over all N modes of the momentum grid. Kept
/// as the reference for the blocked parallel kernel.
CorrelatorSet correlators_finite_serial(const ChainSpec& spec);

}  // namespace reference

}  // namespace tfim
