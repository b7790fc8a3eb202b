#pragma once

#include <array>
#include <utility>

#include "tfim/correlators.hpp"

namespace tfim {

/// Two-neighbouring-site reduced density matrix in the basis
/// {up-up, down-down, up-down, down-up}:
///
///   | u+  z-  0   0  |
///   | z-  u-  0   0  |
///   | 0   0   w   z+ |
///   | 0   0   z+  w  |
///
/// together with the lambda-derivative of every element.
struct TwoSiteRdm {
  double u_plus = 0.0;
  double u_minus = 0.0;
  double w = 0.0;
  double z_plus = 0.0;
  double z_minus = 0.0;
  double d_u_plus = 0.0;
  double d_u_minus = 0.0;
  double d_w = 0.0;
  double d_z_plus = 0.0;
  double d_z_minus = 0.0;
  // A block is (numerically) singular; the closed-form susceptibility
  // does not apply. Happens at lambda == 0.
  bool degenerate = false;
};

/// Real symmetric 2x2 matrix [[a, b], [b, d]].
struct Block2x2 {
  double a = 0.0;
  double b = 0.0;
  double d = 0.0;

  double trace() const noexcept { return a + d; }
  double det() const noexcept { return a * d - b * b; }
  /// Ascending eigenvalues.
  std::array<double, 2> eigenvalues() const noexcept;
};

struct BlockPair {
  Block2x2 value;
  Block2x2 derivative;
};

inline constexpr double kPositivityTolerance = 1e-10;
inline constexpr double kSingularDeterminant = 1e-12;

/// Affine map from correlators to matrix elements (values and derivatives).
/// Throws ConsistencyError if the result is not positive semidefinite to
/// within kPositivityTolerance.
TwoSiteRdm build_rdm(const CorrelatorSet& c);

/// Splits rho into its {up-up, down-down} and {up-down, down-up} blocks.
std::pair<BlockPair, BlockPair> rdm_blocks(const TwoSiteRdm& rho) noexcept;

}  // namespace tfim
