#pragma once

#include <optional>
#include <string_view>

#include "tfim/chain.hpp"
#include "tfim/rdm.hpp"

namespace tfim {

enum class RfsMethod { closed_form, oracle };

std::string_view to_string(RfsMethod method) noexcept;

struct RfsValue {
  double chi = 0.0;
  RfsMethod method = RfsMethod::closed_form;
  double chi_block1 = 0.0;  // {up-up, down-down} block
  double chi_block2 = 0.0;  // {up-down, down-up} block
  std::optional<double> oracle_delta;
  std::optional<double> discrepancy;  // |closed - oracle| / closed
};

/// Susceptibility of one 2x2 block from its trace, determinant and their
/// derivatives:
///   chi_i = [ (tr r')^2 - 4 det r' + (d det r)^2 / det r ] / (4 tr r)
/// Throws SingularBlockError when det r <= kSingularDeterminant or tr r <= 0.
double block_susceptibility(const BlockPair& block);

/// Reduced fidelity susceptibility from the matrix elements, evaluated in
/// expanded element form and cross-checked against block_susceptibility on
/// both blocks (relative agreement 1e-10, else ConsistencyError).
RfsValue rfs_closed_form(const TwoSiteRdm& rho);

/// Uhlmann fidelity tr sqrt(sqrt(rho) rho~ sqrt(rho)) of two block-diagonal
/// states sharing the same block structure. Each block pair uses
/// tr sqrt(A^1/2 B A^1/2) = sqrt(tr(AB) + 2 sqrt(det A det B)).
double uhlmann_fidelity(const TwoSiteRdm& rho, const TwoSiteRdm& rho_tilde);

/// -2 ln F(rho(lambda), rho(lambda + delta)) / delta^2 on a finite chain.
/// delta may be negative.
double fidelity_quotient(const ChainSpec& spec, double delta);

/// Fidelity-based susceptibility, independent of the closed form. Averages
/// the +delta and -delta quotients (removes odd orders in delta), then
/// Richardson-extrapolates over {delta, delta/2} to remove the delta^2 term.
/// Requires delta in [1e-6, 1e-3] and lambda >= delta. The discrepancy
/// against rfs_closed_form is filled when the closed form is defined.
RfsValue rfs_oracle(const ChainSpec& spec, double delta);

/// Closed-form susceptibility of a finite chain.
RfsValue rfs_finite(const ChainSpec& spec);

/// Closed-form susceptibility in the thermodynamic limit. lambda != 1.
RfsValue rfs_thermo(double lambda);

}  // namespace tfim
