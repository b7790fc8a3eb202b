#include "tfim/chain.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "tfim/errors.hpp"

namespace tfim {

void validate(const ChainSpec& spec) {
  if (spec.n_sites < 4 || spec.n_sites % 2 != 0) {
    throw DomainError("n_sites must be even and >= 4, got " + std::to_string(spec.n_sites));
  }
  if (!std::isfinite(spec.lambda) || spec.lambda < 0.0) {
    throw DomainError("lambda must be finite and >= 0, got " + std::to_string(spec.lambda));
  }
}

MomentumGrid momentum_grid(const ChainSpec& spec) {
  validate(spec);
  const auto n = spec.n_sites;
  MomentumGrid grid;
  grid.phis.reserve(static_cast<std::size_t>(n));
  // q = j - (N - 1) / 2, so 2 pi q / N = pi (2j + 1 - N) / N.
  for (std::int64_t j = 0; j < n; ++j) {
    grid.phis.push_back(std::numbers::pi * static_cast<double>(2 * j + 1 - n) /
                        static_cast<double>(n));
  }
  return grid;
}

double dispersion(double lambda, double phi) noexcept {
  // 1 + l^2 - 2 l cos(phi) written without the cancellation at l = 1, phi -> 0.
  const double half = std::sin(0.5 * phi);
  const double gap = 1.0 - lambda;
  return std::sqrt(gap * gap + 4.0 * lambda * half * half);
}

}  // namespace tfim
