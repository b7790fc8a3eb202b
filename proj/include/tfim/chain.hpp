#pragma once

#include <cstdint>
#include <vector>

namespace tfim {

/// A point in parameter space: N spins on a periodic chain at Ising coupling
/// lambda (in units of the transverse field).
struct ChainSpec {
  std::int64_t n_sites = 0;
  double lambda = 0.0;
};

/// Throws DomainError unless n_sites is even and >= 4 and lambda is finite and >= 0.
void validate(const ChainSpec& spec);

/// Mode angles phi_q = 2 pi q / N for half-odd q in [-M, M], M = (N - 1) / 2,
/// in ascending order.
struct MomentumGrid {
  std::vector<double> phis;
};

MomentumGrid momentum_grid(const ChainSpec& spec);

/// Quasiparticle energy sqrt(1 + lambda^2 - 2 lambda cos phi).
double dispersion(double lambda, double phi) noexcept;

}  // namespace tfim
