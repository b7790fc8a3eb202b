#include "tfim/elliptic.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "tfim/errors.hpp"

namespace tfim {

EllipticPair elliptic_ke(double modulus, double complement) {
  if (!(complement > 0.0) || !std::isfinite(complement) || !std::isfinite(modulus)) {
    throw DomainError("elliptic_ke: complementary modulus must be positive and finite");
  }
  // Arithmetic-geometric mean a_n, b_n with c_n = (a_{n-1} - b_{n-1}) / 2, c_0 = k:
  //   K = pi / (2 agm(1, k')),  E = K (1 - sum_n 2^{n-1} c_n^2).
  double a = 1.0;
  double b = complement;
  double weight = 0.5;
  double tail = weight * modulus * modulus;
  for (int iter = 0; iter < 64; ++iter) {
    const double c = 0.5 * (a - b);
    const double next_a = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = next_a;
    weight *= 2.0;
    tail += weight * c * c;
    if (std::abs(a - b) <= 1e-15 * a) break;
  }
  const double k = std::numbers::pi / (2.0 * a);
  return {k, k * (1.0 - tail)};
}

double elliptic_k(double k) {
  if (!(k >= 0.0 && k < 1.0)) {
    throw DomainError("elliptic_k: modulus must satisfy 0 <= k < 1, got " + std::to_string(k));
  }
  return elliptic_ke(k, std::sqrt((1.0 - k) * (1.0 + k))).k;
}

double elliptic_e(double k) {
  if (!(k >= 0.0 && k <= 1.0)) {
    throw DomainError("elliptic_e: modulus must satisfy 0 <= k <= 1, got " + std::to_string(k));
  }
  if (k == 1.0) return 1.0;
  return elliptic_ke(k, std::sqrt((1.0 - k) * (1.0 + k))).e;
}

}  // namespace tfim
