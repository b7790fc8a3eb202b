#pragma once

namespace tfim {

/// Complete elliptic integral of the first kind, modulus convention:
/// K(k) = int_0^{pi/2} dt / sqrt(1 - k^2 sin^2 t). Requires 0 <= k < 1.
double elliptic_k(double k);

/// Complete elliptic integral of the second kind, modulus convention. Requires 0 <= k <= 1.
double elliptic_e(double k);

struct EllipticPair {
  double k;  // K(modulus)
  double e;  // E(modulus)
};

/// K and E from one AGM run. The complementary modulus k' = sqrt(1 - k^2) is
/// passed explicitly so callers near k -> 1 can supply it without cancellation.
/// Requires k' > 0.
EllipticPair elliptic_ke(double modulus, double complement);

}  // namespace tfim
