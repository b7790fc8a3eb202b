#include "tfim/rdm.hpp"

#include <cmath>
#include <sstream>

#include "tfim/errors.hpp"

namespace tfim {

std::array<double, 2> Block2x2::eigenvalues() const noexcept {
  const double mean = 0.5 * (a + d);
  const double half_gap = std::hypot(0.5 * (a - d), b);
  return {mean - half_gap, mean + half_gap};
}

TwoSiteRdm build_rdm(const CorrelatorSet& c) {
  TwoSiteRdm r;
  r.u_plus = 0.25 * (1.0 + 2.0 * c.sz + c.zz);
  r.u_minus = 0.25 * (1.0 - 2.0 * c.sz + c.zz);
  r.w = 0.25 * (1.0 - c.zz);
  r.z_plus = 0.25 * (c.xx + c.yy);
  r.z_minus = 0.25 * (c.xx - c.yy);
  r.d_u_plus = 0.25 * (2.0 * c.d_sz + c.d_zz);
  r.d_u_minus = 0.25 * (-2.0 * c.d_sz + c.d_zz);
  r.d_w = -0.25 * c.d_zz;
  r.d_z_plus = 0.25 * (c.d_xx + c.d_yy);
  r.d_z_minus = 0.25 * (c.d_xx - c.d_yy);

  const double det1 = r.u_plus * r.u_minus - r.z_minus * r.z_minus;
  const double det2 = r.w * r.w - r.z_plus * r.z_plus;
  const double tol = kPositivityTolerance;
  if (r.u_plus < -tol || r.u_minus < -tol || r.w < -tol || det1 < -tol || det2 < -tol) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "build_rdm: density matrix not positive semidefinite (u+=" << r.u_plus
        << ", u-=" << r.u_minus << ", w=" << r.w << ", det1=" << det1 << ", det2=" << det2
        << ")";
    throw ConsistencyError(msg.str());
  }
  r.degenerate = det1 <= kSingularDeterminant || det2 <= kSingularDeterminant;
  return r;
}

std::pair<BlockPair, BlockPair> rdm_blocks(const TwoSiteRdm& rho) noexcept {
  BlockPair first{{rho.u_plus, rho.z_minus, rho.u_minus},
                  {rho.d_u_plus, rho.d_z_minus, rho.d_u_minus}};
  BlockPair second{{rho.w, rho.z_plus, rho.w}, {rho.d_w, rho.d_z_plus, rho.d_w}};
  return {first, second};
}

}  // namespace tfim
