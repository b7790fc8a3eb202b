#include "tfim/rfs.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tfim/correlators.hpp"
#include "tfim/errors.hpp"

namespace tfim {

namespace {

constexpr double kFormAgreement = 1e-10;
constexpr double kNegativeEigenvalue = -1e-12;

void require_regular(const Block2x2& block, const char* name) {
  if (!(block.det() > kSingularDeterminant) || !(block.trace() > 0.0)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "singular " << name << " (det=" << block.det() << ", tr=" << block.trace()
        << "); the closed form needs det > 0, use rfs_oracle instead";
    throw SingularBlockError(msg.str());
  }
}

// Block fidelity tr sqrt(A^1/2 B A^1/2) for 2x2 PSD A, B.
double block_fidelity(const Block2x2& a, const Block2x2& b) {
  for (const Block2x2* m : {&a, &b}) {
    if (m->eigenvalues()[0] < kNegativeEigenvalue) {
      throw DomainError("uhlmann_fidelity: block has a negative eigenvalue");
    }
  }
  const double tr_ab = a.a * b.a + 2.0 * a.b * b.b + a.d * b.d;
  const double det_a = std::max(a.det(), 0.0);
  const double det_b = std::max(b.det(), 0.0);
  return std::sqrt(std::max(tr_ab + 2.0 * std::sqrt(det_a * det_b), 0.0));
}

}  // namespace

std::string_view to_string(RfsMethod method) noexcept {
  return method == RfsMethod::closed_form ? "closed_form" : "oracle";
}

double block_susceptibility(const BlockPair& block) {
  const Block2x2& r = block.value;
  const Block2x2& dr = block.derivative;
  require_regular(r, "block");
  const double tr_d = dr.trace();
  // d(det r)/dlambda for r = [[a, b], [b, d]].
  const double d_det = dr.a * r.d + r.a * dr.d - 2.0 * r.b * dr.b;
  return (tr_d * tr_d - 4.0 * dr.det() + d_det * d_det / r.det()) / (4.0 * r.trace());
}

RfsValue rfs_closed_form(const TwoSiteRdm& rho) {
  const auto [first, second] = rdm_blocks(rho);
  require_regular(first.value, "block {up-up, down-down}");
  require_regular(second.value, "block {up-down, down-up}");

  const double up = rho.u_plus, um = rho.u_minus, zm = rho.z_minus;
  const double w = rho.w, zp = rho.z_plus;
  const double dup = rho.d_u_plus, dum = rho.d_u_minus, dzm = rho.d_z_minus;
  const double dw = rho.d_w, dzp = rho.d_z_plus;

  const double diff = dup - dum;
  const double ddet1 = um * dup + up * dum - 2.0 * zm * dzm;
  const double chi1 = (diff * diff + 4.0 * dzm * dzm + ddet1 * ddet1 / (up * um - zm * zm)) /
                      (4.0 * (up + um));
  const double ddet2 = w * dw - zp * dzp;
  const double chi2 = (dzp * dzp + ddet2 * ddet2 / (w * w - zp * zp)) / (2.0 * w);

  const double chi = chi1 + chi2;
  const double generic = block_susceptibility(first) + block_susceptibility(second);
  if (!(std::abs(generic - chi) <= kFormAgreement * std::abs(chi))) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "rfs_closed_form: element form " << chi << " disagrees with block form " << generic;
    throw ConsistencyError(msg.str());
  }

  RfsValue v;
  v.chi = chi;
  v.method = RfsMethod::closed_form;
  v.chi_block1 = chi1;
  v.chi_block2 = chi2;
  return v;
}

double uhlmann_fidelity(const TwoSiteRdm& rho, const TwoSiteRdm& rho_tilde) {
  const auto [a1, a2] = rdm_blocks(rho);
  const auto [b1, b2] = rdm_blocks(rho_tilde);
  return block_fidelity(a1.value, b1.value) + block_fidelity(a2.value, b2.value);
}

namespace {

double quotient(const TwoSiteRdm& base, const ChainSpec& spec, double delta) {
  const TwoSiteRdm shifted = build_rdm(correlators_finite({spec.n_sites, spec.lambda + delta}));
  return -2.0 * std::log(uhlmann_fidelity(base, shifted)) / (delta * delta);
}

}  // namespace

double fidelity_quotient(const ChainSpec& spec, double delta) {
  validate(spec);
  if (delta == 0.0 || !std::isfinite(delta)) {
    throw DomainError("fidelity_quotient: delta must be finite and nonzero");
  }
  validate({spec.n_sites, spec.lambda + delta});
  return quotient(build_rdm(correlators_finite(spec)), spec, delta);
}

RfsValue rfs_oracle(const ChainSpec& spec, double delta) {
  validate(spec);
  if (!(delta >= 1e-6 && delta <= 1e-3)) {
    throw DomainError("rfs_oracle: delta must lie in [1e-6, 1e-3]");
  }
  if (spec.lambda < delta) {
    throw DomainError("rfs_oracle: lambda must be >= delta");
  }
  const TwoSiteRdm base = build_rdm(correlators_finite(spec));
  auto symmetric = [&](double h) {
    return 0.5 * (quotient(base, spec, h) + quotient(base, spec, -h));
  };
  // symmetric(h) = chi + b h^2 + O(h^4).
  const double coarse = symmetric(delta);
  const double fine = symmetric(0.5 * delta);

  RfsValue v;
  v.method = RfsMethod::oracle;
  v.chi = (4.0 * fine - coarse) / 3.0;
  v.oracle_delta = delta;
  if (!base.degenerate) {
    const double closed = rfs_closed_form(base).chi;
    if (closed > 0.0) v.discrepancy = std::abs(closed - v.chi) / closed;
  }
  return v;
}

RfsValue rfs_finite(const ChainSpec& spec) {
  return rfs_closed_form(build_rdm(correlators_finite(spec)));
}

RfsValue rfs_thermo(double lambda) {
  if (lambda == 1.0) {
    throw DomainError("rfs_thermo: the susceptibility diverges at lambda = 1");
  }
  return rfs_closed_form(build_rdm(correlators_thermo(lambda)));
}

}  // namespace tfim
