// Acceptance gate. Each criterion prints one PASS/FAIL line; the exit code is
// nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "tfim/commands.hpp"
#include "tfim/correlators.hpp"
#include "tfim/elliptic.hpp"
#include "tfim/rdm.hpp"
#include "tfim/report.hpp"
#include "tfim/rfs.hpp"
#include "tfim/scaling.hpp"

using namespace tfim;

namespace {

constexpr double pi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Gate {
 public:
  void run(const std::string& name, double time_limit_s, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > time_limit_s) {
      o.pass = false;
      o.detail += " [runtime " + std::to_string(secs) + " s exceeds " + std::to_string(time_limit_s) + " s]";
    }
    std::printf("%s %s (%.3f s): %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), secs, o.detail.c_str());
    std::fflush(stdout);
    failures_ += o.pass ? 0 : 1;
  }
  int failures() const { return failures_; }

 private:
  int failures_ = 0;
};

// Accumulates a worst-case error against a bound.
struct Worst {
  double bound;
  double worst = 0.0;
  void see(double err) { worst = std::max(worst, std::isfinite(err) ? err : INFINITY); }
  bool ok() const { return worst <= bound; }
  std::string str(const char* what) const {
    std::ostringstream s;
    s.precision(3);
    s << what << " max " << worst << " (bound " << bound << ")";
    return s.str();
  }
};

Outcome critical_correlators() {
  const auto c = correlators_finite({1 << 14, 1.0});
  const auto t = correlators_thermo(1.0);
  const double want[4] = {2 / pi, 2 / pi, -2 / (3 * pi), 16 / (3 * pi * pi)};
  const double fin[4] = {c.sz, c.xx, c.yy, c.zz};
  const double thr[4] = {t.sz, t.xx, t.yy, t.zz};
  Worst f{5e-4}, th{1e-12};
  for (int i = 0; i < 4; ++i) {
    f.see(std::abs(fin[i] - want[i]));
    th.see(std::abs(thr[i] - want[i]));
  }
  return {f.ok() && th.ok(), f.str("finite N=2^14") + "; " + th.str("thermodynamic")};
}

Outcome oracle_equivalence() {
  Worst w{1e-3};
  for (double l : {0.3, 0.7, 0.95, 1.0, 1.05, 1.5}) {
    for (std::int64_t n : {64, 512, 4096}) {
      const auto o = rfs_oracle({n, l}, 1e-4);
      const double closed = rfs_finite({n, l}).chi;
      w.see(std::abs(closed - o.chi) / closed);
    }
  }
  return {w.ok(), w.str("relative discrepancy, delta = 1e-4 and 5e-5")};
}

Outcome log_coefficients() {
  std::vector<double> ln_n, d[4];
  for (int e = 10; e <= 16; ++e) {
    const auto c = correlators_finite({std::int64_t{1} << e, 1.0});
    ln_n.push_back(e * std::log(2.0));
    d[0].push_back(c.d_sz);
    d[1].push_back(c.d_xx);
    d[2].push_back(c.d_yy);
    d[3].push_back(c.d_zz);
  }
  const double want[4] = {-1 / pi, 1 / pi, 1 / pi, -16 / (3 * pi * pi)};
  const char* names[4] = {"sz", "xx", "yy", "zz"};
  Worst w{0.02};
  std::ostringstream s;
  s.precision(5);
  for (int i = 0; i < 4; ++i) {
    const double slope = fit_line(ln_n, d[i]).slope;
    w.see(std::abs(slope / want[i] - 1));
    s << names[i] << " slope " << slope << "; ";
  }
  return {w.ok(), s.str() + w.str("relative deviation")};
}

Outcome z_minus_derivative() {
  const auto rho = build_rdm(correlators_finite({1 << 14, 1.0}));
  const double err = std::abs(rho.d_z_minus - 1 / (3 * pi));
  std::ostringstream s;
  s << "d z-/d lambda = " << rho.d_z_minus << ", |err| = " << err << " (bound 1e-3)";
  return {err <= 1e-3, s.str()};
}

Outcome finite_size_slope() {
  std::vector<std::int64_t> sizes;
  for (int e = 9; e <= 14; ++e) sizes.push_back(std::int64_t{1} << e);
  const auto peaks = find_peaks(sizes);
  const auto fit = fit_finite_size(peaks);
  const double dev = fit.params.at("deviation");
  std::ostringstream s;
  s << "slope " << fit.slope << " vs sqrt(A1) " << fit.params.at("sqrt_a1") << ", deviation "
    << 100 * dev << "% (bound 5%), r^2 " << fit.r_squared;
  return {std::abs(dev) <= 0.05, s.str()};
}

Outcome thermodynamic_coefficient() {
  std::vector<double> lambdas;
  for (int k = 2; k <= 5; ++k) lambdas.push_back(1 - std::pow(10.0, -k));
  const auto fit = fit_thermo(lambdas);
  const double dev = fit.params.at("deviation");
  std::ostringstream s;
  s << "A2 " << fit.slope << " vs A1 " << a1_coefficient() << ", deviation " << 100 * dev
    << "% (bound 5%)";
  return {std::abs(dev) <= 0.05, s.str()};
}

Outcome collapse() {
  const std::vector<std::int64_t> sizes{512, 1024, 2048, 4096};
  const auto samples = collapse_samples(sizes);
  const double q = collapse_quality(rescale(samples, 1.0));
  const auto best = optimal_collapse_exponent(samples, {0.5, 2.0});
  std::ostringstream s;
  s << "quality(nu=1) " << q << " (bound 0.05); argmin nu " << best.nu << " (window [0.9, 1.1])";
  return {q <= 0.05 && best.nu >= 0.9 && best.nu <= 1.1, s.str()};
}

Outcome property_suite() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> lam(0.05, 2.5);
  std::uniform_int_distribution<std::int64_t> half(4, 2048);

  Worst trace{1e-12}, psd{1e-10}, fd{1e-7}, forms{1e-10}, legendre{1e-10};
  for (int i = 0; i < 200; ++i) {
    const ChainSpec spec{2 * half(rng), lam(rng)};
    const auto rho = build_rdm(correlators_finite(spec));
    trace.see(std::abs(rho.u_plus + rho.u_minus + 2 * rho.w - 1));
    const auto [b1, b2] = rdm_blocks(rho);
    psd.see(std::max(0.0, -std::min(b1.value.eigenvalues()[0], b2.value.eigenvalues()[0])));
    const auto v = rfs_closed_form(rho);
    forms.see(std::abs(block_susceptibility(b1) + block_susceptibility(b2) - v.chi) / v.chi);
  }
  for (std::int64_t n : {64, 1024}) {
    for (double l : {0.2, 0.8, 1.0, 1.3}) {
      const auto c = correlators_finite({n, l});
      auto comp = [n](int which) {
        return [n, which](double x) {
          const auto s = correlators_finite({n, x});
          return which == 0 ? s.sz : which == 1 ? s.xx : which == 2 ? s.yy : s.zz;
        };
      };
      const double an[4] = {c.d_sz, c.d_xx, c.d_yy, c.d_zz};
      for (int k = 0; k < 4; ++k) fd.see(std::abs(test::central_diff6(comp(k), l, 1e-5) - an[k]));
    }
  }
  for (double k : {0.1, 0.5, 0.9, 0.99, 0.9999}) {
    const double kc = std::sqrt(1 - k * k);
    const double K = elliptic_k(k), E = elliptic_e(k), Kc = elliptic_k(kc), Ec = elliptic_e(kc);
    legendre.see(std::abs(E * Kc + Ec * K - K * Kc - pi / 2));
  }

  auto cfg = default_config(Command::sweep);
  std::ostringstream a, b, ja, jb;
  write_csv(a, run(cfg));
  write_csv(b, run(cfg));
  write_json(ja, run(cfg), tfim::to_json(cfg));
  write_json(jb, run(cfg), tfim::to_json(cfg));
  const bool deterministic = a.str() == b.str() && ja.str() == jb.str();

  const bool ok = trace.ok() && psd.ok() && fd.ok() && forms.ok() && legendre.ok() && deterministic;
  return {ok, trace.str("trace-one") + "; " + psd.str("negative eigenvalue") + "; " +
                  fd.str("derivative vs FD") + "; " + forms.str("block vs element form") + "; " +
                  legendre.str("Legendre") + "; CSV/JSON deterministic " +
                  (deterministic ? "yes" : "no")};
}

}  // namespace

int main() {
  Gate gate;
  gate.run("1 critical-point correlators", 0.1, critical_correlators);
  gate.run("2 oracle equivalence", 10.0, oracle_equivalence);
  gate.run("3 log-divergence coefficients", 10.0, log_coefficients);
  gate.run("4 derivative of z-", 1.0, z_minus_derivative);
  gate.run("5 finite-size slope", 60.0, finite_size_slope);
  gate.run("6 thermodynamic coefficient", 10.0, thermodynamic_coefficient);
  gate.run("7 data collapse", 60.0, collapse);
  gate.run("8 property suite", 60.0, property_suite);
  std::printf("%d of 8 criteria failed\n", gate.failures());
  return gate.failures() == 0 ? 0 : 1;
}
