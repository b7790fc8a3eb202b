#include "tfim/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>
#include <limits>

#include <Eigen/Dense>
// pchip.hpp in Boost 1.74 calls isnan unqualified.
using std::isnan;
#include <boost/math/interpolators/pchip.hpp>

#include "tfim/chain.hpp"
#include "tfim/errors.hpp"
#include "tfim/numeric.hpp"
#include "tfim/parallel.hpp"
#include "tfim/rfs.hpp"

namespace tfim {

namespace {

double chi_at(std::int64_t n, double lambda) { return rfs_finite({n, lambda}).chi; }

std::size_t distinct_count(std::span<const std::int64_t> sizes) {
  return std::set<std::int64_t>(sizes.begin(), sizes.end()).size();
}

}  // namespace

double a1_coefficient() noexcept {
  constexpr double pi = std::numbers::pi;
  constexpr double pi2 = pi * pi;
  return (27.0 * pi2 * pi2 - 144.0 * pi2 - 1024.0) /
         (pi2 * (9.0 * pi2 + 32.0) * (3.0 * pi2 - 32.0) + 4096.0);
}

std::size_t PeakScan::argmax() const noexcept {
  auto it = std::max_element(samples.begin(), samples.end(),
                             [](const auto& a, const auto& b) { return a.second < b.second; });
  return static_cast<std::size_t>(it - samples.begin());
}

bool PeakScan::unimodal() const noexcept {
  const std::size_t top = argmax();
  for (std::size_t i = 1; i < samples.size(); ++i) {
    const bool rising = samples[i].second > samples[i - 1].second;
    if (i <= top && !rising) return false;
    if (i > top && rising) return false;
  }
  return true;
}

PeakScan coarse_scan(std::int64_t n_sites, std::pair<double, double> bracket, int points) {
  const auto [lo, hi] = bracket;
  if (!(lo < hi) || points < 3) {
    throw PreconditionError("coarse_scan: need lo < hi and at least 3 points");
  }
  validate({n_sites, lo});
  PeakScan scan;
  scan.samples.reserve(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    const double lambda = lo + (hi - lo) * i / (points - 1);
    scan.samples.emplace_back(lambda, chi_at(n_sites, lambda));
  }
  return scan;
}

PeakRecord find_peak(std::int64_t n_sites, std::pair<double, double> bracket) {
  const PeakScan scan = coarse_scan(n_sites, bracket);
  const std::size_t top = scan.argmax();
  if (top == 0 || top + 1 == scan.samples.size()) {
    std::ostringstream msg;
    msg << "find_peak: no interior maximum of chi for N=" << n_sites << " in ["
        << bracket.first << ", " << bracket.second << "]";
    throw SearchError(msg.str(), scan.samples);
  }
  const auto refined = golden_section_maximize(
      [&](double l) { return chi_at(n_sites, l); }, scan.samples[top - 1].first,
      scan.samples[top + 1].first, kPeakBracketWidth);

  PeakRecord peak{n_sites, refined.x, refined.fx};
  const double left = chi_at(n_sites, peak.lambda_m - kPeakCertificateStep);
  const double right = chi_at(n_sites, peak.lambda_m + kPeakCertificateStep);
  if (!(peak.chi_m >= left && peak.chi_m >= right) || !(peak.lambda_m > 0.0 && peak.lambda_m < 2.0)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "find_peak: lambda_m=" << peak.lambda_m << " for N=" << n_sites
        << " fails the local-maximum certificate";
    throw SearchError(msg.str(), scan.samples);
  }
  return peak;
}

std::vector<PeakRecord> find_peaks(std::span<const std::int64_t> sizes,
                                   std::pair<double, double> bracket) {
  std::vector<PeakRecord> peaks(sizes.size());
  parallel_for(sizes.size(), [&](std::size_t i) { peaks[i] = find_peak(sizes[i], bracket); });
  return peaks;
}

std::string_view to_string(FitModel model) noexcept {
  switch (model) {
    case FitModel::sqrt_chi_vs_ln_n: return "sqrt_chi_vs_lnN";
    case FitModel::chi_vs_sq_log_lambda: return "chi_vs_sq_log_lambda";
    case FitModel::collapse: return "collapse";
    case FitModel::linear: return "linear";
  }
  return "?";
}

ScalingFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw FitError("fit_line: need at least two (x, y) pairs");
  }
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw FitError("fit_line: degenerate design, all x equal");

  ScalingFit fit;
  fit.model = FitModel::linear;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.slope * x[i] + fit.intercept);
    ss_res += r * r;
  }
  fit.r_squared = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  fit.flagged = fit.r_squared < kFitR2Threshold;
  return fit;
}

ScalingFit fit_finite_size(std::span<const PeakRecord> peaks) {
  std::vector<std::int64_t> sizes;
  for (const auto& p : peaks) sizes.push_back(p.n_sites);
  if (distinct_count(sizes) < 5) {
    throw PreconditionError("fit_finite_size: need at least 5 distinct sizes");
  }
  const auto [mn, mx] = std::minmax_element(sizes.begin(), sizes.end());
  if (static_cast<double>(*mx) < 10.0 * static_cast<double>(*mn)) {
    throw PreconditionError("fit_finite_size: sizes must span at least a factor of 10");
  }
  std::vector<double> x, y;
  for (const auto& p : peaks) {
    x.push_back(std::log(static_cast<double>(p.n_sites)));
    y.push_back(std::sqrt(p.chi_m));
  }
  ScalingFit fit = fit_line(x, y);
  fit.model = FitModel::sqrt_chi_vs_ln_n;
  const double a1 = a1_coefficient();
  fit.params["a1"] = a1;
  fit.params["sqrt_a1"] = std::sqrt(a1);
  fit.params["deviation"] = fit.slope / std::sqrt(a1) - 1.0;
  return fit;
}

ScalingFit fit_thermo_samples(std::span<const double> lambdas, std::span<const double> chis) {
  if (lambdas.size() != chis.size() || lambdas.size() < 4) {
    throw FitError("fit_thermo: need at least 4 (lambda, chi) samples");
  }
  const std::size_t n = lambdas.size();
  Eigen::VectorXd L(n), chi(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (lambdas[i] == 1.0) throw FitError("fit_thermo: lambda = 1 is not allowed");
    L(i) = std::log(1.0 / std::abs(1.0 - lambdas[i]));
    chi(i) = chis[i];
  }

  // Levenberg-Marquardt on chi = A (L + d1)^2 + d2.
  Eigen::Vector3d p(a1_coefficient(), 0.0, 0.0);
  auto residual = [&](const Eigen::Vector3d& q) {
    return ((L.array() + q(1)).square() * q(0) + q(2) - chi.array()).matrix().eval();
  };
  Eigen::VectorXd r = residual(p);
  double cost = r.squaredNorm();
  double mu = 1e-3;
  for (int iter = 0; iter < 500; ++iter) {
    Eigen::MatrixXd J(n, 3);
    J.col(0) = (L.array() + p(1)).square().matrix();
    J.col(1) = (2.0 * p(0) * (L.array() + p(1))).matrix();
    J.col(2).setOnes();
    const Eigen::Matrix3d JtJ = J.transpose() * J;
    const Eigen::Vector3d g = J.transpose() * r;
    bool improved = false;
    Eigen::Vector3d step = Eigen::Vector3d::Zero();
    for (int tries = 0; tries < 40 && !improved; ++tries) {
      Eigen::Matrix3d A = JtJ;
      A.diagonal() += mu * JtJ.diagonal().cwiseMax(1e-300);
      step = A.ldlt().solve(-g);
      const Eigen::Vector3d trial = p + step;
      const Eigen::VectorXd rt = residual(trial);
      const double ct = rt.squaredNorm();
      if (ct <= cost) {
        p = trial;
        r = rt;
        cost = ct;
        mu = std::max(mu / 10.0, 1e-15);
        improved = true;
      } else {
        mu *= 10.0;
      }
    }
    if (!improved || step.norm() <= 1e-15 * (p.norm() + 1e-15)) break;
  }
  if (!p.allFinite()) throw FitError("fit_thermo: non-finite parameters");

  const double mean = chi.mean();
  const double ss_tot = (chi.array() - mean).square().sum();
  ScalingFit fit;
  fit.model = FitModel::chi_vs_sq_log_lambda;
  fit.slope = p(0);
  fit.intercept = p(2);
  fit.r_squared = ss_tot > 0.0 ? std::clamp(1.0 - cost / ss_tot, 0.0, 1.0) : 1.0;
  fit.flagged = fit.r_squared < kFitR2Threshold;
  const double a1 = a1_coefficient();
  fit.params["A2"] = p(0);
  fit.params["d1"] = p(1);
  fit.params["d2"] = p(2);
  fit.params["a1"] = a1;
  fit.params["deviation"] = p(0) / a1 - 1.0;
  return fit;
}

void require_thermo_window(std::span<const double> lambdas) {
  if (lambdas.size() < 4) throw FitError("fit_thermo: need at least 4 lambdas");
  const bool below = std::all_of(lambdas.begin(), lambdas.end(),
                                 [](double l) { return l > 0.9 && l < 1.0; });
  const bool above = std::all_of(lambdas.begin(), lambdas.end(),
                                 [](double l) { return l > 1.0 && l < 1.1; });
  if (!below && !above) {
    throw FitError("fit_thermo: lambdas must all lie in (0.9, 1) or all in (1, 1.1)");
  }
}

ScalingFit fit_thermo(std::span<const double> lambdas) {
  require_thermo_window(lambdas);
  std::vector<double> chis(lambdas.size());
  parallel_for(lambdas.size(), [&](std::size_t i) { chis[i] = rfs_thermo(lambdas[i]).chi; });
  return fit_thermo_samples(lambdas, chis);
}

CollapseSamples collapse_samples(std::span<const std::int64_t> sizes,
                                 std::pair<double, double> window, int samples) {
  if (distinct_count(sizes) < 3 || distinct_count(sizes) != sizes.size()) {
    throw PreconditionError("data_collapse: need at least 3 distinct sizes");
  }
  const auto [lo, hi] = window;
  if (!(lo < hi) || samples < 4) {
    throw PreconditionError("data_collapse: window needs lo < hi and at least 4 samples");
  }
  for (auto n : sizes) validate({n, 1.0});

  CollapseSamples out;
  out.peaks = find_peaks(sizes);
  out.offsets.assign(sizes.size(), std::vector<std::pair<double, double>>(samples));
  const std::size_t per = static_cast<std::size_t>(samples);
  parallel_for(sizes.size() * per, [&](std::size_t idx) {
    const std::size_t s = idx / per;
    const std::size_t j = idx % per;
    const PeakRecord& peak = out.peaks[s];
    const double n = static_cast<double>(peak.n_sites);
    const double offset = (lo + (hi - lo) * static_cast<double>(j) / (samples - 1)) / n;
    const double chi = chi_at(peak.n_sites, peak.lambda_m + offset);
    out.offsets[s][j] = {offset, std::sqrt(peak.chi_m) - std::sqrt(chi)};
  });
  return out;
}

CollapseCurve rescale(const CollapseSamples& samples, double nu) {
  CollapseCurve curve;
  curve.nu = nu;
  for (std::size_t s = 0; s < samples.peaks.size(); ++s) {
    const auto n = samples.peaks[s].n_sites;
    const double factor = std::pow(static_cast<double>(n), nu);
    for (const auto& [offset, y] : samples.offsets[s]) {
      curve.points.push_back({factor * offset, y, n});
    }
  }
  return curve;
}

CollapseCurve data_collapse(std::span<const std::int64_t> sizes, double nu,
                            std::pair<double, double> window) {
  return rescale(collapse_samples(sizes, window), nu);
}

double collapse_quality(const CollapseCurve& curve) {
  // Group by size, keeping first-appearance order.
  std::vector<std::int64_t> order;
  std::vector<std::vector<double>> xs, ys;
  for (const auto& p : curve.points) {
    auto it = std::find(order.begin(), order.end(), p.n_sites);
    std::size_t g = static_cast<std::size_t>(it - order.begin());
    if (it == order.end()) {
      order.push_back(p.n_sites);
      xs.emplace_back();
      ys.emplace_back();
    }
    xs[g].push_back(p.x);
    ys[g].push_back(p.y);
  }
  if (order.size() < 2) return 0.0;

  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  for (auto& x : xs) {
    if (x.size() < 4) throw PreconditionError("collapse_quality: need >= 4 points per size");
    if (!std::is_sorted(x.begin(), x.end())) {
      throw PreconditionError("collapse_quality: x must ascend within each size");
    }
    lo = std::max(lo, x.front());
    hi = std::min(hi, x.back());
  }
  if (!(lo < hi)) throw PreconditionError("collapse_quality: empty overlap window");

  using Pchip = boost::math::interpolators::pchip<std::vector<double>>;
  std::vector<Pchip> interp;
  for (std::size_t g = 0; g < order.size(); ++g) {
    interp.emplace_back(std::vector<double>(xs[g]), std::vector<double>(ys[g]));
  }

  constexpr int kGrid = 201;
  const std::size_t m = interp.size();
  std::vector<double> ymin(m, std::numeric_limits<double>::infinity());
  std::vector<double> ymax(m, -std::numeric_limits<double>::infinity());
  std::vector<double> values(m);
  double spread = 0.0;
  for (int i = 0; i < kGrid; ++i) {
    const double x = lo + (hi - lo) * i / (kGrid - 1);
    for (std::size_t g = 0; g < m; ++g) {
      values[g] = interp[g](x);
      ymin[g] = std::min(ymin[g], values[g]);
      ymax[g] = std::max(ymax[g], values[g]);
    }
    double pair_sum = 0.0;
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = a + 1; b < m; ++b) pair_sum += std::abs(values[a] - values[b]);
    }
    spread += pair_sum / static_cast<double>(m * (m - 1) / 2);
  }
  spread /= kGrid;

  double range = 0.0;
  for (std::size_t g = 0; g < m; ++g) range += ymax[g] - ymin[g];
  range /= static_cast<double>(m);
  if (!(range > 0.0)) {
    if (spread == 0.0) return 0.0;
    throw PreconditionError("collapse_quality: curves are flat on the overlap window");
  }
  return spread / range;
}

ExponentScan optimal_collapse_exponent(const CollapseSamples& samples,
                                       std::pair<double, double> nu_bracket, double tolerance) {
  const auto best = golden_section_minimize(
      [&](double nu) { return collapse_quality(rescale(samples, nu)); }, nu_bracket.first,
      nu_bracket.second, tolerance);
  return {best.x, best.fx};
}

}  // namespace tfim
