#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tfim {

/// Analytic coefficient of (ln N)^2 in the peak susceptibility,
/// (27 pi^4 - 144 pi^2 - 1024) / [pi^2 (9 pi^2 + 32)(3 pi^2 - 32) + 4096].
double a1_coefficient() noexcept;

struct PeakRecord {
  std::int64_t n_sites = 0;
  double lambda_m = 0.0;
  double chi_m = 0.0;
};

struct PeakScan {
  std::vector<std::pair<double, double>> samples;  // (lambda, chi), ascending lambda
  // chi rises strictly up to the maximum and falls strictly after it.
  bool unimodal() const noexcept;
  std::size_t argmax() const noexcept;
};

inline constexpr std::pair<double, double> kDefaultPeakBracket{0.8, 1.1};
inline constexpr int kCoarseScanPoints = 41;
inline constexpr double kPeakBracketWidth = 1e-8;
inline constexpr double kPeakCertificateStep = 1e-6;

/// Uniform scan of chi(., N) over the bracket, endpoints included.
PeakScan coarse_scan(std::int64_t n_sites, std::pair<double, double> bracket,
                     int points = kCoarseScanPoints);

/// Location and height of the finite-N susceptibility maximum: coarse scan
/// then golden-section refinement. Throws SearchError if the scan maximum
/// sits on the bracket edge or the result fails the +-1e-6 certificate.
PeakRecord find_peak(std::int64_t n_sites,
                     std::pair<double, double> bracket = kDefaultPeakBracket);

/// find_peak for each size, in parallel; output order follows `sizes`.
std::vector<PeakRecord> find_peaks(std::span<const std::int64_t> sizes,
                                   std::pair<double, double> bracket = kDefaultPeakBracket);

enum class FitModel { sqrt_chi_vs_ln_n, chi_vs_sq_log_lambda, collapse, linear };

std::string_view to_string(FitModel model) noexcept;

inline constexpr double kFitR2Threshold = 0.99;

struct ScalingFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  FitModel model = FitModel::linear;
  std::map<std::string, double> params;
  bool flagged = false;  // r_squared < kFitR2Threshold
};

/// Ordinary least squares y = slope * x + intercept. Two points give the
/// interpolating line. Throws FitError for fewer than two points or a
/// degenerate design (all x equal).
ScalingFit fit_line(std::span<const double> x, std::span<const double> y);

/// sqrt(chi_m) against ln N. params: sqrt_a1, a1, deviation (slope / sqrt(A1) - 1).
/// Requires >= 5 distinct sizes spanning at least a factor of 10.
ScalingFit fit_finite_size(std::span<const PeakRecord> peaks);

/// Nonlinear least squares of chi = A2 (L + d1)^2 + d2 with L = ln 1/|1 - lambda|,
/// started at (A1, 0, 0). slope = A2, intercept = d2; params: A2, d1, d2, a1, deviation.
ScalingFit fit_thermo_samples(std::span<const double> lambdas, std::span<const double> chis);

/// Throws FitError unless there are >= 4 lambdas, all in (0.9, 1) or all in (1, 1.1).
void require_thermo_window(std::span<const double> lambdas);

/// fit_thermo_samples on thermodynamic-limit susceptibilities. All lambdas
/// must lie on one side of 1, inside (0.9, 1) or (1, 1.1), at least 4 of them.
ScalingFit fit_thermo(std::span<const double> lambdas);

struct CollapsePoint {
  double x = 0.0;  // N^nu (lambda - lambda_m)
  double y = 0.0;  // sqrt(chi_m) - sqrt(chi(lambda))
  std::int64_t n_sites = 0;
};

struct CollapseCurve {
  std::vector<CollapsePoint> points;  // grouped by size, ascending x within a size
  double nu = 1.0;
};

/// Sample window around each peak, lambda - lambda_m in [lo / N, hi / N].
inline constexpr std::pair<double, double> kDefaultCollapseWindow{-10.0, 10.0};
inline constexpr int kCollapseSamples = 81;

/// Raw samples (lambda - lambda_m, y) per size; independent of nu.
struct CollapseSamples {
  std::vector<PeakRecord> peaks;
  std::vector<std::vector<std::pair<double, double>>> offsets;  // per size
};

CollapseSamples collapse_samples(std::span<const std::int64_t> sizes,
                                 std::pair<double, double> window = kDefaultCollapseWindow,
                                 int samples = kCollapseSamples);

CollapseCurve rescale(const CollapseSamples& samples, double nu);

/// Curves y = sqrt(chi_m) - sqrt(chi(lambda)) against N^nu (lambda - lambda_m).
/// Requires >= 3 distinct even sizes.
CollapseCurve data_collapse(std::span<const std::int64_t> sizes, double nu,
                            std::pair<double, double> window = kDefaultCollapseWindow);

/// Mean, over a uniform x grid on the common x range of all sizes, of the
/// mean pairwise |y_i - y_j| between sizes; divided by the mean per-size
/// y-range on that grid. Curves are interpolated with monotone piecewise
/// cubics. Zero for a single size. Throws PreconditionError when the x
/// ranges do not overlap.
double collapse_quality(const CollapseCurve& curve);

struct ExponentScan {
  double nu = 0.0;
  double quality = 0.0;
};

/// Golden-section minimum of collapse_quality over nu in `nu_bracket`.
ExponentScan optimal_collapse_exponent(const CollapseSamples& samples,
                                       std::pair<double, double> nu_bracket = {0.5, 2.0},
                                       double tolerance = 1e-4);

}  // namespace tfim
