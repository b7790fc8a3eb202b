#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "tfim/errors.hpp"
#include "tfim/rfs.hpp"
#include "tfim/scaling.hpp"

using namespace tfim;

namespace {

CollapseCurve fabricated(const std::vector<std::pair<std::int64_t, double>>& size_offsets,
                         double x_lo, double x_hi) {
  CollapseCurve c;
  for (auto [n, off] : size_offsets) {
    for (int i = 0; i <= 20; ++i) {
      const double x = x_lo + (x_hi - x_lo) * i / 20.0;
      c.points.push_back({x, x + off, n});
    }
  }
  return c;
}

}  // namespace

TEST_CASE("A1 coefficient") {
  constexpr double pi = std::numbers::pi;
  const double a1 = a1_coefficient();
  CHECK(a1 == doctest::Approx(0.1485).epsilon(1e-3));
  CHECK(std::sqrt(a1) == doctest::Approx(0.385374).epsilon(1e-5));
  // Independent route: chi ~ c (ln 1/|1-lambda|)^2 with c built from the
  // critical values and log coefficients of the correlators.
  const double s = 2 / pi, x = 2 / pi, y = -2 / (3 * pi), z = 16 / (3 * pi * pi);
  const double ds = -1 / pi, dxy = 1 / pi;
  const double dz = 2 * s * ds - dxy * y - x * dxy;
  const double up = (1 + 2 * s + z) / 4, um = (1 - 2 * s + z) / 4;
  const double zm = (x - y) / 4, w = (1 - z) / 4, zp = (x + y) / 4;
  const double dup = (2 * ds + dz) / 4, dum = (-2 * ds + dz) / 4, dw = -dz / 4;
  const double dzp = 2 * dxy / 4;
  // Only the log-divergent pieces survive at order L^2: d z- is finite.
  const double det1 = up * um - zm * zm, det2 = w * w - zp * zp;
  const double ddet1 = dup * um + up * dum, ddet2 = 2 * w * dw - 2 * zp * dzp;
  const double c1 = ((dup + dum) * (dup + dum) - 4 * dup * dum + ddet1 * ddet1 / det1) / (4 * (up + um));
  const double c2 = (4 * dw * dw - 4 * (dw * dw - dzp * dzp) + ddet2 * ddet2 / det2) / (4 * 2 * w);
  CHECK(c1 + c2 == doctest::Approx(a1).epsilon(1e-12));
}

TEST_CASE("line fit") {
  SUBCASE("two points interpolate exactly") {
    const std::vector<double> x{1.0, 3.0}, y{2.0, 6.0};
    const auto f = fit_line(x, y);
    CHECK(f.slope == doctest::Approx(2.0));
    CHECK(f.intercept == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(f.r_squared == doctest::Approx(1.0));
    CHECK_FALSE(f.flagged);
  }
  SUBCASE("degenerate designs") {
    const std::vector<double> same{2.0, 2.0, 2.0}, y{1.0, 2.0, 3.0};
    CHECK_THROWS_AS(fit_line(same, y), FitError);
    const std::vector<double> one{1.0}, y1{1.0};
    CHECK_THROWS_AS(fit_line(one, y1), FitError);
  }
  SUBCASE("poor fits are flagged") {
    const std::vector<double> x{0, 1, 2, 3, 4}, y{0, 5, -3, 4, 1};
    CHECK(fit_line(x, y).flagged);
  }
}

TEST_CASE("thermodynamic fit recovers synthetic parameters") {
  std::vector<double> lambdas, chis;
  const double a = 0.2, d1 = 0.7, d2 = -0.4;
  for (int k = 2; k <= 7; ++k) {
    const double l = 1 - std::pow(10.0, -k) * (k % 2 ? 1.0 : 3.0);
    lambdas.push_back(l);
    const double L = std::log(1 / (1 - l));
    chis.push_back(a * (L + d1) * (L + d1) + d2);
  }
  const auto f = fit_thermo_samples(lambdas, chis);
  CHECK(f.params.at("A2") == doctest::Approx(a).epsilon(1e-8));
  CHECK(f.params.at("d1") == doctest::Approx(d1).epsilon(1e-8));
  CHECK(f.params.at("d2") == doctest::Approx(d2).epsilon(1e-8));
  CHECK(f.model == FitModel::chi_vs_sq_log_lambda);
}

TEST_CASE("thermodynamic fit window") {
  const std::vector<double> mixed{0.99, 0.999, 1.001, 1.01};
  CHECK_THROWS_AS(require_thermo_window(mixed), FitError);
  const std::vector<double> few{0.99, 0.999, 0.9999};
  CHECK_THROWS_AS(fit_thermo(few), FitError);
  const std::vector<double> far{0.5, 0.99, 0.999, 0.9999};
  CHECK_THROWS_AS(fit_thermo(far), FitError);
}

TEST_CASE("both sides of the transition give A2 close to A1") {
  std::vector<double> below, above;
  for (int k = 2; k <= 5; ++k) {
    below.push_back(1 - std::pow(10.0, -k));
    above.push_back(1 + std::pow(10.0, -k));
  }
  const double a1 = a1_coefficient();
  const auto fb = fit_thermo(below);
  const auto fa = fit_thermo(above);
  CHECK(std::abs(fb.slope / a1 - 1) <= 0.05);
  CHECK(std::abs(fa.slope / a1 - 1) <= 0.05);
  CHECK(std::abs(fb.slope / fa.slope - 1) <= 0.05);
}

TEST_CASE("peak search") {
  SUBCASE("coarse scan is unimodal") {
    for (std::int64_t n : {12, 52, 252, 4096}) {
      CAPTURE(n);
      CHECK(coarse_scan(n, kDefaultPeakBracket).unimodal());
    }
  }
  SUBCASE("certificate and drift toward criticality") {
    const auto p12 = find_peak(12);
    const auto p4096 = find_peak(4096);
    CHECK(std::abs(1 - p4096.lambda_m) < std::abs(1 - p12.lambda_m));
    for (const auto& p : {p12, p4096}) {
      CHECK(p.chi_m >= rfs_finite({p.n_sites, p.lambda_m - kPeakCertificateStep}).chi);
      CHECK(p.chi_m >= rfs_finite({p.n_sites, p.lambda_m + kPeakCertificateStep}).chi);
    }
  }
  SUBCASE("bracket without an interior maximum") {
    try {
      find_peak(64, {1.2, 1.5});
      FAIL("expected SearchError");
    } catch (const SearchError& e) {
      CHECK(e.scan().size() == static_cast<std::size_t>(kCoarseScanPoints));
    }
  }
}

TEST_CASE("peaks sharpen and move toward the critical point") {
  const std::vector<std::int64_t> sizes{12, 52, 252, 1024, 4096};
  const auto peaks = find_peaks(sizes);
  REQUIRE(peaks.size() == sizes.size());
  for (std::size_t i = 1; i < peaks.size(); ++i) {
    CHECK(peaks[i].n_sites == sizes[i]);
    CHECK(peaks[i].chi_m > peaks[i - 1].chi_m);
    CHECK(std::abs(1 - peaks[i].lambda_m) < std::abs(1 - peaks[i - 1].lambda_m));
    // Curvature at the peak, scaled by the height, grows with N.
    auto rel_curv = [](const PeakRecord& p) {
      const double h = 0.1 / static_cast<double>(p.n_sites);
      const double c = rfs_finite({p.n_sites, p.lambda_m + h}).chi - 2 * p.chi_m +
                       rfs_finite({p.n_sites, p.lambda_m - h}).chi;
      return -c / (h * h) / p.chi_m;
    };
    CHECK(rel_curv(peaks[i]) > rel_curv(peaks[i - 1]));
  }
}

TEST_CASE("finite-size fit preconditions") {
  std::vector<PeakRecord> four{{512, 1, 1}, {1024, 1, 2}, {2048, 1, 3}, {8192, 1, 4}};
  CHECK_THROWS_AS(fit_finite_size(four), PreconditionError);
  std::vector<PeakRecord> narrow{{512, 1, 1}, {600, 1, 2}, {700, 1, 3}, {800, 1, 4}, {900, 1, 5}};
  CHECK_THROWS_AS(fit_finite_size(narrow), PreconditionError);
}

TEST_CASE("collapse quality on fabricated curves") {
  CHECK(collapse_quality(fabricated({{8, 0.0}, {16, 0.0}, {32, 0.0}}, 0, 1)) ==
        doctest::Approx(0.0));
  CHECK(collapse_quality(fabricated({{8, 0.0}, {16, 0.1}}, 0, 1)) == doctest::Approx(0.1));
  CHECK(collapse_quality(fabricated({{8, 0.0}}, 0, 1)) == 0.0);
  auto disjoint = fabricated({{8, 0.0}}, 0, 1);
  const auto other = fabricated({{16, 0.0}}, 2, 3);
  disjoint.points.insert(disjoint.points.end(), other.points.begin(), other.points.end());
  CHECK_THROWS_AS(collapse_quality(disjoint), PreconditionError);
}

TEST_CASE("collapse preconditions") {
  const std::vector<std::int64_t> two{512, 1024};
  CHECK_THROWS_AS(data_collapse(two, 1.0), PreconditionError);
  const std::vector<std::int64_t> dup{512, 512, 1024};
  CHECK_THROWS_AS(data_collapse(dup, 1.0), PreconditionError);
}

TEST_CASE("collapse prefers nu = 1") {
  const std::vector<std::int64_t> sizes{512, 1024, 2048, 4096};
  const auto samples = collapse_samples(sizes);
  const double q1 = collapse_quality(rescale(samples, 1.0));
  CHECK(q1 <= 0.05);
  for (double nu : {0.5, 0.75, 1.5, 2.0}) {
    CAPTURE(nu);
    CHECK(collapse_quality(rescale(samples, nu)) > q1);
  }
  const auto best = optimal_collapse_exponent(samples);
  CHECK(best.nu >= 0.9);
  CHECK(best.nu <= 1.1);
  CHECK(best.quality <= q1);
}

TEST_CASE("collapsed curve grows logarithmically in its tails") {
  const std::vector<std::int64_t> sizes{512, 1024, 4096};
  const auto curve = data_collapse(sizes, 1.0);
  const auto [lo, hi] = kDefaultCollapseWindow;
  const double third = (hi - lo) / 3;
  for (int side : {-1, 1}) {
    CAPTURE(side);
    std::vector<double> lx, y;
    for (const auto& p : curve.points) {
      if (p.n_sites != 4096) continue;
      if ((side > 0 && p.x >= hi - third) || (side < 0 && p.x <= lo + third)) {
        lx.push_back(std::log(std::abs(p.x)));
        y.push_back(p.y);
      }
    }
    REQUIRE(lx.size() >= 5);
    const auto f = fit_line(lx, y);
    CHECK(f.r_squared >= 0.99);
    CHECK(f.slope > 0.0);
  }
}
