#pragma once

#include <cmath>
#include <utility>

namespace tfim {

/// Neumaier-compensated running sum.
class CompensatedSum {
public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  void add(const CompensatedSum& other) noexcept {
    add(other.sum_);
    add(other.comp_);
  }

  double value() const noexcept { return sum_ + comp_; }

private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

struct GoldenResult {
  double x;
  double fx;
  double lo;  // final bracket
  double hi;
};

/// Golden-section search for the maximum of a unimodal f on [lo, hi];
/// stops once the bracket is no wider than `width`.
template <class F>
GoldenResult golden_section_maximize(F&& f, double lo, double hi, double width) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  while (hi - lo > width) {
    if (fc >= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
    }
  }
  const double x = 0.5 * (lo + hi);
  return {x, f(x), lo, hi};
}

template <class F>
GoldenResult golden_section_minimize(F&& f, double lo, double hi, double width) {
  auto r = golden_section_maximize([&](double x) { return -f(x); }, lo, hi, width);
  r.fx = -r.fx;
  return r;
}

}  // namespace tfim
