#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tfim {

/// Argument outside the mathematical domain of an operation (odd N, k >= 1, ...).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// A caller-side precondition failed (too few sizes, empty overlap window, ...).
class PreconditionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Base for failures of the numerics themselves.
class NumericError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A 2x2 block of the reduced density matrix is singular; the closed-form
/// susceptibility is undefined there and the fidelity oracle must be used.
class SingularBlockError : public NumericError {
public:
  using NumericError::NumericError;
};

/// An internal identity failed beyond tolerance (positivity, two-route agreement).
class ConsistencyError : public NumericError {
public:
  using NumericError::NumericError;
};

class FitError : public NumericError {
public:
  using NumericError::NumericError;
};

/// Peak search failed. Carries the coarse scan (lambda, chi) that was inspected.
class SearchError : public NumericError {
public:
  SearchError(const std::string& what, std::vector<std::pair<double, double>> scan)
      : NumericError(what), scan_(std::move(scan)) {}

  const std::vector<std::pair<double, double>>& scan() const noexcept { return scan_; }

private:
  std::vector<std::pair<double, double>> scan_;
};

}  // namespace tfim
