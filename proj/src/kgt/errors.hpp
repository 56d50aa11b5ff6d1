#pragma once

#include <stdexcept>
#include <string>

namespace kgt {

/// Series evaluation hit max_terms before reaching the requested tolerance.
class TruncationFailure : public std::runtime_error {
public:
  TruncationFailure(const std::string& what, double attained_residual, int terms_used)
      : std::runtime_error(what),
        attained_residual_(attained_residual),
        terms_used_(terms_used) {}

  double attained_residual() const noexcept { return attained_residual_; }
  int terms_used() const noexcept { return terms_used_; }

private:
  double attained_residual_;
  int terms_used_;
};

/// Point lies inside the front-guard window where the term-wise time
/// derivative is not evaluated.
class FrontGuardError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// |rho| is monotone over the search window; no wavefront maximum exists.
class NoPeakError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// The series does not cover enough beat periods for a decay fit.
class InsufficientPeriodsError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Oscillation amplitude is negligible relative to the stationary value.
class FlatSignalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace kgt
