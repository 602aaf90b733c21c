#pragma once

#include <stdexcept>
#include <string>

namespace gcap {

/// Absolute and relative tolerance pair used by every numeric routine.
/// A result is accepted once its error bound is at most max(abs_tol, rel_tol * |value|).
struct AccuracySpec {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;

  /// Throws DomainError unless both tolerances are positive and finite.
  void validate() const;

  [[nodiscard]] double target(double value) const;
};

inline constexpr AccuracySpec kDefaultAccuracy{1e-10, 1e-10};

/// Bad argument: non-finite input, sign constraint violated, or a pole.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A numeric routine ran out of its evaluation budget. The best value reached
/// and its error estimate travel with the exception.
class AccuracyError : public std::runtime_error {
 public:
  AccuracyError(const std::string& what, double best_value, double error_estimate)
      : std::runtime_error(what), best_value_(best_value), error_estimate_(error_estimate) {}

  double best_value() const noexcept { return best_value_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double best_value_;
  double error_estimate_;
};

/// Throws DomainError naming `what` if `x` is NaN or infinite.
void require_finite(double x, const char* what);

}  // namespace gcap
