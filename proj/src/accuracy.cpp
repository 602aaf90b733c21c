#include "gcap/accuracy.hpp"

#include <algorithm>
#include <cmath>

namespace gcap {

void AccuracySpec::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || !std::isfinite(abs_tol) || !std::isfinite(rel_tol)) {
    throw DomainError("AccuracySpec: tolerances must be positive and finite");
  }
}

double AccuracySpec::target(double value) const { return std::max(abs_tol, rel_tol * std::abs(value)); }

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw DomainError(std::string(what) + ": argument must be finite");
}

}  // namespace gcap
