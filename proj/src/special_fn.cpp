#include "gcap/special_fn.hpp"

#include <cmath>
#include <numbers>

#include "gcap/quadrature.hpp"

namespace gcap {

namespace {
constexpr double kOwenAbsTol = 1e-12;
}

// glibc's erf is accurate to about one ulp; the tests hold it to 1e-15 relative
// against an MPFR evaluation.
double erf(double x) {
  require_finite(x, "erf");
  return std::erf(x);
}

double std_normal_pdf(double x) {
  require_finite(x, "std_normal_pdf");
  return std::exp(-0.5 * x * x) * (0.5 * std::numbers::inv_sqrtpi * std::numbers::sqrt2);
}

double std_normal_cdf(double x) {
  require_finite(x, "std_normal_cdf");
  // erfc keeps full relative accuracy in the lower tail.
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double owen_t(double h, double k) {
  require_finite(h, "owen_t");
  require_finite(k, "owen_t");
  if (k == 0.0) return 0.0;
  const double hh = 0.5 * h * h;
  const auto integrand = [hh](double s) {
    const double q = 1.0 + s * s;
    return std::exp(-hh * q) / q;
  };
  const double upper = std::abs(k);
  const auto r = integrate_interval(integrand, 0.0, upper, AccuracySpec{kOwenAbsTol * 2.0 * std::numbers::pi, 1e-15});
  const double t = r.value / (2.0 * std::numbers::pi);
  return k < 0.0 ? -t : t;
}

double erf_product_integral_closed(double p, double q) {
  require_finite(p, "erf_product_integral_closed");
  require_finite(q, "erf_product_integral_closed");
  if (p == 0.0) throw DomainError("erf_product_integral_closed: p must be nonzero");
  return 2.0 / (std::sqrt(std::numbers::pi) * p) * std::atan(q / (p * std::sqrt(1.0 + p * p + q * q)));
}

double erf_product_integral_numeric(double p, double q, const AccuracySpec& acc) {
  require_finite(p, "erf_product_integral_numeric");
  require_finite(q, "erf_product_integral_numeric");
  if (p == 0.0) throw DomainError("erf_product_integral_numeric: p must be nonzero");
  acc.validate();
  const double p2 = p * p;
  const auto integrand = [p2, q](double t) { return std::exp(-p2 * t * t) * std::erf(t) * std::erf(q * t); };
  return integrate_real_line(integrand, acc).value;
}

}  // namespace gcap
