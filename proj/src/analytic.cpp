#include "gcap/analytic.hpp"

#include <cmath>
#include <numbers>

#include "gcap/special_fn.hpp"

namespace gcap {

namespace {

using std::numbers::pi;

void check_case_signs(double a1, double b1, double c1, CaseSign sign, const char* who) {
  require_finite(a1, who);
  require_finite(b1, who);
  require_finite(c1, who);
  const bool ok = sign == CaseSign::First ? (a1 > 0.0 && b1 > 0.0 && c1 <= 0.0)
                                          : (a1 < 0.0 && b1 < 0.0 && c1 >= 0.0);
  if (!ok) throw DomainError(std::string(who) + ": coordinates do not match the requested sign pattern");
}

// atan(a1 b1 / (c1 r)); at c1 == 0 the one-sided limit, -pi/2 approached from c1 < 0
// in the first pattern and +pi/2 from c1 > 0 in the second (a1 b1 > 0 in both).
double bracket_angle(double a1, double b1, double c1, CaseSign sign) {
  if (c1 == 0.0) return sign == CaseSign::First ? -0.5 * pi : 0.5 * pi;
  const double r = std::sqrt(a1 * a1 + b1 * b1 + c1 * c1);
  return std::atan(a1 * b1 / (c1 * r));
}

// Signed mass of the right triangle O, F, F + s e where F is the foot of the perpendicular
// from the origin to a line at distance h; odd in s.
double right_triangle_mass(double h, double s) {
  if (s == 0.0) return 0.0;
  const double k = std::abs(s) / h;
  const double m = std::atan(k) / (2.0 * pi) - owen_t(h, k);
  return s > 0.0 ? m : -m;
}

// Mass of triangle (O, p, q), unsigned.
double origin_triangle_mass(const Point2& p, const Point2& q) {
  const double dx = q.x - p.x, dy = q.y - p.y;
  const double len = std::hypot(dx, dy);
  if (len == 0.0) return 0.0;
  const double ex = dx / len, ey = dy / len;
  const double h = std::abs(p.x * ey - p.y * ex);
  if (h == 0.0) return 0.0;
  const double sp = p.x * ex + p.y * ey;
  const double sq = q.x * ex + q.y * ey;
  return std::abs(right_triangle_mass(h, sq) - right_triangle_mass(h, sp));
}

}  // namespace

double arcsec(double x) {
  require_finite(x, "arcsec");
  if (std::abs(x) < 1.0) throw DomainError("arcsec: |x| must be at least 1");
  return std::acos(1.0 / x);
}

PaperConstants constants() {
  PaperConstants c{};
  c.theta = 3.0 - 6.0 * arcsec(3.0) / pi;
  c.one_minus_theta = -2.0 + 6.0 * arcsec(3.0) / pi;
  c.expected_content_2d = -0.5 + 1.5 * arcsec(3.0) / pi;
  c.gaussian_volume_3d = -0.4 + arcsec(4.0) / pi;
  c.median_variance_1d = 1.0 - std::numbers::sqrt3 / pi;
  c.expected_area_quad = std::numbers::sqrt3;
  c.expected_area_triangle = 0.5 * std::numbers::sqrt3;
  const double sqrt_pi = std::sqrt(pi);
  c.expected_perimeter_quad = (3.0 + c.theta) * sqrt_pi;
  c.expected_perimeter_triangle = 3.0 * sqrt_pi;
  return c;
}

double case_probability(double a1, double b1, double c1, CaseSign sign) {
  check_case_signs(a1, b1, c1, sign, "case_probability");
  const double term = bracket_angle(a1, b1, c1, sign) / (2.0 * pi);
  return sign == CaseSign::First ? 0.25 + term : 0.25 - term;
}

namespace detail {

double case_probability_owen(double a1, double b1, double c1, CaseSign sign, const AccuracySpec& acc) {
  check_case_signs(a1, b1, c1, sign, "case_probability_owen");
  if (c1 == 0.0) return case_probability(a1, b1, c1, sign);
  // Both sign patterns reduce to the same Owen-T integral; the erf term that
  // distinguishes them is odd in a2 and integrates to zero.
  const double z = std::numbers::sqrt2 * c1 / a1;
  const double w = b1 / c1;
  const auto integrand = [z, w](double t) {
    const double g = std::exp(-t * t);
    return g == 0.0 ? 0.0 : g * owen_t(t * z, w);
  };
  return 0.25 + integrate_real_line(integrand, acc).value / std::sqrt(pi);
}

}  // namespace detail

double capture_integrand(double a1, double b1, double c1, double xi, CaptureBranch branch) {
  const CaseSign sign = branch == CaptureBranch::Phi ? CaseSign::First : CaseSign::Second;
  check_case_signs(a1, b1, c1, sign, "capture_integrand");
  require_finite(xi, "capture_integrand");
  const double angle = bracket_angle(a1, b1, c1, sign);
  const double bracket = branch == CaptureBranch::Phi ? pi + 2.0 * angle : pi - 2.0 * angle;
  const double da = a1 + xi, db = b1 + xi, dc = c1 + xi;
  return std::exp(-0.5 * (da * da + db * db + dc * dc)) * bracket;
}

CaptureResult capture_probability(double xi, const AccuracySpec& acc, const CubatureOptions& opts) {
  require_finite(xi, "capture_probability");
  const double prefactor = 3.0 / std::pow(2.0 * pi, 2.5);

  const Integrand3 phi = [xi](double a, double b, double c) {
    return capture_integrand(a, b, c, xi, CaptureBranch::Phi);
  };
  const Integrand3 psi = [xi](double a, double b, double c) {
    return capture_integrand(a, b, c, xi, CaptureBranch::Psi);
  };
  const Octant3 phi_octant{{Sign::Positive, Sign::Positive, Sign::Negative}};
  const Octant3 psi_octant{{Sign::Negative, Sign::Negative, Sign::Positive}};

  CubatureResult rp, rs;
  try {
    rp = integrate_octant3(phi, phi_octant, acc, opts);
    rs = integrate_octant3(psi, psi_octant, acc, opts);
  } catch (const AccuracyError& e) {
    throw AccuracyError(e.what(), prefactor * e.best_value(), prefactor * e.error_estimate());
  }
  return {prefactor * (rp.value + rs.value), prefactor * (rp.error_estimate + rs.error_estimate),
          rp.evaluations + rs.evaluations};
}

CaptureResult capture_probability_at(double xi, double eta, const AccuracySpec& acc, const CubatureOptions& opts) {
  require_finite(xi, "capture_probability_at");
  require_finite(eta, "capture_probability_at");
  return capture_probability(std::hypot(xi, eta), acc, opts);
}

double triangle_gaussian_content(const Point2& a, const Point2& b, const Point2& c) {
  const Point2 origin{0.0, 0.0};
  const Point2 verts[3] = {a, b, c};
  double signed_total = 0.0;
  for (int i = 0; i < 3; ++i) {
    const Point2& p = verts[i];
    const Point2& q = verts[(i + 1) % 3];
    const double o = orient2d(origin, p, q);
    if (o == 0.0) continue;
    const double m = origin_triangle_mass(p, q);
    signed_total += o > 0.0 ? m : -m;
  }
  return std::abs(signed_total);
}

double median_density_1d(double x) {
  require_finite(x, "median_density_1d");
  const double e = std::erf(x / std::numbers::sqrt2);
  return 3.0 / (2.0 * std::sqrt(2.0 * pi)) * std::exp(-0.5 * x * x) * (1.0 - e * e);
}

double median_reference_density_1d(double x) {
  require_finite(x, "median_reference_density_1d");
  const double v = 1.0 - std::numbers::sqrt3 / pi;
  return std::exp(-0.5 * x * x / v) / std::sqrt(2.0 * pi * v);
}

DensityGap median_density_gap(double lo, double hi, int points) {
  if (points < 2 || !(hi > lo)) throw DomainError("median_density_gap: need hi > lo and at least two points");
  DensityGap gap{0.0, lo};
  for (int i = 0; i < points; ++i) {
    const double x = lo + (hi - lo) * i / (points - 1);
    const double d = std::abs(median_density_1d(x) - median_reference_density_1d(x));
    if (d > gap.sup_norm) gap = {d, x};
  }
  return gap;
}

}  // namespace gcap
