#pragma once

#include <array>

#include "gcap/accuracy.hpp"
#include "gcap/geometry.hpp"
#include "gcap/quadrature.hpp"

namespace gcap {

/// Closed-form constants for Gaussian triangles, tetrahedra and quadrilaterals.
struct PaperConstants {
  /// Probability that four Gaussian points in the plane are in convex position.
  double theta;
  double one_minus_theta;
  /// Probability that a Gaussian point falls inside a Gaussian triangle, (1 - theta) / 4.
  double expected_content_2d;
  /// Tetrahedron analogue in R^3.
  double gaussian_volume_3d;
  /// Variance of the median of three standard normals.
  double median_variance_1d;
  double expected_area_quad;
  double expected_perimeter_quad;
  double expected_area_triangle;
  double expected_perimeter_triangle;
};

PaperConstants constants();

/// arcsec(x) = arccos(1/x), |x| >= 1.
double arcsec(double x);

/// The two sign patterns of (a1, b1, c1) contributing to capture at the origin.
///   First:  a1 > 0, b1 > 0, c1 < 0   (integrated as phi)
///   Second: a1 < 0, b1 < 0, c1 > 0   (integrated as psi)
enum class CaseSign { First, Second };

/// Conditional capture mass given the first coordinates:
/// 1/4 +- atan(a1 b1 / (c1 sqrt(a1^2 + b1^2 + c1^2))) / (2 pi), + for First and - for Second.
/// c1 == 0 returns the one-sided limit. Throws DomainError if the signs do not match `sign`.
double case_probability(double a1, double b1, double c1, CaseSign sign);

namespace detail {
/// Same quantity via the unsimplified route
/// 1/4 + (1/sqrt(pi)) int exp(-t^2) T(t z, w) dt, z = sqrt(2) c1 / a1, w = b1 / c1.
/// Only used to cross-check the arctan form.
double case_probability_owen(double a1, double b1, double c1, CaseSign sign,
                             const AccuracySpec& acc = kDefaultAccuracy);
}  // namespace detail

enum class CaptureBranch { Phi, Psi };

/// exp(-((a1+xi)^2 + (b1+xi)^2 + (c1+xi)^2) / 2) * [pi +- 2 atan(a1 b1 / (c1 r))].
/// On the c1 = 0 face the bracket takes its one-sided limit, which is 0 for both branches.
double capture_integrand(double a1, double b1, double c1, double xi, CaptureBranch branch);

struct CaptureResult {
  double probability;
  /// Bound on |error| of `probability`, from the cubature error estimates.
  double error_estimate;
  std::size_t evaluations;
};

/// Default accuracy for capture probabilities: 1e-7 absolute on each octant integral.
inline constexpr AccuracySpec kCaptureAccuracy{1e-7, 1e-12};

/// Probability that a triangle on three standard Gaussian points in the plane contains (xi, 0):
/// 3 / (2 pi)^{5/2} * (Phi(xi) + Psi(xi)) with both octant integrals done by cubature.
CaptureResult capture_probability(double xi, const AccuracySpec& acc = kCaptureAccuracy,
                                  const CubatureOptions& opts = {});

/// Same for an arbitrary location; reduces to the radius sqrt(xi^2 + eta^2).
CaptureResult capture_probability_at(double xi, double eta, const AccuracySpec& acc = kCaptureAccuracy,
                                     const CubatureOptions& opts = {});

/// Reference values to six decimals at xi = 0, 0.5, 1, 1.5, 2.
struct CaptureTableEntry {
  double xi;
  double probability;
};
inline constexpr std::array<CaptureTableEntry, 5> kCaptureTable{{
    {0.0, 0.250000},
    {0.5, 0.197171},
    {1.0, 0.098289},
    {1.5, 0.032455},
    {2.0, 0.007626},
}};

/// Standard bivariate normal mass of triangle abc, computed exactly (to Owen's T accuracy)
/// by splitting it into right triangles with a vertex at the origin. A right triangle with
/// legs h (perpendicular to the far side) and h k along it carries atan(k)/(2 pi) - T(h, k).
double triangle_gaussian_content(const Point2& a, const Point2& b, const Point2& c);

/// Density of the median of three standard normals:
/// 3 / (2 sqrt(2 pi)) exp(-x^2/2) (1 - erf(x / sqrt 2)^2).
double median_density_1d(double x);

/// Normal density with mean 0 and variance 1 - sqrt(3)/pi.
double median_reference_density_1d(double x);

struct DensityGap {
  double sup_norm;
  double at_x;
};

/// Largest |median_density_1d - median_reference_density_1d| over a uniform grid on [lo, hi].
DensityGap median_density_gap(double lo = -4.0, double hi = 4.0, int points = 8001);

}  // namespace gcap
