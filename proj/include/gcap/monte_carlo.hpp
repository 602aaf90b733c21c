#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "gcap/accumulators.hpp"
#include "gcap/geometry.hpp"
#include "gcap/quadrature.hpp"
#include "gcap/rng.hpp"

namespace gcap {

inline constexpr std::uint64_t kDefaultSeed = 20160119;

/// Monte Carlo run parameters. Work is cut into `workers` contiguous blocks; block w
/// draws from Stream(seed, w) and partial results are reduced in block order. Results
/// are therefore fixed for a given (seed, samples, workers) and independent of how
/// many threads execute the blocks. Changing `workers` changes the stream assignment.
struct RunConfig {
  std::uint64_t seed = kDefaultSeed;
  std::size_t samples = 1'000'000;
  std::size_t workers = 1;
  Backend backend = Backend::OpenMP;

  /// Throws DomainError if samples or workers is zero.
  void validate() const;
};

struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
  /// Accepted samples that entered the estimate.
  std::uint64_t n = 0;
  /// Raw samples drawn, including discarded or non-qualifying ones.
  std::uint64_t n_total = 0;
  std::uint64_t seed = 0;
};

// Capture and probability content -------------------------------------------

/// Fraction of Gaussian triangles ABC capturing (xi, eta); binomial standard error.
Estimate estimate_capture(double xi, double eta, const RunConfig& cfg);

/// dim 2: fraction of (A, B, C, X) with X inside ABC.
/// dim 3: fraction of (A, B, C, D, X) with X inside tetrahedron ABCD.
/// Throws DomainError for other dimensions.
Estimate estimate_expected_content(int dim, const RunConfig& cfg);

enum class ContentMethod {
  /// Inner Monte Carlo with `inner_probes` Gaussian probes per triangle.
  NestedMonteCarlo,
  /// Exact Gaussian mass of each triangle through Owen's T.
  OwenExact,
};

struct ContentVarianceOptions {
  ContentMethod method = ContentMethod::NestedMonteCarlo;
  std::size_t inner_probes = 1000;
};

struct ContentVarianceResult {
  /// Mean probability content over sampled triangles; cfg.samples triangles.
  Estimate content_mean;
  /// Variance of the probability content across triangles, jackknife standard error.
  Estimate content_variance;
  ContentVarianceOptions options;
};

/// Exploratory estimate of the variance of the Gaussian measure of a Gaussian triangle.
/// For the nested method the binomial noise of the inner estimate is removed:
/// with m probes, E[p^(1 - p^)] = p(1 - p)(m - 1)/m, so the inner variance of p^ is
/// estimated without bias by p^(1 - p^)/(m - 1) and its mean is subtracted from the
/// sample variance of the p^ values.
ContentVarianceResult estimate_content_variance_2d(const RunConfig& cfg,
                                                   const ContentVarianceOptions& opts = {});

// Median of three and inner point of four -----------------------------------

struct Histogram {
  double lo = -4.0;
  double hi = 4.0;
  std::vector<std::uint64_t> counts;
  std::uint64_t below = 0;
  std::uint64_t above = 0;

  Histogram() = default;
  Histogram(double lo_, double hi_, std::size_t bins) : lo(lo_), hi(hi_), counts(bins, 0) {}
  void add(double x);
  void merge(const Histogram& o);
  std::uint64_t total() const;
  double bin_width() const { return (hi - lo) / static_cast<double>(counts.size()); }
};

struct ChiSquare {
  double statistic = 0.0;
  std::size_t dof = 0;
  double p_value = 0.0;
};

/// Pearson chi-square goodness of fit of `h` against a density on the real line.
/// Expected bin masses come from Gauss-Legendre integration over each bin, the two
/// tails form their own cells, and cells with expected count below 5 are pooled with
/// their neighbours.
ChiSquare chi_square_fit(const Histogram& h, const std::function<double(double)>& density);

struct MedianStats1D {
  Estimate variance;
  Estimate mean;
  Histogram histogram;
  ChiSquare fit_true;       ///< against median_density_1d
  ChiSquare fit_reference;  ///< against N(0, 1 - sqrt(3)/pi)
};

inline constexpr std::size_t kMedianHistogramBins = 101;

/// Median of three standard normals, cfg.samples times.
MedianStats1D estimate_median_stats_1d(const RunConfig& cfg);

struct InnerPointStats {
  /// Variance of the inner point's first coordinate; n counts degenerate draws,
  /// n_total all draws.
  Estimate variance;
  Estimate mean;
  /// Fraction of draws whose hull is a triangle (should match 1 - theta).
  Estimate acceptance;
};

/// Four Gaussian points per draw, cfg.samples draws; conditions on a triangular hull.
InnerPointStats estimate_inner_point_variance_2d(const RunConfig& cfg);

// Quadrilaterals and triangles -----------------------------------------------

struct QuadStatsReport {
  Estimate p_quadrilateral;
  Estimate area;
  Estimate perimeter;
  /// Side moments conditioned on three hull vertices.
  Estimate side_mean_tri;
  Estimate side_sq_tri;
  /// Side moments conditioned on four hull vertices.
  Estimate side_mean_quad;
  Estimate side_sq_quad;
  /// Pearson correlation of sides sharing a vertex / opposite sides, four-vertex hulls only.
  Estimate corr_adjacent;
  Estimate corr_disjoint;
  /// Covariance between the side-mean and side-square estimators, for ratio errors.
  double side_moment_cov_tri = 0.0;
  double side_moment_cov_quad = 0.0;
};

/// One pass over cfg.samples Gaussian 4-tuples. Side-correlation pairs are
/// (side_i, side_{i+1 mod 4}) and (side_i, side_{i+2 mod 4}) for i = 0..3, sides taken in
/// hull order; the standard error (1 - r^2)/sqrt(n) uses the number of quadrilaterals.
QuadStatsReport estimate_quad_stats(const RunConfig& cfg);

struct TriangleStats {
  Estimate area;
  Estimate perimeter;
};

TriangleStats estimate_triangle_stats(const RunConfig& cfg);

/// E(side)^2 / E(side^2) for each conditioning; pi/4 for a Rayleigh side length.
struct RayleighRatios {
  double ratio_tri = 0.0;
  double ratio_quad = 0.0;
  /// Delta-method standard errors.
  double stderr_tri = 0.0;
  double stderr_quad = 0.0;
};

RayleighRatios non_rayleigh_check(const QuadStatsReport& report);

}  // namespace gcap
