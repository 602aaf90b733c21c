#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>

#include "gcap/accuracy.hpp"

namespace gcap {

/// How a data-parallel kernel is executed. Both backends give bit-identical results;
/// Serial is the reference implementation kept for testing.
enum class Backend { Serial, OpenMP };

struct CubatureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
};

// ---------------------------------------------------------------------------
// One dimension

using Integrand1 = std::function<double(double)>;

struct Quadrature1Options {
  /// Maximum number of subintervals before giving up.
  std::size_t max_intervals = 4000;
};

/// Globally adaptive Gauss-Kronrod (7/15) integration over [a, b].
CubatureResult integrate_interval(const Integrand1& f, double a, double b,
                                  const AccuracySpec& acc = kDefaultAccuracy,
                                  const Quadrature1Options& opts = {});

/// Integral over the whole real line. Uses t = u / (1 - u^2) on (-1, 1), then
/// integrate_interval. `f` must decay fast enough for the transformed integrand to vanish at u = +-1.
CubatureResult integrate_real_line(const Integrand1& f, const AccuracySpec& acc = kDefaultAccuracy,
                                   const Quadrature1Options& opts = {});

// ---------------------------------------------------------------------------
// Octants of R^3

enum class Sign : std::int8_t { Negative = -1, Positive = 1 };

/// Sign constraint on each coordinate axis, e.g. {+, +, -} is a1 > 0, b1 > 0, c1 < 0.
struct Octant3 {
  std::array<Sign, 3> signs{Sign::Positive, Sign::Positive, Sign::Positive};
};

using Integrand3 = std::function<double(double, double, double)>;

struct CubatureOptions {
  /// Gauss-Legendre points per axis on each panel.
  int order = 4;
  /// Panels per axis in the initial uniform grid (in compactified coordinates).
  int initial_divisions = 4;
  std::size_t max_evaluations = 10'000'000;
  Backend backend = Backend::OpenMP;
};

/// Adaptive cubature of `f` over an open octant.
///
/// Each semi-infinite axis is mapped onto (0, 1) by u = s / (1 - s), negative axes
/// by mirroring. Panels carry a tensor Gauss-Legendre estimate plus the three
/// estimates obtained by halving along each axis; the largest disagreement is the
/// panel's error and picks the axis it is split along next. Panels with the largest
/// errors are split in rounds until the summed error meets `acc`. Nodes are interior,
/// so `f` is never evaluated on the coordinate planes.
///
/// The result depends only on the inputs and options, never on the thread count.
/// Throws AccuracyError once `max_evaluations` would be exceeded.
CubatureResult integrate_octant3(const Integrand3& f, const Octant3& oct,
                                 const AccuracySpec& acc = kDefaultAccuracy,
                                 const CubatureOptions& opts = {});

}  // namespace gcap
