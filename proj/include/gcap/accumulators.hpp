#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>

// Streaming moment accumulators. Each worker fills its own copy; partial results are
// combined with merge() in worker order, so totals do not depend on thread scheduling.

namespace gcap {

/// Running mean and centred second moment (Welford, merged with Chan's formula).
struct MeanAccumulator {
  std::uint64_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++n;
    const double d = x - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (x - mean);
  }

  void merge(const MeanAccumulator& o) {
    if (o.n == 0) return;
    if (n == 0) {
      *this = o;
      return;
    }
    const double na = static_cast<double>(n), nb = static_cast<double>(o.n);
    const double nt = na + nb;
    const double d = o.mean - mean;
    mean += d * nb / nt;
    m2 += o.m2 + d * d * na * nb / nt;
    n += o.n;
  }

  double variance() const { return n > 1 ? m2 / static_cast<double>(n - 1) : 0.0; }
  double stderr_of_mean() const { return n > 1 ? std::sqrt(variance() / static_cast<double>(n)) : 0.0; }
};

/// Running central moments up to order four (Pebay's update and merge formulas).
/// Supplies the standard error of a sample variance, sqrt((m4 - s^4) / n).
struct MomentAccumulator {
  std::uint64_t n = 0;
  double mean = 0.0;
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;

  void add(double x) {
    const double n1 = static_cast<double>(n);
    ++n;
    const double nn = static_cast<double>(n);
    const double d = x - mean;
    const double dn = d / nn;
    const double dn2 = dn * dn;
    const double t1 = d * dn * n1;
    mean += dn;
    m4 += t1 * dn2 * (nn * nn - 3.0 * nn + 3.0) + 6.0 * dn2 * m2 - 4.0 * dn * m3;
    m3 += t1 * dn * (nn - 2.0) - 3.0 * dn * m2;
    m2 += t1;
  }

  void merge(const MomentAccumulator& o) {
    if (o.n == 0) return;
    if (n == 0) {
      *this = o;
      return;
    }
    const double na = static_cast<double>(n), nb = static_cast<double>(o.n);
    const double nt = na + nb;
    const double d = o.mean - mean;
    const double d2 = d * d;
    const double new_m2 = m2 + o.m2 + d2 * na * nb / nt;
    const double new_m3 = m3 + o.m3 + d2 * d * na * nb * (na - nb) / (nt * nt) +
                          3.0 * d * (na * o.m2 - nb * m2) / nt;
    const double new_m4 = m4 + o.m4 + d2 * d2 * na * nb * (na * na - na * nb + nb * nb) / (nt * nt * nt) +
                          6.0 * d2 * (na * na * o.m2 + nb * nb * m2) / (nt * nt) +
                          4.0 * d * (na * o.m3 - nb * m3) / nt;
    mean += d * nb / nt;
    m2 = new_m2;
    m3 = new_m3;
    m4 = new_m4;
    n += o.n;
  }

  double variance() const { return n > 1 ? m2 / static_cast<double>(n - 1) : 0.0; }
  double stderr_of_mean() const { return n > 1 ? std::sqrt(variance() / static_cast<double>(n)) : 0.0; }
  double stderr_of_variance() const {
    if (n < 2) return 0.0;
    const double nn = static_cast<double>(n);
    const double s2 = variance();
    const double v = (m4 / nn - s2 * s2) / nn;
    return v > 0.0 ? std::sqrt(v) : 0.0;
  }
};

/// Running means, variances and covariance of a pair.
struct PairAccumulator {
  std::uint64_t n = 0;
  double mean_x = 0.0, mean_y = 0.0;
  double m2x = 0.0, m2y = 0.0, cxy = 0.0;

  void add(double x, double y) {
    ++n;
    const double inv = 1.0 / static_cast<double>(n);
    const double dx = x - mean_x;
    const double dy = y - mean_y;
    mean_x += dx * inv;
    mean_y += dy * inv;
    m2x += dx * (x - mean_x);
    m2y += dy * (y - mean_y);
    cxy += dx * (y - mean_y);
  }

  void merge(const PairAccumulator& o) {
    if (o.n == 0) return;
    if (n == 0) {
      *this = o;
      return;
    }
    const double na = static_cast<double>(n), nb = static_cast<double>(o.n);
    const double nt = na + nb;
    const double dx = o.mean_x - mean_x;
    const double dy = o.mean_y - mean_y;
    const double w = na * nb / nt;
    mean_x += dx * nb / nt;
    mean_y += dy * nb / nt;
    m2x += o.m2x + dx * dx * w;
    m2y += o.m2y + dy * dy * w;
    cxy += o.cxy + dx * dy * w;
    n += o.n;
  }

  double var_x() const { return n > 1 ? m2x / static_cast<double>(n - 1) : 0.0; }
  double var_y() const { return n > 1 ? m2y / static_cast<double>(n - 1) : 0.0; }
  double covariance() const { return n > 1 ? cxy / static_cast<double>(n - 1) : 0.0; }
  double correlation() const {
    const double den = std::sqrt(m2x * m2y);
    return den > 0.0 ? cxy / den : 0.0;
  }
};

/// Success count for a binomial proportion.
struct CountAccumulator {
  std::uint64_t hits = 0;
  std::uint64_t n = 0;

  void add(bool hit) {
    ++n;
    hits += hit ? 1 : 0;
  }
  void merge(const CountAccumulator& o) {
    hits += o.hits;
    n += o.n;
  }
  double proportion() const { return n ? static_cast<double>(hits) / static_cast<double>(n) : 0.0; }
  /// sqrt(p (1 - p) / n).
  double stderr_of_proportion() const {
    if (n == 0) return 0.0;
    const double p = proportion();
    return std::sqrt(p * (1.0 - p) / static_cast<double>(n));
  }
};

}  // namespace gcap
