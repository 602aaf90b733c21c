#include "gcap/monte_carlo.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include <boost/math/special_functions/gamma.hpp>

#include "gcap/analytic.hpp"

namespace gcap {

namespace {

// Number of samples assigned to block w when `total` is split over `workers` blocks.
std::size_t block_size(std::size_t total, std::size_t workers, std::size_t w) {
  return total / workers + (w < total % workers ? 1 : 0);
}

/// Runs kernel(stream, count) -> Acc once per worker block and merges the partial
/// accumulators in block order. The OpenMP path only changes which thread runs a block.
template <class Acc, class Kernel>
Acc run_blocks(const RunConfig& cfg, Kernel&& kernel) {
  cfg.validate();
  std::vector<Acc> parts(cfg.workers);
  if (cfg.backend == Backend::Serial) {
    for (std::size_t w = 0; w < cfg.workers; ++w) {
      Stream s(cfg.seed, w);
      parts[w] = kernel(s, block_size(cfg.samples, cfg.workers, w));
    }
  } else {
    const auto workers = static_cast<std::ptrdiff_t>(cfg.workers);
#pragma omp parallel for schedule(static, 1)
    for (std::ptrdiff_t w = 0; w < workers; ++w) {
      const auto wu = static_cast<std::size_t>(w);
      Stream s(cfg.seed, wu);
      parts[wu] = kernel(s, block_size(cfg.samples, cfg.workers, wu));
    }
  }
  Acc total = std::move(parts[0]);
  for (std::size_t w = 1; w < parts.size(); ++w) total.merge(parts[w]);
  return total;
}

Estimate from_count(const CountAccumulator& c, std::uint64_t seed) {
  return {c.proportion(), c.stderr_of_proportion(), c.n, c.n, seed};
}

Estimate mean_of(const MeanAccumulator& m, std::uint64_t n_total, std::uint64_t seed) {
  return {m.mean, m.stderr_of_mean(), m.n, n_total, seed};
}

// Four points with a well-defined hull; degenerate draws are redrawn and counted.
struct HullDraw {
  Quad pts;
  HullClass hull;
  std::uint64_t attempts;
};

HullDraw draw_hull4(Stream& s) {
  HullDraw d{};
  for (;;) {
    ++d.attempts;
    for (auto& p : d.pts) p = sample_point2(s);
    if (auto h = try_hull4_classify(d.pts)) {
      d.hull = *std::move(h);
      return d;
    }
  }
}

}  // namespace

void RunConfig::validate() const {
  if (samples == 0) throw DomainError("RunConfig: samples must be at least 1");
  if (workers == 0) throw DomainError("RunConfig: workers must be at least 1");
}

// ---------------------------------------------------------------------------

Estimate estimate_capture(double xi, double eta, const RunConfig& cfg) {
  require_finite(xi, "estimate_capture");
  require_finite(eta, "estimate_capture");
  const Point2 x{xi, eta};
  const auto acc = run_blocks<CountAccumulator>(cfg, [&](Stream& s, std::size_t count) {
    CountAccumulator c;
    for (std::size_t i = 0; i < count; ++i) {
      const Point2 a = sample_point2(s);
      const Point2 b = sample_point2(s);
      const Point2 cc = sample_point2(s);
      c.add(triangle_captures(a, b, cc, x));
    }
    return c;
  });
  return from_count(acc, cfg.seed);
}

Estimate estimate_expected_content(int dim, const RunConfig& cfg) {
  if (dim == 2) {
    const auto acc = run_blocks<CountAccumulator>(cfg, [](Stream& s, std::size_t count) {
      CountAccumulator c;
      for (std::size_t i = 0; i < count; ++i) {
        const Point2 a = sample_point2(s);
        const Point2 b = sample_point2(s);
        const Point2 cc = sample_point2(s);
        const Point2 x = sample_point2(s);
        c.add(triangle_captures(a, b, cc, x));
      }
      return c;
    });
    return from_count(acc, cfg.seed);
  }
  if (dim == 3) {
    const auto acc = run_blocks<CountAccumulator>(cfg, [](Stream& s, std::size_t count) {
      CountAccumulator c;
      for (std::size_t i = 0; i < count; ++i) {
        const Point3 a = sample_point3(s);
        const Point3 b = sample_point3(s);
        const Point3 cc = sample_point3(s);
        const Point3 d = sample_point3(s);
        const Point3 x = sample_point3(s);
        c.add(tetra_captures(a, b, cc, d, x));
      }
      return c;
    });
    return from_count(acc, cfg.seed);
  }
  throw DomainError("estimate_expected_content: dim must be 2 or 3");
}

// ---------------------------------------------------------------------------

namespace {

struct ContentSamples {
  std::vector<double> content;
  std::vector<double> inner_var;  // unbiased binomial variance of each inner estimate, 0 if exact

  void merge(const ContentSamples& o) {
    content.insert(content.end(), o.content.begin(), o.content.end());
    inner_var.insert(inner_var.end(), o.inner_var.begin(), o.inner_var.end());
  }
};

}  // namespace

ContentVarianceResult estimate_content_variance_2d(const RunConfig& cfg, const ContentVarianceOptions& opts) {
  if (opts.method == ContentMethod::NestedMonteCarlo && opts.inner_probes < 2) {
    throw DomainError("estimate_content_variance_2d: nested estimate needs at least 2 inner probes");
  }
  if (cfg.samples < 3) throw DomainError("estimate_content_variance_2d: need at least 3 triangles");

  const auto samples = run_blocks<ContentSamples>(cfg, [&](Stream& s, std::size_t count) {
    ContentSamples out;
    out.content.reserve(count);
    out.inner_var.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
      const Point2 a = sample_point2(s);
      const Point2 b = sample_point2(s);
      const Point2 c = sample_point2(s);
      if (opts.method == ContentMethod::OwenExact) {
        out.content.push_back(triangle_gaussian_content(a, b, c));
        out.inner_var.push_back(0.0);
        continue;
      }
      std::size_t hits = 0;
      for (std::size_t j = 0; j < opts.inner_probes; ++j) {
        hits += triangle_captures(a, b, c, sample_point2(s)) ? 1 : 0;
      }
      const double m = static_cast<double>(opts.inner_probes);
      const double p = static_cast<double>(hits) / m;
      out.content.push_back(p);
      out.inner_var.push_back(p * (1.0 - p) / (m - 1.0));
    }
    return out;
  });

  // V = S^2(p) - mean(inner_var), with a leave-one-out jackknife over triangles.
  const std::size_t n = samples.content.size();
  const double nd = static_cast<double>(n);
  double sum = 0.0, sum_sq = 0.0, sum_iv = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sum += samples.content[i];
    sum_sq += samples.content[i] * samples.content[i];
    sum_iv += samples.inner_var[i];
  }
  const auto stat = [](double s1, double s2, double siv, double count) {
    const double mean = s1 / count;
    const double sample_var = (s2 - count * mean * mean) / (count - 1.0);
    return sample_var - siv / count;
  };
  const double v_full = stat(sum, sum_sq, sum_iv, nd);
  std::vector<double> loo(n);
  double loo_mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = samples.content[i];
    loo[i] = stat(sum - x, sum_sq - x * x, sum_iv - samples.inner_var[i], nd - 1.0);
    loo_mean += loo[i];
  }
  loo_mean /= nd;
  double jack = 0.0;
  for (double v : loo) jack += (v - loo_mean) * (v - loo_mean);
  jack *= (nd - 1.0) / nd;

  MeanAccumulator mean_acc;
  for (double x : samples.content) mean_acc.add(x);

  ContentVarianceResult r;
  r.options = opts;
  r.content_mean = mean_of(mean_acc, n, cfg.seed);
  r.content_variance = {v_full, std::sqrt(jack), n, n, cfg.seed};
  return r;
}

// ---------------------------------------------------------------------------

void Histogram::add(double x) {
  if (x < lo) {
    ++below;
  } else if (x >= hi) {
    ++above;
  } else {
    auto bin = static_cast<std::size_t>((x - lo) / bin_width());
    counts[std::min(bin, counts.size() - 1)] += 1;
  }
}

void Histogram::merge(const Histogram& o) {
  if (counts.empty()) {
    *this = o;
    return;
  }
  for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += o.counts[i];
  below += o.below;
  above += o.above;
}

std::uint64_t Histogram::total() const {
  std::uint64_t t = below + above;
  for (auto c : counts) t += c;
  return t;
}

ChiSquare chi_square_fit(const Histogram& h, const std::function<double(double)>& density) {
  const double n = static_cast<double>(h.total());
  if (n == 0.0 || h.counts.empty()) throw DomainError("chi_square_fit: empty histogram");

  // Cell masses: (-inf, lo), each bin, [hi, inf).
  const auto bin_mass = [&](double a, double b) {
    return integrate_interval(density, a, b, AccuracySpec{1e-13, 1e-10}).value;
  };
  const auto tail_mass = [&](double a, bool upper) {
    // Substitute x = a +- t / (1 - t) on (0, 1).
    const auto g = [&](double t) {
      const double om = 1.0 - t;
      if (om <= 0.0) return 0.0;
      const double x = upper ? a + t / om : a - t / om;
      return density(x) / (om * om);
    };
    return integrate_interval(g, 0.0, 1.0, AccuracySpec{1e-13, 1e-10}).value;
  };

  std::vector<double> expected;
  std::vector<double> observed;
  expected.push_back(n * tail_mass(h.lo, false));
  observed.push_back(static_cast<double>(h.below));
  const double w = h.bin_width();
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    const double a = h.lo + w * static_cast<double>(i);
    expected.push_back(n * bin_mass(a, a + w));
    observed.push_back(static_cast<double>(h.counts[i]));
  }
  expected.push_back(n * tail_mass(h.hi, true));
  observed.push_back(static_cast<double>(h.above));

  // Pool sparse cells left to right; a sparse remainder joins the last pooled cell.
  std::vector<double> pe, po;
  double ce = 0.0, co = 0.0;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    ce += expected[i];
    co += observed[i];
    if (ce >= 5.0) {
      pe.push_back(ce);
      po.push_back(co);
      ce = co = 0.0;
    }
  }
  if (ce > 0.0 || co > 0.0) {
    if (pe.empty()) {
      pe.push_back(ce);
      po.push_back(co);
    } else {
      pe.back() += ce;
      po.back() += co;
    }
  }

  ChiSquare r;
  for (std::size_t i = 0; i < pe.size(); ++i) {
    const double d = po[i] - pe[i];
    r.statistic += d * d / pe[i];
  }
  r.dof = pe.size() > 1 ? pe.size() - 1 : 1;
  r.p_value = boost::math::gamma_q(0.5 * static_cast<double>(r.dof), 0.5 * r.statistic);
  return r;
}

namespace {

struct MedianAcc {
  MomentAccumulator moments;
  Histogram hist{-4.0, 4.0, kMedianHistogramBins};
  void merge(const MedianAcc& o) {
    moments.merge(o.moments);
    hist.merge(o.hist);
  }
};

}  // namespace

MedianStats1D estimate_median_stats_1d(const RunConfig& cfg) {
  const auto acc = run_blocks<MedianAcc>(cfg, [](Stream& s, std::size_t count) {
    MedianAcc a;
    for (std::size_t i = 0; i < count; ++i) {
      const double x = s.normal(), y = s.normal(), z = s.normal();
      const double med = std::max(std::min(x, y), std::min(std::max(x, y), z));
      a.moments.add(med);
      a.hist.add(med);
    }
    return a;
  });
  MedianStats1D r;
  const auto& m = acc.moments;
  r.variance = {m.variance(), m.stderr_of_variance(), m.n, m.n, cfg.seed};
  r.mean = {m.mean, m.stderr_of_mean(), m.n, m.n, cfg.seed};
  r.histogram = acc.hist;
  r.fit_true = chi_square_fit(acc.hist, [](double x) { return median_density_1d(x); });
  r.fit_reference = chi_square_fit(acc.hist, [](double x) { return median_reference_density_1d(x); });
  return r;
}

namespace {

struct InnerAcc {
  MomentAccumulator coord;
  CountAccumulator degenerate;
  std::uint64_t attempts = 0;
  void merge(const InnerAcc& o) {
    coord.merge(o.coord);
    degenerate.merge(o.degenerate);
    attempts += o.attempts;
  }
};

}  // namespace

InnerPointStats estimate_inner_point_variance_2d(const RunConfig& cfg) {
  const auto acc = run_blocks<InnerAcc>(cfg, [](Stream& s, std::size_t count) {
    InnerAcc a;
    for (std::size_t i = 0; i < count; ++i) {
      const HullDraw d = draw_hull4(s);
      a.attempts += d.attempts;
      const bool inner = d.hull.kind == HullKind::DegenerateTriangle;
      a.degenerate.add(inner);
      if (inner) a.coord.add(d.pts[d.hull.inner_index].x);
    }
    return a;
  });
  InnerPointStats r;
  const auto& c = acc.coord;
  r.variance = {c.variance(), c.stderr_of_variance(), c.n, acc.attempts, cfg.seed};
  r.mean = {c.mean, c.stderr_of_mean(), c.n, acc.attempts, cfg.seed};
  r.acceptance = from_count(acc.degenerate, cfg.seed);
  r.acceptance.n_total = acc.attempts;
  return r;
}

// ---------------------------------------------------------------------------

namespace {

struct QuadAcc {
  CountAccumulator convex;
  MeanAccumulator area;
  MeanAccumulator perimeter;
  PairAccumulator sides_tri;   // (mean side, mean side^2) per triangular hull
  PairAccumulator sides_quad;  // same per quadrilateral
  PairAccumulator adjacent;
  PairAccumulator disjoint;
  std::uint64_t attempts = 0;

  void merge(const QuadAcc& o) {
    convex.merge(o.convex);
    area.merge(o.area);
    perimeter.merge(o.perimeter);
    sides_tri.merge(o.sides_tri);
    sides_quad.merge(o.sides_quad);
    adjacent.merge(o.adjacent);
    disjoint.merge(o.disjoint);
    attempts += o.attempts;
  }
};

Estimate corr_estimate(const PairAccumulator& p, std::uint64_t samples, std::uint64_t n_total, std::uint64_t seed) {
  const double r = p.correlation();
  const double se = samples > 0 ? (1.0 - r * r) / std::sqrt(static_cast<double>(samples)) : 0.0;
  return {r, se, samples, n_total, seed};
}

}  // namespace

QuadStatsReport estimate_quad_stats(const RunConfig& cfg) {
  const auto acc = run_blocks<QuadAcc>(cfg, [](Stream& s, std::size_t count) {
    QuadAcc a;
    for (std::size_t i = 0; i < count; ++i) {
      const HullDraw d = draw_hull4(s);
      a.attempts += d.attempts;
      const auto sides = hull_sides(d.hull, d.pts);
      double sum = 0.0, sum_sq = 0.0;
      for (double x : sides) {
        sum += x;
        sum_sq += x * x;
      }
      const double k = static_cast<double>(sides.size());
      a.area.add(hull_area(d.hull, d.pts));
      a.perimeter.add(sum);
      const bool convex = d.hull.kind == HullKind::Quadrilateral;
      a.convex.add(convex);
      if (!convex) {
        a.sides_tri.add(sum / k, sum_sq / k);
        continue;
      }
      a.sides_quad.add(sum / k, sum_sq / k);
      for (std::size_t j = 0; j < 4; ++j) {
        a.adjacent.add(sides[j], sides[(j + 1) % 4]);
        a.disjoint.add(sides[j], sides[(j + 2) % 4]);
      }
    }
    return a;
  });

  QuadStatsReport r;
  const std::uint64_t n_total = acc.attempts;
  r.p_quadrilateral = from_count(acc.convex, cfg.seed);
  r.p_quadrilateral.n_total = n_total;
  r.area = mean_of(acc.area, n_total, cfg.seed);
  r.perimeter = mean_of(acc.perimeter, n_total, cfg.seed);

  const auto side_estimates = [&](const PairAccumulator& p, Estimate& mean, Estimate& sq, double& cov) {
    const double nn = static_cast<double>(p.n);
    mean = {p.mean_x, p.n > 1 ? std::sqrt(p.var_x() / nn) : 0.0, p.n, n_total, cfg.seed};
    sq = {p.mean_y, p.n > 1 ? std::sqrt(p.var_y() / nn) : 0.0, p.n, n_total, cfg.seed};
    cov = p.n > 1 ? p.covariance() / nn : 0.0;
  };
  side_estimates(acc.sides_tri, r.side_mean_tri, r.side_sq_tri, r.side_moment_cov_tri);
  side_estimates(acc.sides_quad, r.side_mean_quad, r.side_sq_quad, r.side_moment_cov_quad);

  r.corr_adjacent = corr_estimate(acc.adjacent, acc.sides_quad.n, n_total, cfg.seed);
  r.corr_disjoint = corr_estimate(acc.disjoint, acc.sides_quad.n, n_total, cfg.seed);
  return r;
}

namespace {

struct TriAcc {
  MeanAccumulator area;
  MeanAccumulator perimeter;
  void merge(const TriAcc& o) {
    area.merge(o.area);
    perimeter.merge(o.perimeter);
  }
};

}  // namespace

TriangleStats estimate_triangle_stats(const RunConfig& cfg) {
  const auto acc = run_blocks<TriAcc>(cfg, [](Stream& s, std::size_t count) {
    TriAcc a;
    for (std::size_t i = 0; i < count; ++i) {
      const Point2 p = sample_point2(s);
      const Point2 q = sample_point2(s);
      const Point2 r = sample_point2(s);
      a.area.add(0.5 * std::abs(orient2d(p, q, r)));
      a.perimeter.add(std::hypot(q.x - p.x, q.y - p.y) + std::hypot(r.x - q.x, r.y - q.y) +
                      std::hypot(p.x - r.x, p.y - r.y));
    }
    return a;
  });
  return {mean_of(acc.area, acc.area.n, cfg.seed), mean_of(acc.perimeter, acc.perimeter.n, cfg.seed)};
}

RayleighRatios non_rayleigh_check(const QuadStatsReport& report) {
  // r = m1^2 / m2;  dr/dm1 = 2 m1 / m2,  dr/dm2 = -m1^2 / m2^2.
  const auto ratio = [](const Estimate& m1, const Estimate& m2, double cov, double& ratio_out, double& se_out) {
    if (m2.mean <= 0.0) throw DomainError("non_rayleigh_check: report has no side samples");
    ratio_out = m1.mean * m1.mean / m2.mean;
    const double g1 = 2.0 * m1.mean / m2.mean;
    const double g2 = -m1.mean * m1.mean / (m2.mean * m2.mean);
    const double var = g1 * g1 * m1.std_error * m1.std_error + g2 * g2 * m2.std_error * m2.std_error + 2.0 * g1 * g2 * cov;
    se_out = var > 0.0 ? std::sqrt(var) : 0.0;
  };
  RayleighRatios r;
  ratio(report.side_mean_tri, report.side_sq_tri, report.side_moment_cov_tri, r.ratio_tri, r.stderr_tri);
  ratio(report.side_mean_quad, report.side_sq_quad, report.side_moment_cov_quad, r.ratio_quad, r.stderr_quad);
  return r;
}

}  // namespace gcap
