#include "gcap/monte_carlo.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gcap/accumulators.hpp"
#include "gcap/analytic.hpp"
#include "gcap/rng.hpp"

using namespace gcap;

namespace {

RunConfig cfg(std::size_t samples, std::uint64_t seed = kDefaultSeed, std::size_t workers = 4,
              Backend backend = Backend::OpenMP) {
  RunConfig c;
  c.seed = seed;
  c.samples = samples;
  c.workers = workers;
  c.backend = backend;
  return c;
}

bool within(const Estimate& e, double target, double k = 3.0) { return std::abs(e.mean - target) <= k * e.std_error; }

bool same(const Estimate& a, const Estimate& b) {
  return a.mean == b.mean && a.std_error == b.std_error && a.n == b.n && a.n_total == b.n_total && a.seed == b.seed;
}

}  // namespace

TEST_CASE("Gaussian sampler moments") {
  Stream s(kDefaultSeed, 0);
  MomentAccumulator x, y, z;
  const int n = 1'000'000;
  for (int i = 0; i < n; ++i) {
    const auto p = sample_gaussian<3>(s);
    x.add(p[0]);
    y.add(p[1]);
    z.add(p[2]);
  }
  for (const auto* acc : {&x, &y, &z}) {
    CHECK(std::abs(acc->mean) <= 4.0 / std::sqrt(static_cast<double>(n)));
    CHECK(std::abs(acc->variance() - 1.0) <= 0.01);
    CHECK(std::abs(acc->m4 / n - 3.0) <= 0.05);
  }
}

TEST_CASE("streams are reproducible and distinct") {
  Stream a(42, 0), b(42, 0), c(42, 1), d(43, 0);
  bool differs_worker = false, differs_seed = false;
  for (int i = 0; i < 10; ++i) {
    const auto pa = sample_point2(a);
    const auto pb = sample_point2(b);
    CHECK(pa.x == pb.x);
    CHECK(pa.y == pb.y);
    differs_worker |= sample_point2(c).x != pa.x;
    differs_seed |= sample_point2(d).x != pa.x;
  }
  CHECK(differs_worker);
  CHECK(differs_seed);
  Stream u(5, 0);
  for (int i = 0; i < 1000; ++i) {
    const double v = u.uniform();
    CHECK(v >= 0.0);
    CHECK(v < 1.0);
  }
}

TEST_CASE("accumulator merge matches a single pass") {
  Stream s(9, 0);
  MeanAccumulator m_all, m_a, m_b;
  MomentAccumulator q_all, q_a, q_b;
  PairAccumulator p_all, p_a, p_b;
  for (int i = 0; i < 10000; ++i) {
    const double x = s.normal() * 2.0 + 1.0;
    const double y = 0.5 * x + s.normal();
    m_all.add(x);
    q_all.add(x);
    p_all.add(x, y);
    (i < 3000 ? m_a : m_b).add(x);
    (i < 3000 ? q_a : q_b).add(x);
    (i < 3000 ? p_a : p_b).add(x, y);
  }
  m_a.merge(m_b);
  q_a.merge(q_b);
  p_a.merge(p_b);
  CHECK(m_a.mean == doctest::Approx(m_all.mean).epsilon(1e-13));
  CHECK(m_a.variance() == doctest::Approx(m_all.variance()).epsilon(1e-13));
  CHECK(q_a.m2 == doctest::Approx(q_all.m2).epsilon(1e-12));
  CHECK(q_a.m3 == doctest::Approx(q_all.m3).epsilon(1e-9));
  CHECK(q_a.m4 == doctest::Approx(q_all.m4).epsilon(1e-12));
  CHECK(p_a.covariance() == doctest::Approx(p_all.covariance()).epsilon(1e-12));
  CHECK(p_a.correlation() == doctest::Approx(p_all.correlation()).epsilon(1e-12));
  CHECK(p_all.correlation() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(0.03));

  CountAccumulator c;
  for (int i = 0; i < 100; ++i) c.add(i % 4 == 0);
  CHECK(c.proportion() == 0.25);
  CHECK(c.stderr_of_proportion() == doctest::Approx(std::sqrt(0.25 * 0.75 / 100.0)));
}

TEST_CASE("RunConfig validation") {
  CHECK_THROWS_AS(estimate_capture(0, 0, cfg(0)), DomainError);
  CHECK_THROWS_AS(estimate_capture(0, 0, cfg(10, 1, 0)), DomainError);
  CHECK_THROWS_AS(estimate_expected_content(4, cfg(10)), DomainError);
  CHECK_THROWS_AS(estimate_capture(NAN, 0, cfg(10)), DomainError);
}

TEST_CASE("determinism and backend independence") {
  const auto a = estimate_capture(0.5, 0.0, cfg(200'000, 7, 8, Backend::OpenMP));
  const auto b = estimate_capture(0.5, 0.0, cfg(200'000, 7, 8, Backend::OpenMP));
  const auto c = estimate_capture(0.5, 0.0, cfg(200'000, 7, 8, Backend::Serial));
  CHECK(same(a, b));
  CHECK(same(a, c));
  const auto d = estimate_capture(0.5, 0.0, cfg(200'000, 7, 3, Backend::OpenMP));
  CHECK(d.mean != a.mean);
  CHECK(a.seed == 7);
  CHECK(a.n == 200'000);

  const auto qa = estimate_quad_stats(cfg(50'000, 3, 5, Backend::OpenMP));
  const auto qb = estimate_quad_stats(cfg(50'000, 3, 5, Backend::Serial));
  CHECK(same(qa.area, qb.area));
  CHECK(same(qa.side_sq_quad, qb.side_sq_quad));
  CHECK(same(qa.corr_disjoint, qb.corr_disjoint));

  const auto ma = estimate_median_stats_1d(cfg(50'000, 3, 5, Backend::OpenMP));
  const auto mb = estimate_median_stats_1d(cfg(50'000, 3, 5, Backend::Serial));
  CHECK(same(ma.variance, mb.variance));
  CHECK(ma.histogram.counts == mb.histogram.counts);

  const auto va = estimate_content_variance_2d(cfg(2'000, 3, 5, Backend::OpenMP));
  const auto vb = estimate_content_variance_2d(cfg(2'000, 3, 5, Backend::Serial));
  CHECK(same(va.content_variance, vb.content_variance));
}

TEST_CASE("capture estimates") {
  const auto c0 = estimate_capture(0.0, 0.0, cfg(1'000'000));
  CHECK(within(c0, 0.25));
  CHECK(c0.std_error == doctest::Approx(std::sqrt(c0.mean * (1.0 - c0.mean) / 1e6)).epsilon(1e-12));
  const auto c1 = estimate_capture(1.0, 0.0, cfg(1'000'000, 11));
  CHECK(within(c1, 0.098289));
  const auto rotated = estimate_capture(0.6, 0.8, cfg(1'000'000, 12));
  CHECK(within(rotated, capture_probability(1.0).probability));
  CHECK(std::abs(rotated.mean - c1.mean) <= 3.0 * std::hypot(rotated.std_error, c1.std_error));
}

TEST_CASE("expected content and coupling identities") {
  const auto k = constants();
  const auto e2 = estimate_expected_content(2, cfg(1'000'000, 21));
  const auto e3 = estimate_expected_content(3, cfg(1'000'000, 22));
  CHECK(within(e2, 0.0877398));
  CHECK(within(e2, k.expected_content_2d));
  CHECK(within(e3, 0.0195694));
  CHECK(e2.std_error == doctest::Approx(2.8e-4).epsilon(0.05));
  CHECK(e3.std_error == doctest::Approx(1.4e-4).epsilon(0.05));

  const auto q = estimate_quad_stats(cfg(1'000'000, 23));
  const double coupled = (1.0 - q.p_quadrilateral.mean) / 4.0;
  CHECK(std::abs(e2.mean - coupled) <= 3.0 * std::hypot(e2.std_error, q.p_quadrilateral.std_error / 4.0));

  const auto inner = estimate_inner_point_variance_2d(cfg(1'000'000, 24));
  const double se = std::hypot(inner.acceptance.std_error, q.p_quadrilateral.std_error);
  CHECK(std::abs(inner.acceptance.mean - (1.0 - q.p_quadrilateral.mean)) <= 3.0 * se);
  CHECK(within(inner.acceptance, k.one_minus_theta));
  CHECK(within(inner.mean, 0.0));
  CHECK(inner.variance.n == inner.mean.n);
  CHECK(inner.variance.n < inner.variance.n_total);
  CHECK(std::abs(inner.variance.mean - 0.36) <= 0.02);
}

TEST_CASE("content variance") {
  const auto k = constants();
  const auto nested = estimate_content_variance_2d(cfg(10'000, 31));
  CHECK(nested.content_variance.mean >= 0.0);
  CHECK(within(nested.content_mean, k.expected_content_2d));
  const auto again = estimate_content_variance_2d(cfg(10'000, 31));
  CHECK(same(nested.content_variance, again.content_variance));

  ContentVarianceOptions exact_opts;
  exact_opts.method = ContentMethod::OwenExact;
  const auto exact = estimate_content_variance_2d(cfg(100'000, 32), exact_opts);
  CHECK(within(exact.content_mean, k.expected_content_2d));
  CHECK(exact.content_variance.mean > 0.0);
  const double diff = nested.content_variance.mean - exact.content_variance.mean;
  CHECK(std::abs(diff) <= 3.0 * std::hypot(nested.content_variance.std_error, exact.content_variance.std_error));
}

TEST_CASE("median of three") {
  const auto k = constants();
  const auto m = estimate_median_stats_1d(cfg(1'000'000, 41));
  CHECK(within(m.variance, k.median_variance_1d));
  CHECK(within(m.variance, 0.44867));
  CHECK(within(m.mean, 0.0));
  CHECK(m.histogram.counts.size() == kMedianHistogramBins);
  CHECK(m.histogram.total() == 1'000'000);
  CHECK(m.fit_true.p_value > 0.001);
  CHECK(m.fit_true.statistic < m.fit_reference.statistic);
  CHECK(m.fit_true.dof > 50);
}

TEST_CASE("chi-square fit rejects a wrong density") {
  Histogram h(-4.0, 4.0, 101);
  Stream s(3, 0);
  for (int i = 0; i < 200'000; ++i) h.add(s.normal());
  const auto good = chi_square_fit(h, [](double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); });
  const auto bad = chi_square_fit(h, [](double x) { return std::exp(-0.5 * x * x / 1.1) / std::sqrt(2.2 * std::numbers::pi); });
  CHECK(good.p_value > 0.001);
  CHECK(bad.p_value < 1e-6);
}

TEST_CASE("quadrilateral and triangle statistics") {
  const auto k = constants();
  const auto q = estimate_quad_stats(cfg(1'000'000, 51));
  CHECK(within(q.p_quadrilateral, k.theta));
  CHECK(within(q.area, k.expected_area_quad));
  CHECK(within(q.perimeter, k.expected_perimeter_quad));
  CHECK(q.p_quadrilateral.mean >= 0.0);
  CHECK(q.p_quadrilateral.mean <= 1.0);
  for (const auto* e : {&q.corr_adjacent, &q.corr_disjoint}) {
    CHECK(e->mean > -1.0);
    CHECK(e->mean < 1.0);
  }
  for (const auto* e : {&q.side_mean_tri, &q.side_sq_tri, &q.side_mean_quad, &q.side_sq_quad}) {
    CHECK(e->n <= e->n_total);
    CHECK(e->std_error >= 0.0);
  }
  // Hull perimeter decomposes over the two conditionings.
  const double p4 = q.p_quadrilateral.mean;
  const double perim = p4 * 4.0 * q.side_mean_quad.mean + (1.0 - p4) * 3.0 * q.side_mean_tri.mean;
  CHECK(perim == doctest::Approx(q.perimeter.mean).epsilon(1e-9));

  const auto r = non_rayleigh_check(q);
  CHECK(std::abs(r.ratio_tri - std::numbers::pi / 4.0) > 5.0 * r.stderr_tri);
  CHECK(std::abs(r.ratio_quad - std::numbers::pi / 4.0) < 0.05);
  CHECK(r.ratio_tri == doctest::Approx(q.side_mean_tri.mean * q.side_mean_tri.mean / q.side_sq_tri.mean));

  const auto t = estimate_triangle_stats(cfg(1'000'000, 52));
  CHECK(within(t.area, std::sqrt(3.0) / 2.0));
  CHECK(within(t.perimeter, 3.0 * std::sqrt(std::numbers::pi)));
  const double ratio = q.area.mean / t.area.mean;
  const double ratio_se = ratio * std::hypot(q.area.std_error / q.area.mean, t.area.std_error / t.area.mean);
  CHECK(std::abs(ratio - 2.0) <= 3.0 * ratio_se);
}
