#include "gcap/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <numbers>

#include "gcap/analytic.hpp"
#include "gcap/special_fn.hpp"

namespace gcap {

bool VerifyReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

namespace {

using std::numbers::pi;

std::string printf_string(const char* fmt, ...) {
  char buf[512];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, args);
  va_end(args);
  return buf;
}

bool within_sigma(const Estimate& e, double target, double k = 3.0) {
  return std::abs(e.mean - target) <= k * e.std_error;
}

class Suite {
 public:
  explicit Suite(const VerifyOptions& opts) : opts_(opts) {}

  RunConfig mc(std::size_t samples, std::uint64_t seed_offset = 0) const {
    RunConfig cfg;
    cfg.seed = opts_.seed + seed_offset;
    cfg.samples = samples;
    cfg.workers = opts_.workers;
    cfg.backend = opts_.backend;
    return cfg;
  }

  void record(OutputRecord r) { report_.records.push_back(std::move(r)); }

  void mc_record(const std::string& q, const Estimate& e, std::optional<double> target = {}) {
    record(OutputRecord::monte_carlo(q, e.mean, e.std_error, e.n, e.seed, target));
  }

  void check(int id, std::string name, bool passed, std::string detail) {
    report_.checks.push_back({id, std::move(name), passed, std::move(detail)});
  }

  void capture_suite() {
    CubatureOptions copts;
    copts.backend = opts_.backend;
    bool table_ok = true;
    bool mc_ok = true;
    std::string table_detail, mc_detail;
    for (const auto& e : kCaptureTable) {
      const auto quad = capture_probability(e.xi, AccuracySpec{opts_.capture_tol, 1e-12}, copts);
      const auto name = quantity_name("capture_probability", {{"xi", e.xi}, {"eta", 0.0}});
      record(OutputRecord::quadrature(name, quad.probability, quad.error_estimate, quad.evaluations, e.probability));
      const double err = std::abs(quad.probability - e.probability);
      table_ok = table_ok && err <= 1e-4;
      table_detail += printf_string("xi=%g:%.6f(err %.1e) ", e.xi, quad.probability, err);

      const auto est = estimate_capture(e.xi, 0.0, mc(1'000'000));
      mc_record(name, est, e.probability);
      const double z = (est.mean - quad.probability) / est.std_error;
      mc_ok = mc_ok && std::abs(z) <= 3.0;
      mc_detail += printf_string("xi=%g:z=%+.2f ", e.xi, z);
    }
    check(1, "capture_table_quadrature", table_ok, table_detail + "tol 1e-4");
    check(2, "capture_mc_vs_quadrature", mc_ok, mc_detail + "bound 3 stderr");
  }

  void constants_suite() {
    const auto c = constants();
    struct Item {
      const char* name;
      double value;
      double reference;
    };
    const Item items[] = {
        {"theta", c.theta, reference::kTheta},
        {"one_minus_theta", c.one_minus_theta, reference::kOneMinusTheta},
        {"expected_content_2d", c.expected_content_2d, reference::kExpectedContent2d},
        {"gaussian_volume_3d", c.gaussian_volume_3d, reference::kGaussianVolume3d},
        {"median_variance_1d", c.median_variance_1d, reference::kMedianVariance1d},
        {"expected_area_quad", c.expected_area_quad, reference::kExpectedAreaQuad},
        {"expected_perimeter_quad", c.expected_perimeter_quad, reference::kExpectedPerimeterQuad},
    };
    bool ok = true;
    double worst = 0.0;
    for (const auto& it : items) {
      record(OutputRecord::closed_form(it.name, it.value, it.reference));
      const double rel = std::abs(it.value - it.reference) / std::abs(it.reference);
      worst = std::max(worst, rel);
      ok = ok && rel <= 1e-12;
    }
    check(3, "constants", ok, printf_string("max relative deviation %.2e, tol 1e-12", worst));
  }

  void content_suite() {
    const auto c = constants();
    const auto e2 = estimate_expected_content(2, mc(1'000'000, 1));
    const auto e3 = estimate_expected_content(3, mc(1'000'000, 2));
    mc_record("expected_content[dim=2]", e2, c.expected_content_2d);
    mc_record("expected_content[dim=3]", e3, c.gaussian_volume_3d);
    const bool ok = within_sigma(e2, c.expected_content_2d) && within_sigma(e3, c.gaussian_volume_3d);
    check(4, "expected_content_mc", ok,
          printf_string("dim2 %.7f+-%.1e z=%+.2f; dim3 %.7f+-%.1e z=%+.2f", e2.mean, e2.std_error,
                        (e2.mean - c.expected_content_2d) / e2.std_error, e3.mean, e3.std_error,
                        (e3.mean - c.gaussian_volume_3d) / e3.std_error));
  }

  void median_suite() {
    const auto c = constants();
    const auto m1 = estimate_median_stats_1d(mc(1'000'000, 3));
    mc_record("median_variance[dim=1]", m1.variance, c.median_variance_1d);
    mc_record("median_mean[dim=1]", m1.mean, 0.0);
    record(OutputRecord::monte_carlo("median_histogram_chi2_pvalue[density=true]", m1.fit_true.p_value, 0.0,
                                     m1.variance.n, m1.variance.seed));
    record(OutputRecord::monte_carlo("median_histogram_chi2_pvalue[density=reference_normal]",
                                     m1.fit_reference.p_value, 0.0, m1.variance.n, m1.variance.seed));

    const auto m2 = estimate_inner_point_variance_2d(mc(4'000'000, 4));
    mc_record("inner_point_variance[dim=2]", m2.variance, reference::kInnerPointVariance);
    mc_record("inner_point_mean[dim=2]", m2.mean, 0.0);
    mc_record("inner_point_acceptance[dim=2]", m2.acceptance, c.one_minus_theta);

    const bool ok = within_sigma(m1.variance, c.median_variance_1d) && m1.fit_true.p_value > 1e-3 &&
                    std::abs(m2.variance.mean - reference::kInnerPointVariance) <= 0.02 &&
                    within_sigma(m2.acceptance, reference::kOneMinusTheta);
    check(5, "median_suite", ok,
          printf_string("1d var %.6f+-%.1e; chi2 p=%.3g (dof %zu); 2d var %.4f; acceptance %.6f+-%.1e",
                        m1.variance.mean, m1.variance.std_error, m1.fit_true.p_value, m1.fit_true.dof,
                        m2.variance.mean, m2.acceptance.mean, m2.acceptance.std_error));
  }

  void quad_suite() {
    const auto c = constants();
    const auto q = estimate_quad_stats(mc(1'000'000, 5));
    mc_record("p_quadrilateral", q.p_quadrilateral, c.theta);
    mc_record("hull4_area", q.area, c.expected_area_quad);
    mc_record("hull4_perimeter", q.perimeter, c.expected_perimeter_quad);
    mc_record("side_mean[hull_vertices=3]", q.side_mean_tri, reference::kSideMeanTri);
    mc_record("side_sq_mean[hull_vertices=3]", q.side_sq_tri, reference::kSideSqTri);
    mc_record("side_mean[hull_vertices=4]", q.side_mean_quad, reference::kSideMeanQuad);
    mc_record("side_sq_mean[hull_vertices=4]", q.side_sq_quad, reference::kSideSqQuad);
    mc_record("side_corr_adjacent[hull_vertices=4]", q.corr_adjacent);
    mc_record("side_corr_disjoint[hull_vertices=4]", q.corr_disjoint);

    const bool ok = within_sigma(q.p_quadrilateral, reference::kTheta) &&
                    within_sigma(q.area, reference::kExpectedAreaQuad) &&
                    within_sigma(q.perimeter, reference::kExpectedPerimeterQuad) &&
                    std::abs(q.side_mean_tri.mean - reference::kSideMeanTri) <= 0.01 &&
                    std::abs(q.side_sq_tri.mean - reference::kSideSqTri) <= 0.03 &&
                    std::abs(q.side_mean_quad.mean - reference::kSideMeanQuad) <= 0.01 &&
                    std::abs(q.side_sq_quad.mean - reference::kSideSqQuad) <= 0.02;
    check(6, "quadrilateral_suite", ok,
          printf_string("p4 %.6f area %.5f perim %.5f sides3 (%.4f, %.4f) sides4 (%.4f, %.4f)", q.p_quadrilateral.mean,
                        q.area.mean, q.perimeter.mean, q.side_mean_tri.mean, q.side_sq_tri.mean, q.side_mean_quad.mean,
                        q.side_sq_quad.mean));

    const auto r = non_rayleigh_check(q);
    record(OutputRecord::monte_carlo("rayleigh_ratio[hull_vertices=3]", r.ratio_tri, r.stderr_tri, q.side_mean_tri.n,
                                     q.side_mean_tri.seed));
    record(OutputRecord::monte_carlo("rayleigh_ratio[hull_vertices=4]", r.ratio_quad, r.stderr_quad,
                                     q.side_mean_quad.n, q.side_mean_quad.seed));
    const double quarter_pi = pi / 4.0;
    const bool rayleigh_ok =
        std::abs(r.ratio_tri - quarter_pi) > 5.0 * r.stderr_tri && std::abs(r.ratio_quad - quarter_pi) <= 0.05;
    check(7, "non_rayleigh", rayleigh_ok,
          printf_string("tri %.5f+-%.1e (%.0f sigma from pi/4); quad %.5f (|d|=%.4f, tol 0.05)", r.ratio_tri,
                        r.stderr_tri, std::abs(r.ratio_tri - quarter_pi) / r.stderr_tri, r.ratio_quad,
                        std::abs(r.ratio_quad - quarter_pi)));
  }

  void identity_suite() {
    Stream rng(opts_.seed, 1u << 20);
    const auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * rng.uniform(); };

    double owen_worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const double h = uniform(-3.0, 3.0), k = uniform(-3.0, 3.0);
      const double t = owen_t(h, k);
      const double phi = std_normal_cdf(h);
      owen_worst = std::max({owen_worst, std::abs(owen_t(-h, k) - t), std::abs(owen_t(h, -k) + t),
                             std::abs(owen_t(h, 1.0) - 0.5 * phi * (1.0 - phi)),
                             std::abs(owen_t(0.0, k) - std::atan(k) / (2.0 * pi))});
    }

    double erf_worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      const double p = uniform(0.2, 3.0), q = uniform(-3.0, 3.0);
      erf_worst = std::max(erf_worst, std::abs(erf_product_integral_closed(p, q) - erf_product_integral_numeric(p, q)));
    }

    double path_worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      const bool first = i % 2 == 0;
      const double a = uniform(0.05, 3.0), b = uniform(0.05, 3.0), c = uniform(0.05, 3.0);
      const CaseSign s = first ? CaseSign::First : CaseSign::Second;
      const double a1 = first ? a : -a, b1 = first ? b : -b, c1 = first ? -c : c;
      path_worst = std::max(path_worst, std::abs(case_probability(a1, b1, c1, s) -
                                                 detail::case_probability_owen(a1, b1, c1, s)));
    }

    const double octant_mass = std::pow(2.0 * pi, 1.5) / 8.0;
    double cub_worst = 0.0;
    CubatureOptions copts;
    copts.backend = opts_.backend;
    const Integrand3 gauss = [](double u, double v, double w) { return std::exp(-0.5 * (u * u + v * v + w * w)); };
    for (int mask = 0; mask < 8; ++mask) {
      Octant3 oct;
      for (int d = 0; d < 3; ++d) oct.signs[d] = (mask >> d) & 1 ? Sign::Negative : Sign::Positive;
      const auto r = integrate_octant3(gauss, oct, AccuracySpec{1e-11, 1e-12}, copts);
      cub_worst = std::max(cub_worst, std::abs(r.value - octant_mass));
    }

    const bool ok = owen_worst <= 1e-10 && erf_worst <= 1e-8 && path_worst <= 1e-8 && cub_worst <= 1e-9;
    check(8, "identity_suite", ok,
          printf_string("owen %.1e (tol 1e-10); erf-product %.1e (tol 1e-8); owen-vs-arctan %.1e (tol 1e-8); "
                        "gaussian octant %.1e (tol 1e-9)",
                        owen_worst, erf_worst, path_worst, cub_worst));
  }

  VerifyReport take() { return std::move(report_); }

 private:
  VerifyOptions opts_;
  VerifyReport report_;
};

}  // namespace

VerifyReport run_verification(const VerifyOptions& opts) {
  Suite suite(opts);
  suite.capture_suite();
  suite.constants_suite();
  suite.content_suite();
  suite.median_suite();
  suite.quad_suite();
  suite.identity_suite();
  auto report = suite.take();
  std::sort(report.checks.begin(), report.checks.end(),
            [](const CheckResult& a, const CheckResult& b) { return a.id < b.id; });
  return report;
}

}  // namespace gcap
