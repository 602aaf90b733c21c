#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <optional>
#include <thread>

#include <nlohmann/json.hpp>

#include "gcap/analytic.hpp"
#include "gcap/monte_carlo.hpp"
#include "gcap/records.hpp"
#include "gcap/verify.hpp"

namespace gcap::cli {

namespace {

enum class MethodChoice { All, ClosedForm, Quadrature, MonteCarlo };

struct GlobalFlags {
  std::uint64_t seed = kDefaultSeed;
  std::size_t samples = 1'000'000;
  std::size_t workers = 0;
  double tol = 1e-7;
  std::string format = "json";
  bool samples_given = false;
  bool workers_given = false;

  RunConfig run_config(std::size_t default_samples) const {
    RunConfig cfg;
    cfg.seed = seed;
    cfg.samples = samples_given ? samples : default_samples;
    cfg.workers = workers;
    return cfg;
  }
};

const std::map<std::string, MethodChoice> kMethodNames{
    {"all", MethodChoice::All},
    {"closed_form", MethodChoice::ClosedForm},
    {"quadrature", MethodChoice::Quadrature},
    {"mc", MethodChoice::MonteCarlo},
    {"monte_carlo", MethodChoice::MonteCarlo},
};

bool wants(MethodChoice chosen, MethodChoice m) { return chosen == MethodChoice::All || chosen == m; }

OutputRecord mc_record(std::string quantity, const Estimate& e, std::optional<double> target = {}) {
  return OutputRecord::monte_carlo(std::move(quantity), e.mean, e.std_error, e.n, e.seed, target);
}

std::optional<double> capture_target(double xi, double eta) {
  const double r = std::hypot(xi, eta);
  for (const auto& e : kCaptureTable) {
    if (std::abs(e.xi - r) <= 1e-12) return e.probability;
  }
  return std::nullopt;
}

std::size_t machine_workers() {
  const unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gaussian capture, median and quadrilateral statistics"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalFlags g;
  app.add_option("--seed", g.seed, "Monte Carlo seed")->capture_default_str();
  auto* samples_opt = app.add_option("--samples", g.samples, "Monte Carlo sample count")
                          ->check(CLI::PositiveNumber)
                          ->capture_default_str();
  auto* workers_opt =
      app.add_option("--workers", g.workers, "Independent random streams (default: machine parallelism)")
          ->check(CLI::PositiveNumber);
  app.add_option("--tol", g.tol, "Absolute tolerance of each capture octant integral")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();

  std::vector<OutputRecord> records;

  // capture
  auto* capture = app.add_subcommand("capture", "Probability that a Gaussian triangle contains (xi, eta)");
  std::vector<double> xis;
  for (const auto& e : kCaptureTable) xis.push_back(e.xi);
  double eta = 0.0;
  MethodChoice capture_method = MethodChoice::Quadrature;
  capture->add_option("--xi", xis, "Location abscissa (repeatable)")->capture_default_str();
  capture->add_option("--eta", eta, "Location ordinate")->capture_default_str();
  capture->add_option("--method", capture_method, "quadrature | mc | all")
      ->transform(CLI::CheckedTransformer(kMethodNames, CLI::ignore_case));

  // content
  auto* content = app.add_subcommand("content", "Expected probability content of a Gaussian simplex");
  int content_dim = 2;
  MethodChoice content_method = MethodChoice::All;
  content->add_option("--dim", content_dim, "2 (triangle) or 3 (tetrahedron)")->check(CLI::IsMember({2, 3}));
  content->add_option("--method", content_method, "closed_form | mc | all")
      ->transform(CLI::CheckedTransformer(kMethodNames, CLI::ignore_case));

  // content-variance
  auto* cvar = app.add_subcommand("content-variance", "Variance of the probability content of a Gaussian triangle");
  std::size_t inner = 1000;
  bool exact = false;
  cvar->add_option("--inner", inner, "Inner probes per triangle (nested estimate)")->check(CLI::Range(2, 100'000'000));
  cvar->add_flag("--exact", exact, "Exact per-triangle content via Owen's T instead of inner probes");

  // median
  auto* median = app.add_subcommand("median", "Median of three normals (dim 1) or inner point of four (dim 2)");
  int median_dim = 1;
  bool histogram = false;
  MethodChoice median_method = MethodChoice::All;
  median->add_option("--dim", median_dim, "1 or 2")->check(CLI::IsMember({1, 2}));
  median->add_flag("--histogram", histogram, "Also emit the 101-bin empirical density (dim 1)");
  median->add_option("--method", median_method, "closed_form | mc | all")
      ->transform(CLI::CheckedTransformer(kMethodNames, CLI::ignore_case));

  // quad-stats
  auto* quad = app.add_subcommand("quad-stats", "Hull statistics of four Gaussian points");
  MethodChoice quad_method = MethodChoice::All;
  quad->add_option("--method", quad_method, "closed_form | mc | all")
      ->transform(CLI::CheckedTransformer(kMethodNames, CLI::ignore_case));

  // triangle-stats
  auto* tri = app.add_subcommand("triangle-stats", "Area and perimeter of a Gaussian triangle");
  MethodChoice tri_method = MethodChoice::All;
  tri->add_option("--method", tri_method, "closed_form | mc | all")
      ->transform(CLI::CheckedTransformer(kMethodNames, CLI::ignore_case));

  // constants
  auto* consts = app.add_subcommand("constants", "Closed-form constants");

  // density
  auto* density = app.add_subcommand("density", "Median density of three normals and its normal reference");
  std::vector<double> at;
  bool grid = false;
  double lo = -4.0, hi = 4.0;
  int points = 81;
  auto* at_opt = density->add_option("--at", at, "Evaluation points (repeatable)");
  auto* grid_opt = density->add_flag("--grid", grid, "Evaluate on a uniform grid over [--lo, --hi]");
  at_opt->excludes(grid_opt);
  density->add_option("--lo", lo)->capture_default_str();
  density->add_option("--hi", hi)->capture_default_str();
  density->add_option("--points", points)->check(CLI::Range(2, 1'000'000))->capture_default_str();

  // verify
  auto* verify = app.add_subcommand("verify", "Run the acceptance suite with fixed sample sizes");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "run with --help for usage\n";
    return kExitUsage;
  }
  g.samples_given = samples_opt->count() > 0;
  g.workers_given = workers_opt->count() > 0;
  if (!g.workers_given) g.workers = machine_workers();
  const OutputFormat format = g.format == "csv" ? OutputFormat::Csv : OutputFormat::Json;

  try {
    const auto c = constants();
    const AccuracySpec capture_acc{g.tol, 1e-12};

    if (*capture) {
      for (double xi : xis) {
        const auto name = quantity_name("capture_probability", {{"xi", xi}, {"eta", eta}});
        const auto target = capture_target(xi, eta);
        if (wants(capture_method, MethodChoice::Quadrature) || capture_method == MethodChoice::ClosedForm) {
          const auto r = capture_probability_at(xi, eta, capture_acc);
          records.push_back(OutputRecord::quadrature(name, r.probability, r.error_estimate, r.evaluations, target));
        }
        if (wants(capture_method, MethodChoice::MonteCarlo)) {
          records.push_back(mc_record(name, estimate_capture(xi, eta, g.run_config(1'000'000)), target));
        }
      }
    } else if (*content) {
      const double exact_value = content_dim == 2 ? c.expected_content_2d : c.gaussian_volume_3d;
      const auto name = "expected_content[dim=" + std::to_string(content_dim) + "]";
      if (wants(content_method, MethodChoice::ClosedForm)) {
        records.push_back(OutputRecord::closed_form(name, exact_value, exact_value));
      }
      if (wants(content_method, MethodChoice::MonteCarlo)) {
        records.push_back(mc_record(name, estimate_expected_content(content_dim, g.run_config(1'000'000)), exact_value));
      }
    } else if (*cvar) {
      ContentVarianceOptions opts;
      opts.inner_probes = inner;
      opts.method = exact ? ContentMethod::OwenExact : ContentMethod::NestedMonteCarlo;
      const auto r = estimate_content_variance_2d(g.run_config(10'000), opts);
      records.push_back(mc_record("content_mean[dim=2]", r.content_mean, c.expected_content_2d));
      records.push_back(mc_record("content_variance[dim=2]", r.content_variance));
    } else if (*median && median_dim == 1) {
      if (wants(median_method, MethodChoice::ClosedForm)) {
        records.push_back(OutputRecord::closed_form("median_variance[dim=1]", c.median_variance_1d, c.median_variance_1d));
      }
      if (wants(median_method, MethodChoice::MonteCarlo)) {
        const auto m = estimate_median_stats_1d(g.run_config(1'000'000));
        records.push_back(mc_record("median_variance[dim=1]", m.variance, c.median_variance_1d));
        records.push_back(mc_record("median_mean[dim=1]", m.mean, 0.0));
        records.push_back(OutputRecord::monte_carlo("median_histogram_chi2_pvalue[density=true]", m.fit_true.p_value,
                                                    0.0, m.variance.n, m.variance.seed));
        records.push_back(OutputRecord::monte_carlo("median_histogram_chi2_pvalue[density=reference_normal]",
                                                    m.fit_reference.p_value, 0.0, m.variance.n, m.variance.seed));
        if (histogram) {
          const auto& h = m.histogram;
          const double n = static_cast<double>(h.total());
          const double w = h.bin_width();
          for (std::size_t i = 0; i < h.counts.size(); ++i) {
            const double centre = h.lo + w * (static_cast<double>(i) + 0.5);
            const double count = static_cast<double>(h.counts[i]);
            records.push_back(OutputRecord::monte_carlo(quantity_name("median_histogram_density", {{"x", centre}}),
                                                        count / (n * w), std::sqrt(count) / (n * w), h.counts[i],
                                                        m.variance.seed, median_density_1d(centre)));
          }
        }
      }
    } else if (*median) {
      if (wants(median_method, MethodChoice::ClosedForm)) {
        records.push_back(OutputRecord::closed_form("inner_point_acceptance[dim=2]", c.one_minus_theta, c.one_minus_theta));
      }
      if (wants(median_method, MethodChoice::MonteCarlo)) {
        const auto m = estimate_inner_point_variance_2d(g.run_config(1'000'000));
        records.push_back(mc_record("inner_point_variance[dim=2]", m.variance, reference::kInnerPointVariance));
        records.push_back(mc_record("inner_point_mean[dim=2]", m.mean, 0.0));
        records.push_back(mc_record("inner_point_acceptance[dim=2]", m.acceptance, c.one_minus_theta));
      }
    } else if (*quad) {
      if (wants(quad_method, MethodChoice::ClosedForm)) {
        records.push_back(OutputRecord::closed_form("p_quadrilateral", c.theta, c.theta));
        records.push_back(OutputRecord::closed_form("hull4_area", c.expected_area_quad, c.expected_area_quad));
        records.push_back(
            OutputRecord::closed_form("hull4_perimeter", c.expected_perimeter_quad, c.expected_perimeter_quad));
      }
      if (wants(quad_method, MethodChoice::MonteCarlo)) {
        const auto q = estimate_quad_stats(g.run_config(1'000'000));
        records.push_back(mc_record("p_quadrilateral", q.p_quadrilateral, c.theta));
        records.push_back(mc_record("hull4_area", q.area, c.expected_area_quad));
        records.push_back(mc_record("hull4_perimeter", q.perimeter, c.expected_perimeter_quad));
        records.push_back(mc_record("side_mean[hull_vertices=3]", q.side_mean_tri, reference::kSideMeanTri));
        records.push_back(mc_record("side_sq_mean[hull_vertices=3]", q.side_sq_tri, reference::kSideSqTri));
        records.push_back(mc_record("side_mean[hull_vertices=4]", q.side_mean_quad, reference::kSideMeanQuad));
        records.push_back(mc_record("side_sq_mean[hull_vertices=4]", q.side_sq_quad, reference::kSideSqQuad));
        records.push_back(mc_record("side_corr_adjacent[hull_vertices=4]", q.corr_adjacent));
        records.push_back(mc_record("side_corr_disjoint[hull_vertices=4]", q.corr_disjoint));
        const auto r = non_rayleigh_check(q);
        records.push_back(OutputRecord::monte_carlo("rayleigh_ratio[hull_vertices=3]", r.ratio_tri, r.stderr_tri,
                                                    q.side_mean_tri.n, q.side_mean_tri.seed));
        records.push_back(OutputRecord::monte_carlo("rayleigh_ratio[hull_vertices=4]", r.ratio_quad, r.stderr_quad,
                                                    q.side_mean_quad.n, q.side_mean_quad.seed));
      }
    } else if (*tri) {
      if (wants(tri_method, MethodChoice::ClosedForm)) {
        records.push_back(OutputRecord::closed_form("triangle_area", c.expected_area_triangle, c.expected_area_triangle));
        records.push_back(
            OutputRecord::closed_form("triangle_perimeter", c.expected_perimeter_triangle, c.expected_perimeter_triangle));
      }
      if (wants(tri_method, MethodChoice::MonteCarlo)) {
        const auto t = estimate_triangle_stats(g.run_config(1'000'000));
        records.push_back(mc_record("triangle_area", t.area, c.expected_area_triangle));
        records.push_back(mc_record("triangle_perimeter", t.perimeter, c.expected_perimeter_triangle));
      }
    } else if (*consts) {
      records.push_back(OutputRecord::closed_form("theta", c.theta, reference::kTheta));
      records.push_back(OutputRecord::closed_form("one_minus_theta", c.one_minus_theta, reference::kOneMinusTheta));
      records.push_back(
          OutputRecord::closed_form("expected_content_2d", c.expected_content_2d, reference::kExpectedContent2d));
      records.push_back(
          OutputRecord::closed_form("gaussian_volume_3d", c.gaussian_volume_3d, reference::kGaussianVolume3d));
      records.push_back(OutputRecord::closed_form("median_variance_1d", c.median_variance_1d));
      records.push_back(OutputRecord::closed_form("expected_area_quad", c.expected_area_quad));
      records.push_back(
          OutputRecord::closed_form("expected_perimeter_quad", c.expected_perimeter_quad, reference::kExpectedPerimeterQuad));
      records.push_back(OutputRecord::closed_form("expected_area_triangle", c.expected_area_triangle));
      records.push_back(OutputRecord::closed_form("expected_perimeter_triangle", c.expected_perimeter_triangle));
    } else if (*density) {
      std::vector<double> xs = at;
      if (grid || xs.empty()) {
        xs.clear();
        for (int i = 0; i < points; ++i) xs.push_back(lo + (hi - lo) * i / (points - 1));
      }
      for (double x : xs) {
        records.push_back(OutputRecord::closed_form(quantity_name("median_density", {{"x", x}}), median_density_1d(x)));
        records.push_back(OutputRecord::closed_form(quantity_name("median_reference_density", {{"x", x}}),
                                                    median_reference_density_1d(x)));
      }
      const auto gap = median_density_gap();
      records.push_back(OutputRecord::closed_form(quantity_name("median_density_sup_gap", {{"at_x", gap.at_x}}),
                                                  gap.sup_norm));
    } else if (*verify) {
      VerifyOptions vopts;
      vopts.seed = g.seed;
      vopts.capture_tol = g.tol;
      if (g.workers_given) vopts.workers = g.workers;
      const auto report = run_verification(vopts);
      write_records(out, report.records, format);
      if (format == OutputFormat::Json) {
        for (const auto& chk : report.checks) {
          nlohmann::ordered_json j;
          j["criterion"] = chk.id;
          j["name"] = chk.name;
          j["passed"] = chk.passed;
          j["detail"] = chk.detail;
          out << j.dump() << '\n';
        }
      } else {
        out << "\ncriterion,name,passed,detail\n";
        for (const auto& chk : report.checks) {
          out << chk.id << ',' << chk.name << ',' << (chk.passed ? "true" : "false") << ",\"" << chk.detail << "\"\n";
        }
      }
      return report.all_passed() ? kExitOk : kExitCheckFailed;
    }
  } catch (const AccuracyError& e) {
    err << "accuracy error: " << e.what() << " (best " << format_number(e.best_value()) << ", error estimate "
        << format_number(e.error_estimate()) << ")\n";
    return kExitAccuracy;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return kExitUsage;
  }

  write_records(out, records, format);
  return kExitOk;
}

}  // namespace gcap::cli
