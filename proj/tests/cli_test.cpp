#include "cli.hpp"

#include <doctest.h>

#include <nlohmann/json.hpp>
#include <cmath>
#include <sstream>

#include "gcap/records.hpp"

using namespace gcap;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<nlohmann::json> parse_lines(const std::string& s) {
  std::vector<nlohmann::json> out;
  std::istringstream in(s);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) out.push_back(nlohmann::json::parse(line));
  }
  return out;
}

const nlohmann::json* find(const std::vector<nlohmann::json>& recs, const std::string& quantity,
                           const std::string& method) {
  for (const auto& r : recs) {
    if (r.contains("quantity") && r["quantity"] == quantity && r["method"] == method) return &r;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("record formatting") {
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(1.0) == "1.0");
  CHECK(format_number(0.6490406878163563) == "0.6490406878163563");
  CHECK(quantity_name("q", {}) == "q");
  CHECK(quantity_name("capture_probability", {{"xi", 0.5}, {"eta", 0.0}}) == "capture_probability[xi=0.5,eta=0.0]");

  std::vector<OutputRecord> recs{OutputRecord::closed_form("a", 1.5, 1.5),
                                 OutputRecord::monte_carlo("b,c", 0.25, 0.01, 100, 7)};
  std::ostringstream csv, json;
  write_records(csv, recs, OutputFormat::Csv);
  write_records(json, recs, OutputFormat::Json);
  CHECK(csv.str() ==
        "quantity,method,value,stderr_or_tol,n,seed,paper_target\n"
        "a,closed_form,1.5,0.0,0,,1.5\n"
        "\"b,c\",monte_carlo,0.25,0.01,100,7,\n");
  CHECK(json.str() ==
        "{\"quantity\":\"a\",\"method\":\"closed_form\",\"value\":1.5,\"stderr_or_tol\":0.0,\"n\":0,\"seed\":null,"
        "\"paper_target\":1.5}\n"
        "{\"quantity\":\"b,c\",\"method\":\"monte_carlo\",\"value\":0.25,\"stderr_or_tol\":0.01,\"n\":100,\"seed\":7,"
        "\"paper_target\":null}\n");
}

TEST_CASE("capture quadrature") {
  const auto r = run({"capture", "--xi", "1", "--method", "quadrature"});
  REQUIRE(r.code == cli::kExitOk);
  const auto recs = parse_lines(r.out);
  REQUIRE(recs.size() == 1);
  CHECK(recs[0]["quantity"] == "capture_probability[xi=1.0,eta=0.0]");
  CHECK(recs[0]["method"] == "quadrature");
  CHECK(std::abs(recs[0]["value"].get<double>() - 0.098289) <= 1e-4);
  CHECK(recs[0]["paper_target"].get<double>() == 0.098289);
  CHECK(recs[0]["seed"].is_null());
}

TEST_CASE("capture monte carlo") {
  const auto r = run({"capture", "--xi", "0", "--method", "mc", "--samples", "1000000", "--seed", "42"});
  REQUIRE(r.code == cli::kExitOk);
  const auto recs = parse_lines(r.out);
  REQUIRE(recs.size() == 1);
  const double v = recs[0]["value"], se = recs[0]["stderr_or_tol"];
  CHECK(std::abs(v - 0.25) <= 3.0 * se);
  CHECK(recs[0]["seed"] == 42);
  CHECK(recs[0]["n"] == 1000000);
}

TEST_CASE("global flags may precede the subcommand") {
  const auto a = run({"--seed", "5", "--samples", "1000", "--workers", "2", "content", "--method", "mc"});
  const auto b = run({"content", "--method", "mc", "--seed", "5", "--samples", "1000", "--workers", "2"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("constants") {
  const auto r = run({"constants"});
  REQUIRE(r.code == 0);
  const auto recs = parse_lines(r.out);
  const auto* theta = find(recs, "theta", "closed_form");
  REQUIRE(theta != nullptr);
  CHECK((*theta)["value"].get<double>() == doctest::Approx(0.6490406878163563).epsilon(1e-15));
  CHECK((*theta)["n"] == 0);
  CHECK(find(recs, "gaussian_volume_3d", "closed_form") != nullptr);
}

TEST_CASE("every method record carries a target when one exists") {
  for (const auto& cmd : std::vector<std::vector<std::string>>{
           {"content", "--dim", "2"}, {"content", "--dim", "3"}, {"median", "--dim", "1"}, {"triangle-stats"}}) {
    auto args = cmd;
    args.insert(args.end(), {"--samples", "20000", "--workers", "2"});
    const auto r = run(args);
    REQUIRE(r.code == 0);
    const auto recs = parse_lines(r.out);
    bool saw_closed = false, saw_mc = false;
    for (const auto& rec : recs) {
      saw_closed |= rec["method"] == "closed_form";
      if (rec["method"] == "monte_carlo") {
        saw_mc = true;
        CHECK_FALSE(rec["seed"].is_null());
      } else {
        CHECK(rec["n"] == 0);
      }
    }
    CHECK(saw_closed);
    CHECK(saw_mc);
    CHECK_FALSE(recs.front()["paper_target"].is_null());
  }
}

TEST_CASE("quad-stats, median --dim 2 and content-variance") {
  auto r = run({"quad-stats", "--samples", "20000", "--workers", "2"});
  REQUIRE(r.code == 0);
  auto recs = parse_lines(r.out);
  CHECK(find(recs, "side_corr_adjacent[hull_vertices=4]", "monte_carlo") != nullptr);
  CHECK(find(recs, "rayleigh_ratio[hull_vertices=3]", "monte_carlo") != nullptr);
  CHECK(find(recs, "p_quadrilateral", "closed_form") != nullptr);

  r = run({"median", "--dim", "2", "--samples", "20000", "--workers", "2"});
  REQUIRE(r.code == 0);
  CHECK(find(parse_lines(r.out), "inner_point_variance[dim=2]", "monte_carlo") != nullptr);

  r = run({"content-variance", "--samples", "500", "--inner", "100", "--workers", "2"});
  REQUIRE(r.code == 0);
  recs = parse_lines(r.out);
  const auto* var = find(recs, "content_variance[dim=2]", "monte_carlo");
  REQUIRE(var != nullptr);
  CHECK((*var)["n"] == 500);

  r = run({"content-variance", "--exact", "--samples", "500", "--workers", "2"});
  REQUIRE(r.code == 0);
}

TEST_CASE("median histogram") {
  const auto r = run({"median", "--histogram", "--method", "mc", "--samples", "10000", "--workers", "2"});
  REQUIRE(r.code == 0);
  int bins = 0;
  for (const auto& rec : parse_lines(r.out)) {
    if (rec["quantity"].get<std::string>().rfind("median_histogram_density[", 0) == 0) ++bins;
  }
  CHECK(bins == 101);
}

TEST_CASE("density") {
  auto r = run({"density", "--at", "0", "--at", "1.5"});
  REQUIRE(r.code == 0);
  auto recs = parse_lines(r.out);
  const auto* f0 = find(recs, "median_density[x=0.0]", "closed_form");
  REQUIRE(f0 != nullptr);
  CHECK((*f0)["value"].get<double>() == doctest::Approx(0.59841342).epsilon(1e-8));
  CHECK(find(recs, "median_reference_density[x=1.5]", "closed_form") != nullptr);

  r = run({"density", "--grid", "--points", "5"});
  REQUIRE(r.code == 0);
  CHECK(find(parse_lines(r.out), "median_density[x=-4.0]", "closed_form") != nullptr);
}

TEST_CASE("csv output") {
  const auto r = run({"--format", "csv", "constants"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("quantity,method,value,stderr_or_tol,n,seed,paper_target\n", 0) == 0);
  CHECK(r.out.find("\ntheta,closed_form,0.6490406878163562,0.0,0,,") != std::string::npos);
}

TEST_CASE("same arguments give byte-identical output") {
  const std::vector<std::string> args{"quad-stats", "--samples", "30000", "--seed", "9", "--workers", "3"};
  CHECK(run(args).out == run(args).out);
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == cli::kExitUsage);
  CHECK(run({"bogus"}).code == cli::kExitUsage);
  CHECK(run({"constants", "--nope"}).code == cli::kExitUsage);
  CHECK(run({"content", "--dim", "4"}).code == cli::kExitUsage);
  CHECK(run({"median", "--dim", "3"}).code == cli::kExitUsage);
  CHECK(run({"--format", "xml", "constants"}).code == cli::kExitUsage);
  CHECK(run({"--samples", "0", "constants"}).code == cli::kExitUsage);
  CHECK(run({"density", "--at", "1", "--grid"}).code == cli::kExitUsage);
  CHECK(run({"capture", "--xi", "nan"}).code == cli::kExitUsage);
  const auto acc = run({"capture", "--xi", "1", "--tol", "1e-16"});
  CHECK(acc.code == cli::kExitAccuracy);
  CHECK_FALSE(acc.err.empty());
  const auto help = run({"--help"});
  CHECK(help.code == cli::kExitOk);
  CHECK(help.out.find("capture") != std::string::npos);
}
