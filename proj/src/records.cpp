#include "gcap/records.hpp"

#include <nlohmann/json.hpp>
#include <utility>

namespace gcap {

std::string_view to_string(Method m) {
  switch (m) {
    case Method::ClosedForm:
      return "closed_form";
    case Method::Quadrature:
      return "quadrature";
    case Method::MonteCarlo:
      return "monte_carlo";
  }
  return "unknown";
}

OutputRecord OutputRecord::closed_form(std::string quantity, double value, std::optional<double> target) {
  return {std::move(quantity), Method::ClosedForm, value, 0.0, 0, std::nullopt, target};
}

OutputRecord OutputRecord::quadrature(std::string quantity, double value, double error_bound,
                                      std::uint64_t evaluations, std::optional<double> target) {
  return {std::move(quantity), Method::Quadrature, value, error_bound, evaluations, std::nullopt, target};
}

OutputRecord OutputRecord::monte_carlo(std::string quantity, double value, double std_error, std::uint64_t n,
                                       std::uint64_t seed, std::optional<double> target) {
  return {std::move(quantity), Method::MonteCarlo, value, std_error, n, seed, target};
}

std::string format_number(double x) { return nlohmann::json(x).dump(); }

std::string quantity_name(std::string_view base, std::initializer_list<std::pair<std::string_view, double>> params) {
  std::string s(base);
  if (params.size() == 0) return s;
  s += '[';
  bool first = true;
  for (const auto& [key, value] : params) {
    if (!first) s += ',';
    first = false;
    s += key;
    s += '=';
    s += format_number(value);
  }
  s += ']';
  return s;
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

}  // namespace

void write_records(std::ostream& out, std::span<const OutputRecord> records, OutputFormat format) {
  if (format == OutputFormat::Csv) {
    out << "quantity,method,value,stderr_or_tol,n,seed,paper_target\n";
    for (const auto& r : records) {
      out << csv_escape(r.quantity) << ',' << to_string(r.method) << ',' << format_number(r.value) << ','
          << format_number(r.stderr_or_tol) << ',' << r.n << ',';
      if (r.seed) out << *r.seed;
      out << ',';
      if (r.paper_target) out << format_number(*r.paper_target);
      out << '\n';
    }
    return;
  }
  for (const auto& r : records) {
    nlohmann::ordered_json j;
    j["quantity"] = r.quantity;
    j["method"] = std::string(to_string(r.method));
    j["value"] = r.value;
    j["stderr_or_tol"] = r.stderr_or_tol;
    j["n"] = r.n;
    j["seed"] = r.seed ? nlohmann::ordered_json(*r.seed) : nlohmann::ordered_json(nullptr);
    j["paper_target"] = r.paper_target ? nlohmann::ordered_json(*r.paper_target) : nlohmann::ordered_json(nullptr);
    out << j.dump() << '\n';
  }
}

}  // namespace gcap
