#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>

namespace gcap {

enum class Method { ClosedForm, Quadrature, MonteCarlo };

std::string_view to_string(Method m);

/// One computed quantity as emitted by the command-line tool.
struct OutputRecord {
  std::string quantity;
  Method method = Method::ClosedForm;
  double value = 0.0;
  /// Standard error for Monte Carlo, error bound for quadrature, 0 for closed forms.
  double stderr_or_tol = 0.0;
  /// Accepted samples (Monte Carlo), integrand evaluations (quadrature), 0 (closed form).
  std::uint64_t n = 0;
  std::optional<std::uint64_t> seed;
  std::optional<double> paper_target;

  static OutputRecord closed_form(std::string quantity, double value, std::optional<double> target = {});
  static OutputRecord quadrature(std::string quantity, double value, double error_bound, std::uint64_t evaluations,
                                 std::optional<double> target = {});
  static OutputRecord monte_carlo(std::string quantity, double value, double std_error, std::uint64_t n,
                                  std::uint64_t seed, std::optional<double> target = {});
};

enum class OutputFormat { Json, Csv };

/// Shortest decimal string that round-trips to the same double.
std::string format_number(double x);

/// quantity[key=value,...] naming for parameterised quantities.
std::string quantity_name(std::string_view base, std::initializer_list<std::pair<std::string_view, double>> params);

/// JSON: one object per line, keys in field order. CSV: header line, then one row per record;
/// absent optional fields are empty cells.
void write_records(std::ostream& out, std::span<const OutputRecord> records, OutputFormat format);

}  // namespace gcap
