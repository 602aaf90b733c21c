#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "gcap/monte_carlo.hpp"
#include "gcap/records.hpp"

namespace gcap {

struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<OutputRecord> records;
  std::vector<CheckResult> checks;

  bool all_passed() const;
};

struct VerifyOptions {
  std::uint64_t seed = kDefaultSeed;
  /// Fixed so the report does not depend on the machine's core count.
  std::size_t workers = 8;
  /// Absolute tolerance for each capture-probability octant integral.
  double capture_tol = 1e-7;
  Backend backend = Backend::OpenMP;
};

/// Reference decimals used by the constants check (printed to 25 digits where available).
namespace reference {
inline constexpr double kTheta = 0.6490406878163563789748666;
inline constexpr double kOneMinusTheta = 0.3509593121836436210251333;
inline constexpr double kExpectedContent2d = 0.0877398280459109052562833;
inline constexpr double kGaussianVolume3d = 0.0195693767448337562290498;
inline constexpr double kMedianVariance1d = 0.448671104578207950488673501687;  // 1 - sqrt(3)/pi
inline constexpr double kExpectedAreaQuad = 1.73205080756887729352744634151;   // sqrt(3)
inline constexpr double kExpectedPerimeterQuad = 6.4677562192310137839669010;
inline constexpr double kExpectedPerimeterTriangle = 5.31736155271654808189450245002;  // 3 sqrt(pi)
inline constexpr double kInnerPointVariance = 0.36;
inline constexpr double kSideMeanTri = 2.11, kSideSqTri = 5.32;
inline constexpr double kSideMeanQuad = 1.45, kSideSqQuad = 2.78;
}  // namespace reference

/// Runs the full acceptance suite (capture table, Monte Carlo cross-checks, constants,
/// median and quadrilateral suites, identity suite) with fixed sample sizes.
/// Output depends only on `opts`.
VerifyReport run_verification(const VerifyOptions& opts = {});

}  // namespace gcap
