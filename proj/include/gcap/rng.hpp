#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <random>

#include "gcap/geometry.hpp"

namespace gcap {

/// Random stream for one worker.
///
/// Engine: std::mt19937_64 seeded through std::seed_seq with the words
/// {seed low, seed high, worker low, worker high} (32-bit words). Engine and seeding are fully
/// specified by the C++ standard, so the raw bit stream is the same on every platform.
/// Uniforms take the top 53 bits of an engine draw. Normals use the Marsaglia polar
/// method on uniforms in (-1, 1), consuming two uniforms per attempt and caching the
/// second normal of each accepted pair.
class Stream {
 public:
  Stream(std::uint64_t seed, std::uint64_t worker) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(worker), static_cast<std::uint32_t>(worker >> 32)};
    engine_.seed(seq);
  }

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u = 0.0, v = 0.0, s = 0.0;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Point with i.i.d. standard normal coordinates.
template <int Dim>
std::array<double, Dim> sample_gaussian(Stream& s) {
  static_assert(Dim >= 1 && Dim <= 3);
  std::array<double, Dim> p{};
  for (auto& c : p) c = s.normal();
  return p;
}

inline Point2 sample_point2(Stream& s) {
  const double x = s.normal();
  return {x, s.normal()};
}

inline Point3 sample_point3(Stream& s) {
  const double x = s.normal();
  const double y = s.normal();
  return {x, y, s.normal()};
}

}  // namespace gcap
