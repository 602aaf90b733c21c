#include "gcap/quadrature.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace gcap;

namespace {

constexpr double pi = std::numbers::pi;
const double kOctantMass = std::pow(2.0 * pi, 1.5) / 8.0;

double gauss3(double u, double v, double w) { return std::exp(-0.5 * (u * u + v * v + w * w)); }

std::array<Octant3, 8> all_octants() {
  std::array<Octant3, 8> out;
  for (int m = 0; m < 8; ++m) {
    for (int axis = 0; axis < 3; ++axis) {
      out[m].signs[axis] = (m >> axis) & 1 ? Sign::Negative : Sign::Positive;
    }
  }
  return out;
}

}  // namespace

TEST_CASE("integrate_interval on polynomials and smooth functions") {
  auto r = integrate_interval([](double x) { return x * x; }, 0.0, 1.0);
  CHECK(r.value == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(r.error_estimate <= 1e-10);
  r = integrate_interval([](double x) { return std::sin(x); }, 0.0, pi);
  CHECK(std::abs(r.value - 2.0) <= 1e-12);
  r = integrate_interval([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0);
  CHECK(std::abs(r.value - 2.0) <= 1e-9);
  r = integrate_interval([](double x) { return x; }, 1.0, 0.0);
  CHECK(r.value == doctest::Approx(-0.5).epsilon(1e-15));
}

TEST_CASE("integrate_real_line") {
  auto r = integrate_real_line([](double t) { return std::exp(-0.5 * t * t); });
  CHECK(std::abs(r.value - std::sqrt(2.0 * pi)) <= 1e-10);
  r = integrate_real_line([](double t) { return t * t * std::exp(-t * t); });
  CHECK(std::abs(r.value - 0.5 * std::sqrt(pi)) <= 1e-10);
  r = integrate_real_line([](double t) { return 1.0 / (1.0 + t * t); }, {1e-8, 1e-8});
  CHECK(std::abs(r.value - pi) <= 1e-7);
}

TEST_CASE("integrate_interval budget exhaustion") {
  Quadrature1Options opts;
  opts.max_intervals = 2;
  try {
    (void)integrate_interval([](double x) { return std::sin(50.0 * x) / std::sqrt(x); }, 0.0, 1.0, {1e-14, 1e-14},
                             opts);
    FAIL("expected AccuracyError");
  } catch (const AccuracyError& e) {
    CHECK(std::isfinite(e.best_value()));
    CHECK(e.error_estimate() > 0.0);
  }
}

TEST_CASE("Gaussian octant masses") {
  for (const auto& oct : all_octants()) {
    const auto r = integrate_octant3(gauss3, oct, {1e-11, 1e-11});
    CHECK(std::abs(r.value - kOctantMass) <= 1e-9);
    CHECK(std::abs(r.value - kOctantMass) <= std::max(r.error_estimate, 1e-11) * 10.0);
    CHECK(r.evaluations >= 1);
    CHECK(r.error_estimate >= 0.0);
  }
  const Octant3 mixed{{Sign::Positive, Sign::Positive, Sign::Negative}};
  const auto r = integrate_octant3([](double u, double v, double w) { return pi * gauss3(u, v, w); }, mixed);
  CHECK(std::abs(r.value - pi * kOctantMass) <= 1e-9);
}

TEST_CASE("Gaussian moments against closed forms") {
  const Octant3 pos{};
  const Octant3 neg{{Sign::Negative, Sign::Negative, Sign::Negative}};
  struct Case {
    Integrand3 f;
    double exact;
  };
  const double half_line = std::sqrt(pi / 2.0);
  const std::vector<Case> cases{
      {[](double u, double v, double w) { return u * u * gauss3(u, v, w); }, kOctantMass},
      {[](double u, double v, double w) { return u * v * w * gauss3(u, v, w); }, 1.0},
      {[](double u, double v, double w) { return u * gauss3(u, v, w); }, half_line * half_line},
      {[](double u, double v, double w) { return u * u * v * v * w * w * gauss3(u, v, w); }, kOctantMass},
  };
  for (const auto& c : cases) {
    const AccuracySpec acc{1e-9, 1e-12};
    const auto r = integrate_octant3(c.f, pos, acc);
    CHECK(std::abs(r.value - c.exact) <= std::max(r.error_estimate, acc.abs_tol));
    CHECK(std::abs(r.value - c.exact) <= 1e-8);
  }
  const auto r = integrate_octant3([](double u, double v, double w) { return u * v * w * gauss3(u, v, w); }, neg);
  CHECK(std::abs(r.value + 1.0) <= 1e-9);
}

TEST_CASE("linearity") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2.0, 2.0), s(0.5, 1.5);
  for (int trial = 0; trial < 5; ++trial) {
    const double alpha = u(rng), beta = u(rng);
    const double sx = s(rng), cx = u(rng);
    const Integrand3 f = [&](double a, double b, double c) {
      return std::exp(-0.5 * ((a - cx) * (a - cx) + b * b + c * c) / (sx * sx));
    };
    const Integrand3 g = [&](double a, double b, double c) { return std::cos(a) * gauss3(a, b, c) * (1.0 + b * c); };
    const Integrand3 h = [&](double a, double b, double c) { return alpha * f(a, b, c) + beta * g(a, b, c); };
    const Octant3 oct{{Sign::Negative, Sign::Positive, Sign::Negative}};
    const AccuracySpec acc{1e-9, 1e-12};
    const auto rf = integrate_octant3(f, oct, acc);
    const auto rg = integrate_octant3(g, oct, acc);
    const auto rh = integrate_octant3(h, oct, acc);
    const double bound = rh.error_estimate + std::abs(alpha) * rf.error_estimate + std::abs(beta) * rg.error_estimate;
    CHECK(std::abs(rh.value - (alpha * rf.value + beta * rg.value)) <= bound + 1e-15);
  }
}

TEST_CASE("octant symmetry of an even integrand") {
  const Integrand3 f = [](double u, double v, double w) {
    return (1.0 + u * u * v * v) * std::exp(-0.5 * (u * u + 2.0 * v * v + 0.5 * w * w));
  };
  const AccuracySpec acc{1e-9, 1e-12};
  const double base = integrate_octant3(f, Octant3{}, acc).value;
  for (const auto& oct : all_octants()) {
    CHECK(std::abs(integrate_octant3(f, oct, acc).value - base) <= 2e-9);
  }
}

TEST_CASE("serial and OpenMP backends are bit-identical") {
  const Integrand3 f = [](double u, double v, double w) { return (1.0 + std::atan(u * v / w)) * gauss3(u, v, w); };
  const Octant3 oct{{Sign::Positive, Sign::Positive, Sign::Negative}};
  CubatureOptions serial, parallel;
  serial.backend = Backend::Serial;
  parallel.backend = Backend::OpenMP;
  const auto a = integrate_octant3(f, oct, {1e-9, 1e-12}, serial);
  const auto b = integrate_octant3(f, oct, {1e-9, 1e-12}, parallel);
  CHECK(a.value == b.value);
  CHECK(a.error_estimate == b.error_estimate);
  CHECK(a.evaluations == b.evaluations);
}

TEST_CASE("cubature budget exhaustion and invalid accuracy") {
  CubatureOptions opts;
  opts.max_evaluations = 20'000;
  CHECK_THROWS_AS(integrate_octant3(gauss3, Octant3{}, {1e-14, 1e-14}, opts), AccuracyError);
  CHECK_THROWS_AS(integrate_octant3(gauss3, Octant3{}, {-1.0, 1e-10}), DomainError);
}
