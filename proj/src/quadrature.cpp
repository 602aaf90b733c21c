#include "gcap/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <numeric>
#include <queue>
#include <vector>

namespace gcap {

namespace {

// Kahan-Babuska-Neumaier compensated sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// ---------------------------------------------------------------------------
// Gauss-Kronrod 7/15 on a single interval (QUADPACK qk15 constants and error scaling).

constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Interval {
  double a, b, value, error;
  bool operator<(const Interval& o) const { return error < o.error; }
};

Interval gk15(const Integrand1& f, double a, double b) {
  const double centr = 0.5 * (a + b);
  const double hlgth = 0.5 * (b - a);
  const double dhlgth = std::abs(hlgth);
  const double fc = f(centr);
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  double resabs = std::abs(resk);
  double fv1[7], fv2[7];
  for (int j = 0; j < 7; ++j) {
    const double absc = hlgth * kXgk[j];
    fv1[j] = f(centr - absc);
    fv2[j] = f(centr + absc);
    const double fsum = fv1[j] + fv2[j];
    resk += kWgk[j] * fsum;
    resabs += kWgk[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
    if (j % 2 == 1) resg += kWg[j / 2] * fsum;
  }
  const double reskh = resk * 0.5;
  double resasc = kWgk[7] * std::abs(fc - reskh);
  for (int j = 0; j < 7; ++j) resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));

  const double result = resk * hlgth;
  resabs *= dhlgth;
  resasc *= dhlgth;
  double err = std::abs((resk - resg) * hlgth);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr double uflow = std::numeric_limits<double>::min();
  if (resabs > uflow / (50.0 * eps)) err = std::max(eps * 50.0 * resabs, err);
  return {a, b, result, err};
}

// ---------------------------------------------------------------------------
// Gauss-Legendre rule on [-1, 1] by Newton iteration on P_m.

struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussLegendre gauss_legendre(int m) {
  GaussLegendre r;
  r.nodes.resize(m);
  r.weights.resize(m);
  for (int i = 0; i < m; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= m; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = m * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= m; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = m * (x * p1 - p0) / (x * x - 1.0);
    r.nodes[i] = x;
    r.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Octant cubature in compactified coordinates s in (0, 1)^3.

struct Panel {
  std::array<double, 3> lo{};
  std::array<double, 3> hi{};
  double whole = 0.0;                           // tensor rule over the whole panel
  std::array<std::array<double, 2>, 3> halves{};  // rule over each half, per axis
  double value = 0.0;
  double error = 0.0;
  int axis = 0;
};

class OctantRule {
 public:
  OctantRule(const Integrand3& f, const Octant3& oct, int order) : f_(f), rule_(gauss_legendre(order)) {
    for (int i = 0; i < 3; ++i) sign_[i] = oct.signs[i] == Sign::Positive ? 1.0 : -1.0;
  }

  std::size_t evaluations_per_rule() const {
    const std::size_t m = rule_.nodes.size();
    return m * m * m;
  }

  // Tensor Gauss-Legendre estimate over a box of compactified coordinates.
  double box(const std::array<double, 3>& lo, const std::array<double, 3>& hi) const {
    const std::size_t m = rule_.nodes.size();
    // u = s / (1 - s), du/ds = 1 / (1 - s)^2
    double u[3][kMaxOrder], w[3][kMaxOrder];
    for (int d = 0; d < 3; ++d) {
      const double c = 0.5 * (lo[d] + hi[d]);
      const double h = 0.5 * (hi[d] - lo[d]);
      for (std::size_t i = 0; i < m; ++i) {
        const double s = c + h * rule_.nodes[i];
        const double one_minus = 1.0 - s;
        u[d][i] = sign_[d] * s / one_minus;
        w[d][i] = h * rule_.weights[i] / (one_minus * one_minus);
      }
    }
    double total = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      double plane = 0.0;
      for (std::size_t j = 0; j < m; ++j) {
        double line = 0.0;
        for (std::size_t k = 0; k < m; ++k) line += w[2][k] * f_(u[0][i], u[1][j], u[2][k]);
        plane += w[1][j] * line;
      }
      total += w[0][i] * plane;
    }
    return total;
  }

  // Fills halves, value, error and split axis, given panel.whole.
  void refine_estimate(Panel& p) const {
    double worst = -1.0;
    for (int d = 0; d < 3; ++d) {
      const double mid = 0.5 * (p.lo[d] + p.hi[d]);
      auto hi_left = p.hi;
      hi_left[d] = mid;
      auto lo_right = p.lo;
      lo_right[d] = mid;
      p.halves[d][0] = box(p.lo, hi_left);
      p.halves[d][1] = box(lo_right, p.hi);
      const double diff = std::abs(p.halves[d][0] + p.halves[d][1] - p.whole);
      if (diff > worst) {
        worst = diff;
        p.axis = d;
      }
    }
    p.value = p.halves[p.axis][0] + p.halves[p.axis][1];
    p.error = worst;
  }

  static constexpr std::size_t kMaxOrder = 32;

 private:
  const Integrand3& f_;
  GaussLegendre rule_;
  double sign_[3]{};
};

// Runs body(i) for i in [0, n). Each index must write only its own outputs.
template <class Body>
void for_each_index(std::size_t n, Backend backend, Body&& body) {
  if (backend == Backend::Serial) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

CubatureResult integrate_interval(const Integrand1& f, double a, double b, const AccuracySpec& acc,
                                  const Quadrature1Options& opts) {
  acc.validate();
  require_finite(a, "integrate_interval");
  require_finite(b, "integrate_interval");
  if (a == b) return {0.0, 0.0, 0};

  std::priority_queue<Interval> heap;
  heap.push(gk15(f, a, b));
  std::size_t evals = 15;
  double total = heap.top().value;
  double error = heap.top().error;

  while (error > acc.target(total)) {
    if (heap.size() >= opts.max_intervals) {
      throw AccuracyError("integrate_interval: subdivision budget exhausted", total, error);
    }
    const Interval worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= std::min(worst.a, worst.b) || mid >= std::max(worst.a, worst.b)) {
      throw AccuracyError("integrate_interval: interval cannot be subdivided further", total, error);
    }
    const Interval left = gk15(f, worst.a, mid);
    const Interval right = gk15(f, mid, worst.b);
    heap.push(left);
    heap.push(right);
    evals += 30;
    total += (left.value + right.value) - worst.value;
    error += (left.error + right.error) - worst.error;
  }

  // Final sums from scratch; the running totals only steer the loop.
  CompensatedSum v, e;
  for (; !heap.empty(); heap.pop()) {
    v.add(heap.top().value);
    e.add(heap.top().error);
  }
  total = v.value();
  error = e.value();
  return {total, error, evals};
}

CubatureResult integrate_real_line(const Integrand1& f, const AccuracySpec& acc, const Quadrature1Options& opts) {
  const auto mapped = [&f](double u) {
    const double one_minus = 1.0 - u * u;
    if (one_minus <= 0.0) return 0.0;
    const double t = u / one_minus;
    const double v = f(t);
    if (v == 0.0) return 0.0;
    return v * (1.0 + u * u) / (one_minus * one_minus);
  };
  return integrate_interval(mapped, -1.0, 1.0, acc, opts);
}

CubatureResult integrate_octant3(const Integrand3& f, const Octant3& oct, const AccuracySpec& acc,
                                 const CubatureOptions& opts) {
  acc.validate();
  if (opts.order < 1 || static_cast<std::size_t>(opts.order) > OctantRule::kMaxOrder) {
    throw DomainError("integrate_octant3: order must be in [1, 32]");
  }
  if (opts.initial_divisions < 1) throw DomainError("integrate_octant3: initial_divisions must be positive");

  const OctantRule rule(f, oct, opts.order);
  const std::size_t per_rule = rule.evaluations_per_rule();

  std::vector<Panel> panels;
  const int n0 = opts.initial_divisions;
  panels.reserve(static_cast<std::size_t>(n0) * n0 * n0);
  for (int i = 0; i < n0; ++i) {
    for (int j = 0; j < n0; ++j) {
      for (int k = 0; k < n0; ++k) {
        Panel p;
        p.lo = {static_cast<double>(i) / n0, static_cast<double>(j) / n0, static_cast<double>(k) / n0};
        p.hi = {static_cast<double>(i + 1) / n0, static_cast<double>(j + 1) / n0, static_cast<double>(k + 1) / n0};
        panels.push_back(p);
      }
    }
  }
  std::size_t evals = panels.size() * 7 * per_rule;
  if (evals > opts.max_evaluations) {
    throw AccuracyError("integrate_octant3: evaluation budget below initial grid cost", 0.0,
                        std::numeric_limits<double>::infinity());
  }
  for_each_index(panels.size(), opts.backend, [&](std::size_t i) {
    panels[i].whole = rule.box(panels[i].lo, panels[i].hi);
    rule.refine_estimate(panels[i]);
  });

  std::vector<std::size_t> order;
  std::vector<Panel> children;
  for (;;) {
    CompensatedSum value_sum, error_sum;
    for (const auto& p : panels) {
      value_sum.add(p.value);
      error_sum.add(p.error);
    }
    const double value = value_sum.value();
    const double error = error_sum.value();
    const double target = acc.target(value);
    if (error <= target) return {value, error, evals};

    // Split the largest-error panels until, were their errors to vanish, the rest
    // would fit in half the target.
    order.resize(panels.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return panels[a].error > panels[b].error; });
    std::size_t picked = 0;
    double removed = 0.0;
    while (picked < order.size() && (picked == 0 || error - removed > 0.5 * target)) {
      removed += panels[order[picked]].error;
      ++picked;
    }
    std::sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(picked));

    const std::size_t cost = picked * 2 * 6 * per_rule;
    if (evals + cost > opts.max_evaluations) {
      throw AccuracyError("integrate_octant3: evaluation budget exhausted", value, error);
    }
    evals += cost;

    children.assign(picked * 2, Panel{});
    for (std::size_t c = 0; c < picked; ++c) {
      const Panel& parent = panels[order[c]];
      const int d = parent.axis;
      const double mid = 0.5 * (parent.lo[d] + parent.hi[d]);
      Panel& left = children[2 * c];
      Panel& right = children[2 * c + 1];
      left.lo = parent.lo;
      left.hi = parent.hi;
      left.hi[d] = mid;
      left.whole = parent.halves[d][0];
      right.lo = parent.lo;
      right.lo[d] = mid;
      right.hi = parent.hi;
      right.whole = parent.halves[d][1];
    }
    for_each_index(children.size(), opts.backend, [&](std::size_t i) { rule.refine_estimate(children[i]); });

    for (std::size_t c = 0; c < picked; ++c) {
      panels[order[c]] = children[2 * c];
      panels.push_back(children[2 * c + 1]);
    }
  }
}

}  // namespace gcap
