#include "gcap/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gcap {

namespace {

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

bool lex_less(const Point2& p, const Point2& q) { return p.x < q.x || (p.x == q.x && p.y < q.y); }

double distance(const Point2& p, const Point2& q) { return std::hypot(q.x - p.x, q.y - p.y); }

// Rotates `idx` so it starts at the lexicographically smallest point; orientation unchanged.
void start_at_lex_min(std::vector<std::size_t>& idx, const Quad& pts) {
  const auto first = std::min_element(idx.begin(), idx.end(),
                                      [&](std::size_t a, std::size_t b) { return lex_less(pts[a], pts[b]); });
  std::rotate(idx.begin(), first, idx.end());
}

void check_consistent(const HullClass& h, const Quad& pts) {
  const std::size_t expected = h.kind == HullKind::Quadrilateral ? 4 : 3;
  if (h.hull_order.size() != expected) throw std::logic_error("hull: vertex count does not match hull kind");
  for (std::size_t i : h.hull_order) {
    if (i >= 4) throw std::logic_error("hull: vertex index out of range");
    if (h.kind == HullKind::DegenerateTriangle && i == h.inner_index) {
      throw std::logic_error("hull: inner point listed as a hull vertex");
    }
  }
  const std::size_t m = h.hull_order.size();
  for (std::size_t i = 0; i < m; ++i) {
    const double o = orient2d(pts[h.hull_order[i]], pts[h.hull_order[(i + 1) % m]], pts[h.hull_order[(i + 2) % m]]);
    if (!(o > 0.0)) throw std::logic_error("hull: vertices are not in counterclockwise convex order");
  }
  if (h.kind == HullKind::DegenerateTriangle) {
    const auto& o = h.hull_order;
    if (h.inner_index >= 4 || !triangle_captures(pts[o[0]], pts[o[1]], pts[o[2]], pts[h.inner_index])) {
      throw std::logic_error("hull: inner point is not inside the hull triangle");
    }
  }
}

}  // namespace

double orient2d(const Point2& p, const Point2& q, const Point2& r) {
  return (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
}

double orient3d(const Point3& p, const Point3& q, const Point3& r, const Point3& s) {
  // |p 1; q 1; r 1; s 1| = -det[q - p; r - p; s - p]
  const double ax = q.x - p.x, ay = q.y - p.y, az = q.z - p.z;
  const double bx = r.x - p.x, by = r.y - p.y, bz = r.z - p.z;
  const double cx = s.x - p.x, cy = s.y - p.y, cz = s.z - p.z;
  return -(ax * (by * cz - bz * cy) - ay * (bx * cz - bz * cx) + az * (bx * cy - by * cx));
}

bool triangle_captures(const Point2& a, const Point2& b, const Point2& c, const Point2& x) {
  const int s1 = sign_of(orient2d(x, b, c));
  const int s2 = sign_of(orient2d(a, x, c));
  const int s3 = sign_of(orient2d(a, b, x));
  return s1 != 0 && s1 == s2 && s2 == s3;
}

bool tetra_captures(const Point3& a, const Point3& b, const Point3& c, const Point3& d, const Point3& x) {
  const int s1 = sign_of(orient3d(x, b, c, d));
  const int s2 = sign_of(orient3d(a, x, c, d));
  const int s3 = sign_of(orient3d(a, b, x, d));
  const int s4 = sign_of(orient3d(a, b, c, x));
  return s1 != 0 && s1 == s2 && s2 == s3 && s3 == s4;
}

std::optional<HullClass> try_hull4_classify(const Quad& pts) noexcept {
  // General position: every triple strictly oriented (this also excludes duplicates).
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) {
      for (std::size_t k = j + 1; k < 4; ++k) {
        if (orient2d(pts[i], pts[j], pts[k]) == 0.0) return std::nullopt;
      }
    }
  }

  HullClass h;
  int inner_count = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    std::size_t others[3];
    std::size_t m = 0;
    for (std::size_t j = 0; j < 4; ++j) {
      if (j != i) others[m++] = j;
    }
    if (triangle_captures(pts[others[0]], pts[others[1]], pts[others[2]], pts[i])) {
      ++inner_count;
      h.kind = HullKind::DegenerateTriangle;
      h.inner_index = i;
      h.hull_order.assign(others, others + 3);
    }
  }
  if (inner_count > 1) return std::nullopt;

  if (h.kind == HullKind::DegenerateTriangle) {
    auto& o = h.hull_order;
    if (orient2d(pts[o[0]], pts[o[1]], pts[o[2]]) < 0.0) std::swap(o[1], o[2]);
    start_at_lex_min(o, pts);
    return h;
  }

  // Convex position: sort the other three counterclockwise around the lexicographic minimum.
  // Every point then lies to the left of the minimum, so the angular order is a total order.
  std::vector<std::size_t> o{0, 1, 2, 3};
  start_at_lex_min(o, pts);
  const Point2 pivot = pts[o[0]];
  std::sort(o.begin() + 1, o.end(),
            [&](std::size_t a, std::size_t b) { return orient2d(pivot, pts[a], pts[b]) > 0.0; });
  for (std::size_t i = 0; i < 4; ++i) {
    if (!(orient2d(pts[o[i]], pts[o[(i + 1) % 4]], pts[o[(i + 2) % 4]]) > 0.0)) return std::nullopt;
  }
  h.kind = HullKind::Quadrilateral;
  h.hull_order = std::move(o);
  return h;
}

HullClass hull4_classify(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
  const Quad pts{a, b, c, d};
  for (const auto& p : pts) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw DegenerateInputError("hull4_classify: non-finite point");
  }
  auto h = try_hull4_classify(pts);
  if (!h) throw DegenerateInputError("hull4_classify: collinear triple or repeated point");
  return *std::move(h);
}

std::vector<double> hull_sides(const HullClass& h, const Quad& pts) {
  check_consistent(h, pts);
  const std::size_t m = h.hull_order.size();
  std::vector<double> sides(m);
  for (std::size_t i = 0; i < m; ++i) sides[i] = distance(pts[h.hull_order[i]], pts[h.hull_order[(i + 1) % m]]);
  return sides;
}

double hull_perimeter(const HullClass& h, const Quad& pts) {
  double total = 0.0;
  for (double s : hull_sides(h, pts)) total += s;
  return total;
}

double hull_area(const HullClass& h, const Quad& pts) {
  check_consistent(h, pts);
  const std::size_t m = h.hull_order.size();
  double twice = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const Point2& p = pts[h.hull_order[i]];
    const Point2& q = pts[h.hull_order[(i + 1) % m]];
    twice += p.x * q.y - q.x * p.y;
  }
  return 0.5 * twice;
}

}  // namespace gcap
