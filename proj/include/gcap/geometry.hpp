#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace gcap {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

/// Four points with no three collinear and no duplicates.
class DegenerateInputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Signed determinant |p 1; q 1; r 1|, twice the signed area of pqr.
/// Positive when p, q, r turn counterclockwise.
double orient2d(const Point2& p, const Point2& q, const Point2& r);

/// Signed 4x4 determinant |p 1; q 1; r 1; s 1|.
double orient3d(const Point3& p, const Point3& q, const Point3& r, const Point3& s);

/// True iff x lies strictly inside triangle abc: the three determinants obtained by
/// substituting x for each vertex are all positive or all negative. Zeros mean no capture.
bool triangle_captures(const Point2& a, const Point2& b, const Point2& c, const Point2& x);

/// Tetrahedron analogue of triangle_captures, with four 4x4 determinants.
bool tetra_captures(const Point3& a, const Point3& b, const Point3& c, const Point3& d,
                    const Point3& x);

enum class HullKind { Quadrilateral, DegenerateTriangle };

/// Convex hull of four planar points.
struct HullClass {
  HullKind kind = HullKind::Quadrilateral;
  /// Index of the point inside the other three; meaningful only for DegenerateTriangle.
  std::size_t inner_index = 0;
  /// Hull vertices counterclockwise, starting from the lexicographically smallest.
  /// Three entries for DegenerateTriangle, four for Quadrilateral.
  std::vector<std::size_t> hull_order;
};

using Quad = std::array<Point2, 4>;

/// Classifies four points. Throws DegenerateInputError on collinear triples or duplicates.
HullClass hull4_classify(const Point2& a, const Point2& b, const Point2& c, const Point2& d);

/// Non-throwing variant for sampling loops; nullopt on degenerate input.
std::optional<HullClass> try_hull4_classify(const Quad& pts) noexcept;

/// Lengths of consecutive hull edges in hull_order (closing edge last).
/// Throws std::logic_error if `h` does not describe a valid hull of `pts`.
std::vector<double> hull_sides(const HullClass& h, const Quad& pts);
double hull_perimeter(const HullClass& h, const Quad& pts);
/// Shoelace area over hull_order; strictly positive.
double hull_area(const HullClass& h, const Quad& pts);

}  // namespace gcap
