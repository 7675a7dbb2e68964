#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "eigdiag/error.hpp"

namespace eigdiag {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Point2 operator+(Point2 a, Point2 b) noexcept { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point2 operator-(Point2 a, Point2 b) noexcept { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point2 operator*(double s, Point2 a) noexcept { return {s * a.x, s * a.y}; }
  friend constexpr bool operator==(Point2 a, Point2 b) noexcept = default;
};

constexpr double dot(Point2 a, Point2 b) noexcept { return a.x * b.x + a.y * b.y; }
constexpr double cross(Point2 a, Point2 b) noexcept { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) noexcept { return std::hypot(a.x, a.y); }
inline double distance(Point2 a, Point2 b) noexcept { return norm(b - a); }

/// Twice the signed area of the closed polygon (positive when CCW).
double signed_area2(std::span<const Point2> pts) noexcept;

/// Largest side of the axis-aligned bounding box; the length scale used by
/// every relative geometric tolerance in this library.
double bbox_scale(std::span<const Point2> pts) noexcept;

inline constexpr double kGeomRelTol = 1e-12;

/// True iff the points are in CCW order, pairwise distinct at 1e-12 * scale,
/// turn strictly left at every vertex (cross > 1e-12 * scale^2) and wind
/// exactly once.
bool is_strictly_convex(std::span<const Point2> pts);

/// Strictly convex polygon, vertices stored counterclockwise. Clockwise input
/// is reversed; anything else that is not strictly convex throws NotConvex.
class ConvexPolygon {
 public:
  explicit ConvexPolygon(std::vector<Point2> vertices);

  std::span<const Point2> vertices() const noexcept { return vertices_; }
  std::size_t size() const noexcept { return vertices_.size(); }
  const Point2& operator[](std::size_t i) const noexcept { return vertices_[i]; }

 private:
  std::vector<Point2> vertices_;
};

/// Simple (non self-intersecting) polygon, vertices stored counterclockwise.
class SimplePolygon {
 public:
  explicit SimplePolygon(std::vector<Point2> vertices);
  SimplePolygon(const ConvexPolygon& poly);  // NOLINT: every convex polygon is simple

  std::span<const Point2> vertices() const noexcept { return vertices_; }
  std::size_t size() const noexcept { return vertices_.size(); }
  const Point2& operator[](std::size_t i) const noexcept { return vertices_[i]; }

 private:
  std::vector<Point2> vertices_;
};

struct BasicMetrics {
  double area = 0.0;
  double perimeter = 0.0;
  Point2 centroid;
};

BasicMetrics basic_metrics(const SimplePolygon& poly);
BasicMetrics basic_metrics(const ConvexPolygon& poly);

/// Rotating calipers over antipodal pairs.
double diameter(const ConvexPolygon& poly);

/// Minimal distance between two parallel supporting lines (rotating calipers).
double min_width(const ConvexPolygon& poly);

struct Incircle {
  double radius = 0.0;
  Point2 center;
};

/// Largest inscribed disc. Bisection on the radius of the inner parallel
/// body (half-plane clipping); the returned radius is the exact clearance of
/// the returned center, so the circle it describes is always feasible.
Incircle inradius(const ConvexPolygon& poly);

struct ShapeMetrics {
  double area = 0.0;
  double perimeter = 0.0;
  double diameter = 0.0;
  double inradius = 0.0;
  double width = 0.0;
  Point2 centroid;
};

ShapeMetrics metrics(const ConvexPolygon& poly);

/// Metrics of a non-convex polygon: diameter and width are those of the
/// convex hull (both functionals are hull invariant); inradius is NaN.
ShapeMetrics metrics(const SimplePolygon& poly);

/// Andrew monotone chain; collinear points are dropped.
ConvexPolygon convex_hull(std::span<const Point2> pts);

ConvexPolygon scaled(const ConvexPolygon& poly, double factor, Point2 origin = {});
SimplePolygon scaled(const SimplePolygon& poly, double factor, Point2 origin = {});

/// Homothety about the centroid bringing the area to 1.
ConvexPolygon normalize_unit_area(const ConvexPolygon& poly);
SimplePolygon normalize_unit_area(const SimplePolygon& poly);

}  // namespace eigdiag
