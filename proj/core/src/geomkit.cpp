#include "eigdiag/geomkit.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <string>

namespace eigdiag {

namespace {

bool all_finite(std::span<const Point2> pts) {
  return std::all_of(pts.begin(), pts.end(),
                     [](Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); });
}

bool has_near_duplicates(std::span<const Point2> pts, double tol) {
  // consecutive duplicates are the ones that matter for strict convexity;
  // for simple polygons any pair collapses the boundary, so check all.
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (distance(pts[i], pts[j]) <= tol) return true;
  return false;
}

bool segments_intersect(Point2 a, Point2 b, Point2 c, Point2 d) {
  auto orient = [](Point2 p, Point2 q, Point2 r) {
    const double v = cross(q - p, r - p);
    return (v > 0) - (v < 0);
  };
  auto on_segment = [](Point2 p, Point2 q, Point2 r) {
    return std::min(p.x, q.x) <= r.x && r.x <= std::max(p.x, q.x) &&
           std::min(p.y, q.y) <= r.y && r.y <= std::max(p.y, q.y);
  };
  const int o1 = orient(a, b, c), o2 = orient(a, b, d);
  const int o3 = orient(c, d, a), o4 = orient(c, d, b);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(a, b, c)) return true;
  if (o2 == 0 && on_segment(a, b, d)) return true;
  if (o3 == 0 && on_segment(c, d, a)) return true;
  if (o4 == 0 && on_segment(c, d, b)) return true;
  return false;
}

bool is_simple(std::span<const Point2> pts) {
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = pts[i], b = pts[(i + 1) % n];
    for (std::size_t j = i + 1; j < n; ++j) {
      // adjacent edges share an endpoint by construction
      if (j == i + 1 || (i == 0 && j == n - 1)) continue;
      if (segments_intersect(a, b, pts[j], pts[(j + 1) % n])) return false;
    }
  }
  return true;
}

BasicMetrics basic_metrics_impl(std::span<const Point2> pts) {
  const std::size_t n = pts.size();
  double a2 = 0.0, cx = 0.0, cy = 0.0, perim = 0.0;
  // shift by the first vertex to keep the shoelace sums well conditioned
  const Point2 o = pts[0];
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 p = pts[i] - o, q = pts[(i + 1) % n] - o;
    const double c = cross(p, q);
    a2 += c;
    cx += (p.x + q.x) * c;
    cy += (p.y + q.y) * c;
    perim += distance(pts[i], pts[(i + 1) % n]);
  }
  const double area = 0.5 * a2;
  double xmin = pts[0].x, xmax = pts[0].x, ymin = pts[0].y, ymax = pts[0].y;
  for (Point2 p : pts) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  const double box = (xmax - xmin) * (ymax - ymin);
  if (!(area >= 1e-14 * box) || area <= 0.0)
    throw Error(ErrorCode::DegenerateShape, "polygon area " + std::to_string(area) +
                                                " is negligible against its bounding box");
  return {area, perim, Point2{o.x + cx / (3.0 * a2), o.y + cy / (3.0 * a2)}};
}

std::vector<Point2> scaled_points(std::span<const Point2> pts, double factor, Point2 origin) {
  std::vector<Point2> out;
  out.reserve(pts.size());
  for (Point2 p : pts) out.push_back(origin + factor * (p - origin));
  return out;
}

}  // namespace

double signed_area2(std::span<const Point2> pts) noexcept {
  double s = 0.0;
  const std::size_t n = pts.size();
  if (n < 3) return 0.0;
  const Point2 o = pts[0];
  for (std::size_t i = 1; i + 1 < n; ++i) s += cross(pts[i] - o, pts[i + 1] - o);
  return s;
}

double bbox_scale(std::span<const Point2> pts) noexcept {
  if (pts.empty()) return 0.0;
  double xmin = pts[0].x, xmax = pts[0].x, ymin = pts[0].y, ymax = pts[0].y;
  for (Point2 p : pts) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  return std::max(xmax - xmin, ymax - ymin);
}

bool is_strictly_convex(std::span<const Point2> pts) {
  const std::size_t n = pts.size();
  if (n < 3 || !all_finite(pts)) return false;
  const double scale = bbox_scale(pts);
  if (!(scale > 0.0)) return false;
  const double len_tol = kGeomRelTol * scale;
  const double cross_tol = kGeomRelTol * scale * scale;
  double turning = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = pts[i], b = pts[(i + 1) % n], c = pts[(i + 2) % n];
    const Point2 e1 = b - a, e2 = c - b;
    if (norm(e1) <= len_tol) return false;
    const double cr = cross(e1, e2);
    if (!(cr > cross_tol)) return false;
    turning += std::atan2(cr, dot(e1, e2));
  }
  // strictly left turns everywhere give turning = 2*pi*k; only k = 1 is convex
  return std::abs(turning - 2.0 * std::numbers::pi) < 1e-6;
}

ConvexPolygon::ConvexPolygon(std::vector<Point2> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.size() < 3)
    throw Error(ErrorCode::NotConvex, "convex polygon needs at least 3 vertices");
  if (!all_finite(vertices_)) throw Error(ErrorCode::InvalidInput, "non-finite vertex coordinate");
  if (signed_area2(vertices_) < 0.0) std::reverse(vertices_.begin(), vertices_.end());
  if (!is_strictly_convex(vertices_))
    throw Error(ErrorCode::NotConvex, "vertices are not in strictly convex position (" +
                                          std::to_string(vertices_.size()) + " vertices)");
}

SimplePolygon::SimplePolygon(std::vector<Point2> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.size() < 3)
    throw Error(ErrorCode::NotSimple, "polygon needs at least 3 vertices");
  if (!all_finite(vertices_)) throw Error(ErrorCode::InvalidInput, "non-finite vertex coordinate");
  const double s2 = signed_area2(vertices_);
  if (s2 == 0.0) throw Error(ErrorCode::DegenerateShape, "polygon has zero signed area");
  if (s2 < 0.0) std::reverse(vertices_.begin(), vertices_.end());
  if (has_near_duplicates(vertices_, kGeomRelTol * bbox_scale(vertices_)))
    throw Error(ErrorCode::NotSimple, "polygon has coincident vertices");
  if (!is_simple(vertices_)) throw Error(ErrorCode::NotSimple, "polygon boundary self-intersects");
}

SimplePolygon::SimplePolygon(const ConvexPolygon& poly)
    : vertices_(poly.vertices().begin(), poly.vertices().end()) {}

BasicMetrics basic_metrics(const SimplePolygon& poly) { return basic_metrics_impl(poly.vertices()); }
BasicMetrics basic_metrics(const ConvexPolygon& poly) { return basic_metrics_impl(poly.vertices()); }

namespace {

// Twice the area of triangle (a, b, c); positive for CCW.
double tri2(Point2 a, Point2 b, Point2 c) { return cross(b - a, c - a); }

struct CaliperResult {
  double diameter;
  double width;
};

CaliperResult rotating_calipers(std::span<const Point2> p) {
  const std::size_t n = p.size();
  double diam2 = 0.0;
  double width = std::numeric_limits<double>::infinity();
  std::size_t j = 1;
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = p[i], b = p[(i + 1) % n];
    // advance to the vertex farthest from the supporting line of edge (a, b)
    while (tri2(a, b, p[(j + 1) % n]) > tri2(a, b, p[j])) j = (j + 1) % n;
    const double len = distance(a, b);
    width = std::min(width, tri2(a, b, p[j]) / len);
    // j + 1 covers the tie when the opposite edge is parallel to (a, b)
    const Point2 q = p[(j + 1) % n];
    const Point2 d1 = p[j] - a, d2 = p[j] - b, d3 = q - a, d4 = q - b;
    diam2 = std::max({diam2, dot(d1, d1), dot(d2, d2), dot(d3, d3), dot(d4, d4)});
  }
  return {std::sqrt(diam2), width};
}

// Sutherland-Hodgman step: keep the part of a convex polygon with
// dot(normal, p - base) >= offset.
std::vector<Point2> clip(const std::vector<Point2>& poly, Point2 normal, Point2 base, double offset) {
  std::vector<Point2> out;
  const std::size_t n = poly.size();
  out.reserve(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 p = poly[i], q = poly[(i + 1) % n];
    const double sp = dot(normal, p - base) - offset;
    const double sq = dot(normal, q - base) - offset;
    if (sp >= 0) out.push_back(p);
    if ((sp >= 0) != (sq >= 0)) {
      const double t = sp / (sp - sq);
      out.push_back(p + t * (q - p));
    }
  }
  return out;
}

}  // namespace

double diameter(const ConvexPolygon& poly) { return rotating_calipers(poly.vertices()).diameter; }

double min_width(const ConvexPolygon& poly) { return rotating_calipers(poly.vertices()).width; }

Incircle inradius(const ConvexPolygon& poly) {
  const auto v = poly.vertices();
  const std::size_t n = v.size();
  std::vector<Point2> normals(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 e = v[(i + 1) % n] - v[i];
    normals[i] = (1.0 / norm(e)) * Point2{-e.y, e.x};
  }
  auto region = [&](double rho) {
    std::vector<Point2> r(v.begin(), v.end());
    for (std::size_t i = 0; i < n && r.size() >= 1; ++i) r = clip(r, normals[i], v[i], rho);
    return r;
  };
  double lo = 0.0;
  double hi = 0.5 * min_width(poly) * (1.0 + 1e-12);
  std::vector<Point2> best(v.begin(), v.end());
  for (int it = 0; it < 200 && hi - lo > 1e-16 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    auto r = region(mid);
    if (!r.empty()) {
      lo = mid;
      best = std::move(r);
    } else {
      hi = mid;
    }
  }
  Point2 c{};
  for (Point2 p : best) c = c + p;
  c = (1.0 / static_cast<double>(best.size())) * c;
  double clearance = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) clearance = std::min(clearance, dot(normals[i], c - v[i]));
  return {clearance, c};
}

ShapeMetrics metrics(const ConvexPolygon& poly) {
  const BasicMetrics b = basic_metrics(poly);
  const CaliperResult cal = rotating_calipers(poly.vertices());
  return {b.area, b.perimeter, cal.diameter, inradius(poly).radius, cal.width, b.centroid};
}

ShapeMetrics metrics(const SimplePolygon& poly) {
  const BasicMetrics b = basic_metrics(poly);
  const ConvexPolygon hull = convex_hull(poly.vertices());
  const CaliperResult cal = rotating_calipers(hull.vertices());
  return {b.area, b.perimeter, cal.diameter, std::numeric_limits<double>::quiet_NaN(), cal.width,
          b.centroid};
}

ConvexPolygon convex_hull(std::span<const Point2> pts) {
  std::vector<Point2> p(pts.begin(), pts.end());
  std::sort(p.begin(), p.end(), [](Point2 a, Point2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  p.erase(std::unique(p.begin(), p.end()), p.end());
  if (p.size() < 3) throw Error(ErrorCode::DegenerateShape, "hull of fewer than 3 distinct points");
  std::vector<Point2> h(2 * p.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    while (k >= 2 && cross(h[k - 1] - h[k - 2], p[i] - h[k - 2]) <= 0) --k;
    h[k++] = p[i];
  }
  for (std::size_t i = p.size() - 1, t = k + 1; i > 0; --i) {
    while (k >= t && cross(h[k - 1] - h[k - 2], p[i - 1] - h[k - 2]) <= 0) --k;
    h[k++] = p[i - 1];
  }
  h.resize(k - 1);
  return ConvexPolygon(std::move(h));
}

ConvexPolygon scaled(const ConvexPolygon& poly, double factor, Point2 origin) {
  if (!(factor > 0.0)) throw Error(ErrorCode::InvalidParam, "scale factor must be positive");
  return ConvexPolygon(scaled_points(poly.vertices(), factor, origin));
}

SimplePolygon scaled(const SimplePolygon& poly, double factor, Point2 origin) {
  if (!(factor > 0.0)) throw Error(ErrorCode::InvalidParam, "scale factor must be positive");
  return SimplePolygon(scaled_points(poly.vertices(), factor, origin));
}

ConvexPolygon normalize_unit_area(const ConvexPolygon& poly) {
  const BasicMetrics b = basic_metrics(poly);
  return scaled(poly, 1.0 / std::sqrt(b.area), b.centroid);
}

SimplePolygon normalize_unit_area(const SimplePolygon& poly) {
  const BasicMetrics b = basic_metrics(poly);
  return scaled(poly, 1.0 / std::sqrt(b.area), b.centroid);
}

}  // namespace eigdiag
