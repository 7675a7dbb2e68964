#pragma once

// Reference computations used only by tests. Each one takes a different route
// from the library code it checks: brute force instead of calipers, edge
// triples instead of clipping, cotangent weights instead of gradients.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <utility>
#include <vector>

#include "eigdiag/geomkit.hpp"
#include "eigdiag/meshkit.hpp"

namespace oracle {

using eigdiag::Point2;

inline constexpr double pi = std::numbers::pi;
inline constexpr double j01 = 2.404825557695773;
inline constexpr double j11p = 1.841183781340659;

inline double shoelace(const std::vector<Point2>& p) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Point2& a = p[i];
    const Point2& b = p[(i + 1) % p.size()];
    s += a.x * b.y - b.x * a.y;
  }
  return 0.5 * s;
}

inline double diameter(const std::vector<Point2>& p) {
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j) d = std::max(d, std::hypot(p[i].x - p[j].x, p[i].y - p[j].y));
  return d;
}

// For a convex polygon the minimal width is attained with one supporting line
// through an edge: min over edges of the farthest vertex distance.
inline double width(const std::vector<Point2>& p) {
  double w = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Point2 a = p[i], b = p[(i + 1) % p.size()];
    const double len = std::hypot(b.x - a.x, b.y - a.y);
    double far = 0.0;
    for (const Point2& q : p) far = std::max(far, std::abs((b.x - a.x) * (q.y - a.y) - (b.y - a.y) * (q.x - a.x)) / len);
    w = std::min(w, far);
  }
  return w;
}

// Distance from q to the supporting line of edge i (positive inside, CCW).
inline double edge_clearance(const std::vector<Point2>& p, std::size_t i, Point2 q) {
  const Point2 a = p[i], b = p[(i + 1) % p.size()];
  const double len = std::hypot(b.x - a.x, b.y - a.y);
  return ((b.x - a.x) * (q.y - a.y) - (b.y - a.y) * (q.x - a.x)) / len;
}

inline double clearance(const std::vector<Point2>& p, Point2 q) {
  double c = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < p.size(); ++i) c = std::min(c, edge_clearance(p, i, q));
  return c;
}

struct Circle {
  double r = 0.0;
  Point2 c;
};

// Solves a 3x3 system by Cramer's rule; false when singular.
inline bool solve3(const std::array<std::array<double, 3>, 3>& a, const std::array<double, 3>& b,
                   std::array<double, 3>& x) {
  auto det = [](const std::array<std::array<double, 3>, 3>& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  };
  const double d = det(a);
  if (std::abs(d) < 1e-14) return false;
  for (int c = 0; c < 3; ++c) {
    auto m = a;
    for (int r = 0; r < 3; ++r) m[r][c] = b[r];
    x[c] = det(m) / d;
  }
  return true;
}

// Largest inscribed circle by enumerating every triple of edge lines: the
// optimum of the LP max r s.t. clearance_i(q) >= r sits where three of the
// constraints are tight.
inline Circle inradius_by_triples(const std::vector<Point2>& p) {
  const std::size_t m = p.size();
  // clearance_i(q) = n_i . q + off_i, with n_i the unit inward normal
  std::vector<std::array<double, 3>> rows;
  for (std::size_t i = 0; i < m; ++i) {
    const Point2 a = p[i], b = p[(i + 1) % m];
    const double len = std::hypot(b.x - a.x, b.y - a.y);
    const double nx = -(b.y - a.y) / len, ny = (b.x - a.x) / len;
    rows.push_back({nx, ny, -(nx * a.x + ny * a.y)});
  }
  Circle best;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      for (std::size_t k = j + 1; k < m; ++k) {
        const std::array<std::array<double, 3>, 3> a = {{{rows[i][0], rows[i][1], -1.0},
                                                         {rows[j][0], rows[j][1], -1.0},
                                                         {rows[k][0], rows[k][1], -1.0}}};
        const std::array<double, 3> rhs = {-rows[i][2], -rows[j][2], -rows[k][2]};
        std::array<double, 3> sol{};
        if (!solve3(a, rhs, sol) || sol[2] <= best.r) continue;
        if (clearance(p, {sol[0], sol[1]}) >= sol[2] - 1e-9 * std::max(1.0, sol[2])) best = {sol[2], {sol[0], sol[1]}};
      }
  return best;
}

// P1 stiffness of one triangle by the cotangent formula:
// K_ij = -cot(angle opposite edge ij) / 2, K_ii = -sum of the row.
inline std::array<std::array<double, 3>, 3> cotangent_stiffness(Point2 a, Point2 b, Point2 c) {
  const Point2 v[3] = {a, b, c};
  std::array<std::array<double, 3>, 3> k{};
  for (int o = 0; o < 3; ++o) {
    const Point2 p = v[o], q = v[(o + 1) % 3], r = v[(o + 2) % 3];
    const double ux = q.x - p.x, uy = q.y - p.y, wx = r.x - p.x, wy = r.y - p.y;
    const double cot = (ux * wx + uy * wy) / std::abs(ux * wy - uy * wx);
    const int i = (o + 1) % 3, j = (o + 2) % 3;
    k[i][j] = k[j][i] = -0.5 * cot;
  }
  for (int i = 0; i < 3; ++i) k[i][i] = -(k[i][(i + 1) % 3] + k[i][(i + 2) % 3]);
  return k;
}

// Unique undirected edges of a triangle list.
inline std::size_t edge_count(const eigdiag::TriMesh& m) {
  std::set<std::pair<int, int>> e;
  for (const auto& t : m.triangles())
    for (int i = 0; i < 3; ++i) {
      const int a = t[static_cast<std::size_t>(i)], b = t[static_cast<std::size_t>((i + 1) % 3)];
      e.insert({std::min(a, b), std::max(a, b)});
    }
  return e.size();
}

// Closed forms at unit area.
inline double square_lambda1() { return 2.0 * pi * pi; }
inline double square_mu1() { return pi * pi; }
inline double equilateral_x() { return 4.0 * pi * pi / std::sqrt(3.0); }
inline double equilateral_y() { return 4.0 * std::sqrt(3.0) * pi * pi / 9.0; }
// a x b rectangle, a >= b
inline double rectangle_lambda1(double a, double b) { return pi * pi * (1.0 / (a * a) + 1.0 / (b * b)); }
inline double rectangle_mu1(double a, double /*b*/) { return pi * pi / (a * a); }
inline double disc_x() { return pi * j01 * j01; }
inline double disc_y() { return pi * j11p * j11p; }

// (C(2n-2, n-1) / n!)^2 in long double
inline long double convexity_probability(int n) {
  long double c = 1.0L;
  for (int k = 1; k <= n - 1; ++k) c = c * static_cast<long double>(n - 1 + k) / static_cast<long double>(k);
  long double f = 1.0L;
  for (int k = 2; k <= n; ++k) f *= static_cast<long double>(k);
  const long double q = c / f;
  return q * q;
}

inline std::vector<Point2> regular(int n, double circumradius, double phase = 0.0) {
  std::vector<Point2> p;
  for (int i = 0; i < n; ++i) {
    const double t = phase + 2.0 * pi * i / n;
    p.push_back({circumradius * std::cos(t), circumradius * std::sin(t)});
  }
  return p;
}

inline std::vector<Point2> box(double a, double b) { return {{0, 0}, {a, 0}, {a, b}, {0, b}}; }

}  // namespace oracle
