#include <doctest.h>

#include <cmath>
#include <numeric>

#include "eigdiag/eigensolve.hpp"
#include "eigdiag/shapegen.hpp"
#include "oracles.hpp"

using namespace eigdiag;
using doctest::Approx;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

TriMesh scaled(const TriMesh& m, double t) {
  std::vector<Point2> nodes = m.nodes();
  for (Point2& p : nodes) p = {p.x * t, p.y * t};
  return TriMesh(nodes, m.triangles());
}

// ||K u - lambda M u|| / ||M u|| in the Euclidean norm over the rows the
// problem owns (interior rows for Dirichlet), from scratch.
double euclidean_residual(const TriMesh& m, const Assembly& a, const std::vector<double>& u, double lambda,
                          bool dirichlet) {
  const std::vector<double> ku = a.stiffness.multiply(u), mu = a.mass.multiply(u);
  double r = 0.0, d = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (dirichlet && m.is_boundary(static_cast<int>(i))) continue;
    r += (ku[i] - lambda * mu[i]) * (ku[i] - lambda * mu[i]);
    d += mu[i] * mu[i];
  }
  return std::sqrt(r / d);
}

}  // namespace

TEST_SUITE("eigensolve") {
  TEST_CASE("element matrices on the reference triangle") {
    const TriMesh t({{0, 0}, {1, 0}, {0, 1}}, {{0, 1, 2}});
    const Assembly a = assemble(t);
    const double want[3][3] = {{1, -0.5, -0.5}, {-0.5, 0.5, 0}, {-0.5, 0, 0.5}};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        CHECK(a.stiffness(i, j) == Approx(want[i][j]).epsilon(1e-15));
        CHECK(a.mass(i, j) == Approx((i == j ? 2.0 : 1.0) / 24.0).epsilon(1e-15));
      }
  }

  TEST_CASE("assembly matches the cotangent formula and partitions unity") {
    const TriMesh m = refine(triangulate_convex(valtr_random(9, 21)), 2);
    const Assembly a = assemble(m);
    std::vector<std::vector<double>> dense(m.node_count(), std::vector<double>(m.node_count(), 0.0));
    for (const auto& t : m.triangles()) {
      const auto& n = m.nodes();
      const auto k = oracle::cotangent_stiffness(n[static_cast<std::size_t>(t[0])], n[static_cast<std::size_t>(t[1])],
                                                 n[static_cast<std::size_t>(t[2])]);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          dense[static_cast<std::size_t>(t[static_cast<std::size_t>(i)])][static_cast<std::size_t>(t[static_cast<std::size_t>(j)])] +=
              k[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    double worst = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < m.node_count(); ++i)
      for (std::size_t j = 0; j < m.node_count(); ++j) {
        worst = std::max(worst, std::abs(a.stiffness(static_cast<int>(i), static_cast<int>(j)) - dense[i][j]));
        scale = std::max(scale, std::abs(dense[i][j]));
      }
    CHECK(worst <= 1e-12 * scale);

    const std::vector<double> ones(m.node_count(), 1.0);
    const std::vector<double> m1 = a.mass.multiply(ones);
    CHECK(std::accumulate(m1.begin(), m1.end(), 0.0) == Approx(total_area(m)).epsilon(1e-13));
    for (double v : a.stiffness.multiply(ones)) CHECK(std::abs(v) < 1e-12 * scale);
  }

  TEST_CASE("unit square") {
    const ShapeSolution s = solve_shape(ConvexPolygon(oracle::box(1, 1)));
    CHECK(rel(s.lambda1.best(), oracle::square_lambda1()) < 1e-3);
    CHECK(rel(s.mu1.best(), oracle::square_mu1()) < 1e-3);
    CHECK(rel(s.point.F, 2 * std::pow(oracle::pi, 4)) < 2e-3);
    CHECK(s.point.F == s.point.x * s.point.y);
    CHECK(s.lambda1.error_estimate.has_value());
    CHECK(s.mu1.nodes >= 20000);
  }

  TEST_CASE("eigenvalues of the disc, triangle and a rectangle") {
    const ConvexPolygon disc = regular_ngon(128, oracle::pi);
    const TriMesh dm = refine(triangulate_convex(disc), 5);
    CHECK(rel(dirichlet_lambda1(dm).eigenvalue, oracle::j01 * oracle::j01) < 5e-3);
    CHECK(rel(neumann_mu1(dm).eigenvalue, oracle::j11p * oracle::j11p) < 5e-3);

    const TriMesh tri = refine(triangulate_convex(ConvexPolygon({{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2}})), 5);
    CHECK(rel(dirichlet_lambda1(tri).eigenvalue, 16 * oracle::pi * oracle::pi / 3) < 5e-3);

    // unit-area 2 x 0.5 rectangle through the full pipeline
    CHECK(rel(solve_shape(rectangle(4.0)).mu1.best(), oracle::pi * oracle::pi / 4) < 2e-3);
  }

  TEST_CASE("solve_shape on the disc and the equilateral triangle") {
    const ShapeSolution d = solve_shape(regular_ngon(128, oracle::pi));
    CHECK(rel(d.point.x, oracle::disc_x()) < 1e-2);
    CHECK(rel(d.point.y, oracle::disc_y()) < 1e-2);
    const ShapeSolution t = solve_shape(isosceles_triangle(oracle::pi / 3));
    CHECK(rel(t.point.x, oracle::equilateral_x()) < 1e-2);
    CHECK(rel(t.point.y, oracle::equilateral_y()) < 1e-2);
  }

  TEST_CASE("residual invariant and monotone convergence from above") {
    const TriMesh base = triangulate_convex(ConvexPolygon(oracle::box(1, 1)));
    double prev_l = INFINITY, prev_m = INFINITY;
    for (int level = 2; level <= 5; ++level) {
      const TriMesh m = refine(base, level);
      const Assembly a = assemble(m);
      const EigenResult l = dirichlet_lambda1(m, a), u = neumann_mu1(m, a);
      CHECK(l.residual <= 1e-8 * l.eigenvalue);
      CHECK(u.residual <= 1e-8 * u.eigenvalue);
      // the Euclidean residual stays small as well on a well-shaped mesh
      CHECK(euclidean_residual(m, a, l.eigenvector, l.eigenvalue, true) <= 1e-6 * l.eigenvalue);
      CHECK(euclidean_residual(m, a, u.eigenvector, u.eigenvalue, false) <= 1e-6 * u.eigenvalue);
      CHECK(l.eigenvalue < prev_l);
      CHECK(u.eigenvalue < prev_m);
      CHECK(l.eigenvalue > oracle::square_lambda1());
      CHECK(u.eigenvalue > oracle::square_mu1());
      CHECK(u.eigenvalue < l.eigenvalue);
      prev_l = l.eigenvalue;
      prev_m = u.eigenvalue;
      // Dirichlet eigenvector vanishes on the boundary
      for (std::size_t i = 0; i < m.node_count(); ++i)
        if (m.is_boundary(static_cast<int>(i))) CHECK(l.eigenvector[i] == 0.0);
      // Neumann eigenvector is M-orthogonal to constants
      const std::vector<double> mu = a.mass.multiply(u.eigenvector);
      double mean = 0.0, norm = 0.0;
      for (std::size_t i = 0; i < mu.size(); ++i) mean += mu[i], norm += mu[i] * u.eigenvector[i];
      CHECK(std::abs(mean) / std::sqrt(norm) < 1e-8);
    }
  }

  TEST_CASE("dirichlet rejects coarse meshes") {
    const TriMesh m = triangulate_convex(ConvexPolygon(oracle::box(1, 1)));
    CHECK_THROWS_AS(dirichlet_lambda1(m), Error);
    try {
      dirichlet_lambda1(refine(m));
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::TooCoarse);
    }
  }

  TEST_CASE("richardson") {
    EigenResult c, f;
    c.h = 0.2;
    f.h = 0.1;
    c.eigenvalue = f.eigenvalue = 5.0;
    Extrapolation e = richardson(c, f);
    CHECK(e.extrapolated == 5.0);
    CHECK(e.error_estimate == 0.0);
    // exact O(h^2) sequence
    c.eigenvalue = 3.0 + 7.0 * c.h * c.h;
    f.eigenvalue = 3.0 + 7.0 * f.h * f.h;
    CHECK(richardson(c, f).extrapolated == Approx(3.0).epsilon(1e-14));
    f.h = 0.11;
    CHECK_THROWS_AS(richardson(c, f), Error);

    const TriMesh base = triangulate_convex(ConvexPolygon(oracle::box(1, 1)));
    const EigenResult l4 = dirichlet_lambda1(refine(base, 4)), l5 = dirichlet_lambda1(refine(base, 5));
    const double ex = richardson(l4, l5).extrapolated;
    CHECK(std::abs(ex - oracle::square_lambda1()) < std::abs(l5.eigenvalue - oracle::square_lambda1()));
  }

  TEST_CASE("homothety scales eigenvalues by 1/t^2") {
    const TriMesh m = refine(triangulate_convex(normalize_unit_area(valtr_random(11, 5))), 4);
    const EigenResult l = dirichlet_lambda1(m), u = neumann_mu1(m);
    for (double t : {0.25, 3.0}) {
      const TriMesh s = scaled(m, t);
      CHECK(dirichlet_lambda1(s).eigenvalue * t * t == Approx(l.eigenvalue).epsilon(1e-10));
      CHECK(neumann_mu1(s).eigenvalue * t * t == Approx(u.eigenvalue).epsilon(1e-10));
    }
  }

  TEST_CASE("mu1 below lambda1 on random shapes") {
    for (std::uint64_t s = 0; s < 6; ++s) {
      const ShapeSolution sol = solve_shape(valtr_random(3 + static_cast<int>(s * 5), 300 + s), {4});
      CHECK(sol.point.y < sol.point.x * (1 + 1e-6));
      CHECK(sol.point.x > 0.0);
      CHECK(sol.point.y > 0.0);
      CHECK(sol.lambda1.residual <= 1e-8 * sol.lambda1.eigenvalue);
      CHECK(sol.mu1.residual <= 1e-8 * sol.mu1.eigenvalue);
    }
  }

  TEST_CASE("strip test functions bound mu1 from above") {
    // rectangle 4 x 0.25, profile cos(pi (x - a + L) / L) with L = 4, on a
    // structured grid and on the mesh the pipeline solves on
    const double hll = oracle::pi * oracle::pi / 16;
    const TriMesh grid = grid_mesh(128, 8, 4.0, 0.25);
    const StripTestResult sg = strip_test_function(grid, {1, 0}, CosineRamp{4.0});
    CHECK(rel(sg.rayleigh, hll) < 1e-2);
    CHECK(neumann_mu1(grid).eigenvalue <= sg.rayleigh * (1 + 1e-12));
    const ShapeSolution rs = solve_shape(rectangle(16.0));
    const StripTestResult sr = strip_test_function(rs.fine_mesh, {1, 0}, CosineRamp{4.0});
    CHECK(rel(sr.rayleigh, hll) < 1e-2);
    CHECK(rs.mu1.eigenvalue <= sr.rayleigh * (1 + 1e-12));

    const TriMesh sq = refine(triangulate_convex(ConvexPolygon(oracle::box(1, 1))), 5);
    const StripTestResult ss = strip_test_function(sq, {1, 0}, CosineRamp{1.0});
    CHECK(rel(ss.rayleigh, oracle::pi * oracle::pi) < 1e-2);
    CHECK(neumann_mu1(sq).eigenvalue <= ss.rayleigh * (1 + 1e-12));
    // the returned vector is M-orthogonal to constants
    const std::vector<double> mv = assemble(sq).mass.multiply(ss.values);
    CHECK(std::abs(std::accumulate(mv.begin(), mv.end(), 0.0)) < 1e-10);

    // dumbbell: the sign change sits inside the channel [1, 1.5]
    const SimplePolygon db = dumbbell({0.5, 0.125, 0.5, 64});
    const TriMesh dm = refine(triangulate_simple(db), 3);
    const Assembly da = assemble(dm);
    const StripTestResult cr = strip_test_function(dm, da, {1, 0}, ChannelRamp{std::sqrt(1 - 0.125 * 0.125 / 4), 1.5});
    const StripTestResult cc = strip_test_function(dm, da, {1, 0}, CosineRamp{0.5});
    // -1 + c g vanishes at g = 1 / c, and c > 1 puts that point inside the ramp
    const double x0 = std::sqrt(1 - 0.125 * 0.125 / 4);
    CHECK(cr.parameter > 1.0);
    const double zero = x0 + (1.5 - x0) / cr.parameter;
    CHECK(zero > x0);
    CHECK(zero < 1.5);
    const double mu = neumann_mu1(dm, da).eigenvalue;
    CHECK(mu <= cr.rayleigh * (1 + 1e-12));
    CHECK(mu <= cc.rayleigh * (1 + 1e-12));

    CHECK_THROWS_AS(strip_test_function(sq, {1, 0}, CosineRamp{5.0}), Error);
  }
}
