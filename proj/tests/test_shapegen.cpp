#include <doctest.h>

#include <cmath>
#include <cstring>
#include <set>
#include <vector>

#include "eigdiag/geomkit.hpp"
#include "eigdiag/shapegen.hpp"
#include "oracles.hpp"

using namespace eigdiag;
using doctest::Approx;

namespace {

bool inside_unit_square(const ConvexPolygon& p) {
  for (Point2 v : p.vertices())
    if (v.x < 0.0 || v.x > 1.0 || v.y < 0.0 || v.y > 1.0) return false;
  return true;
}

std::uint64_t fingerprint(const ConvexPolygon& p) {
  std::uint64_t h = 1469598103934665603ULL;
  for (Point2 v : p.vertices())
    for (double c : {v.x, v.y}) {
      std::uint64_t bits;
      std::memcpy(&bits, &c, sizeof bits);
      h = (h ^ bits) * 1099511628211ULL;
    }
  return h;
}

}  // namespace

TEST_SUITE("shapegen") {
  TEST_CASE("rng conversions are fixed") {
    Rng a(5), b(5);
    for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
    Rng r(11);
    for (int i = 0; i < 1000; ++i) {
      const double u = r.uniform01();
      CHECK((u >= 0.0 && u < 1.0));
      const auto k = r.uniform_int(-3, 4);
      CHECK((k >= -3 && k <= 4));
    }
    CHECK_THROWS_AS(r.uniform_int(2, 1), Error);
    CHECK(derive_seed(0, 0) != derive_seed(0, 1));
    CHECK(derive_seed(1, 0) != derive_seed(0, 0));
    CHECK(derive_seed(9, 3) == derive_seed(9, 3));
  }

  TEST_CASE("valtr polygons are strictly convex and inside the unit square") {
    CHECK(valtr_random(3, 0).size() == 3);
    const ConvexPolygon p20 = valtr_random(20, 42);
    CHECK(p20.size() == 20);
    CHECK(is_strictly_convex(p20.vertices()));
    CHECK(inside_unit_square(p20));
    for (std::uint64_t s = 0; s < 10000; ++s) {
      const ConvexPolygon p = valtr_random(30, s);
      REQUIRE(p.size() == 30);
      REQUIRE(is_strictly_convex(p.vertices()));
      REQUIRE(inside_unit_square(p));
    }
    CHECK_THROWS_AS(valtr_random(2, 0), Error);
  }

  TEST_CASE("valtr mean area is stable across seed blocks") {
    std::vector<double> means;
    for (int block = 0; block < 5; ++block) {
      double s = 0.0;
      for (std::uint64_t k = 0; k < 400; ++k) s += basic_metrics(valtr_random(12, block * 400 + k)).area;
      means.push_back(s / 400);
    }
    for (double m : means) {
      CHECK(m > 0.0);
      CHECK(std::abs(m - means[0]) < 0.1 * means[0]);
    }
  }

  TEST_CASE("valtr is deterministic and seeds are distinct") {
    CHECK(fingerprint(valtr_random(15, 77)) == fingerprint(valtr_random(15, 77)));
    std::set<std::uint64_t> seen;
    for (std::uint64_t s = 0; s < 1000; ++s) seen.insert(fingerprint(valtr_random(10, s)));
    CHECK(seen.size() == 1000);
  }

  TEST_CASE("convexity probability") {
    const ConvexityStats p3 = convexity_probability(3);
    CHECK(p3.p_n == 1.0);
    CHECK(p3.expected_iterations == 1.0);
    CHECK(p3.p_n_exact == "1/1");
    const ConvexityStats p4 = convexity_probability(4);
    CHECK(p4.p_n_exact == "25/36");
    CHECK(p4.p_n == Approx(25.0 / 36.0).epsilon(1e-15));
    for (int n = 3; n <= 40; ++n) {
      const ConvexityStats s = convexity_probability(n);
      CHECK(s.p_n > 0.0);
      CHECK(s.p_n <= 1.0);
      CHECK(s.p_n == Approx(static_cast<double>(oracle::convexity_probability(n))).epsilon(1e-12));
      CHECK(s.expected_iterations * s.p_n == Approx(1.0).epsilon(1e-12));
    }
    // n = 20: C(38, 19) = 35345263800 and 20! = 2432902008176640000, so
    // 1/p_20 = 4737909697565695.4..., nowhere near 2e9
    const ConvexityStats p20 = convexity_probability(20);
    CHECK(p20.p_n_exact == "585299972401/2773098415223631343779840000");
    CHECK(p20.expected_iterations == Approx(4737909697565695.0).epsilon(1e-14));
    CHECK_THROWS_AS(convexity_probability(2), Error);
    CHECK_THROWS_AS(convexity_probability(61), Error);
  }

  TEST_CASE("regular polygons") {
    const ConvexPolygon sq = regular_ngon(4, 1.0);
    CHECK(basic_metrics(sq).area == Approx(1.0).epsilon(1e-14));
    CHECK(diameter(sq) == Approx(std::sqrt(2.0)).epsilon(1e-14));
    CHECK(sq[0].y == Approx(0.0));
    const ConvexPolygon hex = regular_ngon(6, 1.0);
    CHECK(std::hypot(hex[0].x, hex[0].y) == Approx(std::sqrt(2.0 / (3.0 * std::sqrt(3.0)))).epsilon(1e-14));
    const ShapeMetrics disc = metrics(regular_ngon(128, oracle::pi));
    CHECK(disc.area == Approx(oracle::pi).epsilon(1e-12));
    CHECK(std::abs(disc.perimeter - 2 * oracle::pi) < 1e-3 * 2 * oracle::pi);
    CHECK(std::abs(disc.diameter - 2.0) < 2e-3);
    CHECK(std::abs(disc.inradius - 1.0) < 1e-3);
    CHECK_THROWS_AS(regular_ngon(2, 1.0), Error);
    CHECK_THROWS_AS(regular_ngon(5, -1.0), Error);
  }

  TEST_CASE("unit-area families") {
    const ConvexPolygon sq = rectangle(1.0);
    CHECK(basic_metrics(sq).area == Approx(1.0).epsilon(1e-14));
    CHECK(min_width(sq) == Approx(1.0).epsilon(1e-14));
    const ConvexPolygon r16 = rectangle(16.0);
    CHECK(min_width(r16) == Approx(0.25).epsilon(1e-14));
    CHECK_THROWS_AS(rectangle(0.5), Error);

    const ConvexPolygon eq = isosceles_triangle(oracle::pi / 3);
    const ShapeMetrics m = metrics(eq);
    CHECK(m.area == Approx(1.0).epsilon(1e-14));
    const double side = std::sqrt(4.0 / std::sqrt(3.0));
    CHECK(m.perimeter == Approx(3 * side).epsilon(1e-13));
    CHECK(m.diameter == Approx(side).epsilon(1e-13));
    CHECK(std::abs(m.centroid.x) < 1e-14);
    CHECK(std::abs(m.centroid.y) < 1e-14);
    CHECK_THROWS_AS(isosceles_triangle(0.0), Error);
    CHECK_THROWS_AS(isosceles_triangle(oracle::pi), Error);

    const ConvexPolygon rh = rhombus(4.0);
    std::set<std::pair<double, double>> got, want{{2, 0}, {-2, 0}, {0, 0.25}, {0, -0.25}};
    for (Point2 v : rh.vertices()) got.insert({v.x, v.y});
    CHECK(got == want);
    for (double d : {std::sqrt(2.0) + 1e-9, 2.0, 4.0, 8.0, 16.0, 37.5}) {
      const ConvexPolygon r = rhombus(d);
      CHECK(basic_metrics(r).area == Approx(1.0).epsilon(1e-12));
      CHECK(diameter(r) == Approx(d).epsilon(1e-12));
    }
    CHECK_THROWS_AS(rhombus(1.0), Error);
  }

  TEST_CASE("ellipse polygons") {
    const ConvexPolygon circle = ellipse_polygon(0.0, 256);
    for (Point2 v : circle.vertices()) CHECK(std::hypot(v.x, v.y) == Approx(1.0).epsilon(1e-14));
    // inscribed area (n/2) sin(2 pi / n) (1 + eps)
    const double a = basic_metrics(ellipse_polygon(0.1, 256)).area;
    CHECK(a == Approx(128 * std::sin(2 * oracle::pi / 256) * 1.1).epsilon(1e-12));
    CHECK(std::abs(a - oracle::pi * 1.1) < 1e-3 * oracle::pi * 1.1);
    CHECK(std::abs(diameter(ellipse_polygon(0.2, 256)) - 2.4) < 2.4e-3);
    CHECK_THROWS_AS(ellipse_polygon(0.1, 31), Error);
    CHECK_THROWS_AS(ellipse_polygon(-0.1, 64), Error);
  }

  TEST_CASE("dumbbell") {
    const DumbbellSpec spec{0.5, 0.125, 0.5, 64};
    const SimplePolygon db = dumbbell(spec);
    const double area = basic_metrics(db).area;
    const double expected = oracle::pi + oracle::pi * 0.25 + 0.125 * 0.5;
    CHECK(std::abs(area - expected) < 0.02 * expected);
    CHECK(area == Approx(oracle::shoelace({db.vertices().begin(), db.vertices().end()})).epsilon(1e-13));

    for (double h : {0.25, 0.125, 0.0625}) {
      const SimplePolygon p = dumbbell({0.5, h, 0.5, 64});
      std::vector<Point2> v(p.vertices().begin(), p.vertices().end());
      for (Point2 q : v) {
        bool mirrored = false;
        for (Point2 r : v) mirrored = mirrored || (std::abs(r.x - q.x) < 1e-12 && std::abs(r.y + q.y) < 1e-12);
        CHECK(mirrored);
      }
      double xmax = -1e9;
      for (Point2 q : v) xmax = std::max(xmax, q.x);
      CHECK(std::abs(xmax - 2.5) < 2e-3);
    }

    const double a128 = basic_metrics(dumbbell({0.5, 0.125, 0.5, 128})).area;
    CHECK(std::abs(a128 - area) < 5e-3 * a128);

    CHECK_THROWS_AS(dumbbell({0.5, 1.0, 0.5, 64}), Error);
    CHECK_THROWS_AS(dumbbell({0.9, 0.1, 0.5, 64}), Error);
    CHECK_THROWS_AS(dumbbell({0.5, 0.1, 0.5, 8}), Error);
  }
}
