#include <doctest.h>

#include <cmath>
#include <map>

#include "eigdiag/inequalities.hpp"
#include "oracles.hpp"

using namespace eigdiag;
using doctest::Approx;

namespace {

std::map<std::string, InequalityCheck> by_name(const std::vector<InequalityCheck>& v) {
  std::map<std::string, InequalityCheck> m;
  for (const auto& c : v) m[c.name] = c;
  return m;
}

ShapeMetrics shape(double area, double perimeter, double diameter, double inradius, double width) {
  ShapeMetrics m;
  m.area = area;
  m.perimeter = perimeter;
  m.diameter = diameter;
  m.inradius = inradius;
  m.width = width;
  return m;
}

}  // namespace

TEST_SUITE("inequalities") {
  TEST_CASE("bessel series and zeros") {
    CHECK(bessel_j0(0.0) == 1.0);
    CHECK(bessel_j1(0.0) == 0.0);
    // tabulated values
    CHECK(bessel_j0(1.0) == Approx(0.7651976865579666).epsilon(1e-14));
    CHECK(bessel_j1(1.0) == Approx(0.4400505857449335).epsilon(1e-14));
    CHECK(bessel_j0(5.0) == Approx(-0.1775967713143383).epsilon(1e-12));
    const BesselConstants b = bessel_constants();
    CHECK(std::abs(b.j01 - 2.404825557695773) < 1e-12);
    CHECK(std::abs(b.j11p - 1.841183781340659) < 1e-12);
    CHECK(std::abs(bessel_j0(b.j01)) < 1e-14);
  }

  TEST_CASE("diagram constants") {
    const DiagramConstants& k = diagram_constants();
    CHECK(k.disc_x == Approx(18.1684).epsilon(1e-5));
    CHECK(k.disc_y == Approx(10.6499).epsilon(1e-5));
    CHECK(k.theorem_lower == Approx(std::pow(oracle::pi, 4) / 4).epsilon(1e-15));
    CHECK(k.theorem_lower == Approx(24.352).epsilon(1e-4));
    CHECK(k.theorem_upper == Approx(513.70).epsilon(1e-4));
    CHECK(k.conjecture_lower == Approx(57.078).epsilon(1e-4));
    CHECK(k.conjecture_upper == Approx(193.49).epsilon(1e-4));
    CHECK(k.conjecture_upper == Approx(k.disc_x * k.disc_y).epsilon(1e-14));
    // the unit square sits above the disc level
    CHECK(2 * std::pow(oracle::pi, 4) > k.conjecture_upper);
  }

  TEST_CASE("status follows the margin and the tolerance") {
    CHECK(make_check("a", 1.0, Relation::less_equal, 2.0, 0.0).status == CheckStatus::holds);
    CHECK(make_check("a", 2.0, Relation::less_equal, 1.0, 0.0).status == CheckStatus::violated);
    CHECK(make_check("a", 1.004, Relation::less_equal, 1.0, 5e-3).status == CheckStatus::equality_within_tol);
    CHECK(make_check("a", 0.996, Relation::less_equal, 1.0, 5e-3).status == CheckStatus::equality_within_tol);
    CHECK(make_check("a", 1.006, Relation::less_equal, 1.0, 5e-3).status == CheckStatus::violated);
    const InequalityCheck g = make_check("g", 3.0, Relation::greater_equal, 2.0, 1e-9);
    CHECK(g.margin == 1.0);
    CHECK(g.status == CheckStatus::holds);
    CHECK(to_string(CheckStatus::equality_within_tol) == "equality_within_tol");
  }

  TEST_CASE("unit square") {
    const double pi2 = oracle::pi * oracle::pi;
    const SpectralPoint p{2 * pi2, pi2, 2 * pi2 * pi2};
    const InequalityReport rep = check_all(shape(1, 4, std::sqrt(2.0), 0.5, 1), p, 7);
    CHECK(rep.shape_id == 7);
    CHECK(rep.all_hold());
    const auto c = by_name(rep.checks);
    for (const char* name : {"faber_krahn", "weinberger", "hersch", "payne_weinberger", "incircle_dirichlet",
                             "width_dirichlet", "hcs", "F_lower", "F_upper", "width_area", "scott", "width_inradius"})
      CHECK_MESSAGE(c.count(name) == 1, name);
    // mu1 = pi^2 w^2 / A^2 for every rectangle
    CHECK(c.at("hll").status == CheckStatus::equality_within_tol);
    const auto adv = by_name(rep.advisory);
    CHECK(adv.at("conjecture_upper").status == CheckStatus::violated);
    CHECK(adv.at("conjecture_upper").margin < 0.0);
    CHECK(adv.at("conjecture_lower").status == CheckStatus::holds);
    CHECK(F_functional(p) == p.x * p.y);
  }

  TEST_CASE("disc saturates the strip and the incircle bounds") {
    const double x = oracle::disc_x(), y = oracle::disc_y();
    const double a = oracle::pi;
    const InequalityReport rep = check_all(shape(a, 2 * oracle::pi, 2, 1, 2), {x, y, x * y});
    const auto c = by_name(rep.checks);
    CHECK(c.at("faber_krahn").status == CheckStatus::equality_within_tol);
    CHECK(c.at("weinberger").status == CheckStatus::equality_within_tol);
    CHECK(c.at("hcs").status == CheckStatus::equality_within_tol);
    CHECK(c.at("incircle_dirichlet").status == CheckStatus::equality_within_tol);
    CHECK(rep.all_hold());
  }

  TEST_CASE("rectangle 4 x 0.25 saturates hll") {
    const double pi2 = oracle::pi * oracle::pi;
    const double lambda = oracle::rectangle_lambda1(4, 0.25), mu = oracle::rectangle_mu1(4, 0.25);
    const InequalityReport rep =
        check_all(shape(1, 8.5, std::sqrt(16.0625), 0.125, 0.25), {lambda, mu, lambda * mu});
    const auto c = by_name(rep.checks);
    CHECK(c.at("hll").rhs == Approx(pi2 / 16).epsilon(1e-14));
    CHECK(c.at("hll").status == CheckStatus::equality_within_tol);
    CHECK(rep.all_hold());
  }

  TEST_CASE("violations are reported") {
    // y above the Weinberger line
    const InequalityReport rep = check_all(shape(1, 4, std::sqrt(2.0), 0.5, 1), {19.74, 12.0, 19.74 * 12.0});
    CHECK_FALSE(rep.all_hold());
    CHECK(by_name(rep.checks).at("weinberger").status == CheckStatus::violated);
    CHECK_THROWS_AS(check_all(shape(1, 4, 1.4, 0.0, 1), {1, 1, 1}), Error);
  }

  TEST_CASE("reference curves") {
    const auto curves = reference_curves();
    CHECK(curves.size() == 6);
    std::map<std::string, ReferenceCurve> tag;
    for (const auto& c : curves) tag[c.tag] = c;
    CHECK(tag.at("theorem-lower").constant == Approx(24.352).epsilon(1e-4));
    CHECK(tag.at("theorem-upper").constant == Approx(513.70).epsilon(1e-4));
    CHECK(tag.at("conjecture-lower").kind == CurveKind::hyperbola);
    CHECK(tag.at("conjecture-upper").kind == CurveKind::hyperbola);
    CHECK(tag.at("theorem-faber-krahn").kind == CurveKind::vertical_line);
    CHECK(tag.at("theorem-weinberger").kind == CurveKind::horizontal_line);
    CHECK(tag.at("theorem-weinberger").constant == Approx(10.650).epsilon(1e-4));
  }

  TEST_CASE("json form") {
    const InequalityReport rep = check_all(shape(1, 4, std::sqrt(2.0), 0.5, 1), {19.74, 9.87, 19.74 * 9.87}, 3);
    const nlohmann::json j = to_json(rep);
    CHECK(j["shape_id"] == 3);
    CHECK(j["checks"].size() == rep.checks.size());
    CHECK(j["advisory"].size() == 2);
    for (const char* key : {"name", "lhs", "rhs", "margin", "status"}) CHECK(j["checks"][0].contains(key));
  }
}
