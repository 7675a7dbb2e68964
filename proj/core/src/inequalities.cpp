#include "eigdiag/inequalities.hpp"

#include <cmath>
#include <numbers>

namespace eigdiag {

namespace {

constexpr double kPi = std::numbers::pi;

// sum_k (-1)^k (x^2/4)^k / (k! (k + nu)!) for nu in {0, 1}
double bessel_series(double x, int nu) noexcept {
  const double q = 0.25 * x * x;
  double term = 1.0;  // 1 / (0! nu!)
  double sum = term;
  for (int k = 1; k < 60; ++k) {
    term *= -q / (static_cast<double>(k) * static_cast<double>(k + nu));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

}  // namespace

double bessel_j0(double x) noexcept { return bessel_series(x, 0); }
double bessel_j1(double x) noexcept { return 0.5 * x * bessel_series(x, 1); }

BesselConstants bessel_constants() {
  BesselConstants c;
  double x = 2.4;
  for (int it = 0; it < 50; ++it) {
    const double step = bessel_j0(x) / (-bessel_j1(x));
    x -= step;
    if (std::abs(step) < 1e-15) break;
  }
  c.j01 = x;
  // J1'(x) = J0 - J1/x and, from Bessel's equation, J1'' = -J1'/x - (1 - 1/x^2) J1
  x = 1.8;
  for (int it = 0; it < 50; ++it) {
    const double j1 = bessel_j1(x);
    const double d1 = bessel_j0(x) - j1 / x;
    const double d2 = -d1 / x - (1.0 - 1.0 / (x * x)) * j1;
    const double step = d1 / d2;
    x -= step;
    if (std::abs(step) < 1e-15) break;
  }
  c.j11p = x;
  return c;
}

const DiagramConstants& diagram_constants() {
  static const DiagramConstants k = [] {
    const BesselConstants b = bessel_constants();
    const double j2 = b.j01 * b.j01, jp2 = b.j11p * b.j11p;
    return DiagramConstants{b.j01,          b.j11p,           kPi * j2,      kPi * jp2,
                            kPi * kPi * kPi * kPi / 4.0, 9.0 * kPi * kPi * j2, kPi * kPi * j2,
                            kPi * kPi * j2 * jp2};
  }();
  return k;
}

std::string_view to_string(CheckStatus s) noexcept {
  switch (s) {
    case CheckStatus::holds: return "holds";
    case CheckStatus::violated: return "violated";
    case CheckStatus::equality_within_tol: return "equality_within_tol";
  }
  return "unknown";
}

std::string_view to_string(CurveKind k) noexcept {
  switch (k) {
    case CurveKind::hyperbola: return "hyperbola";
    case CurveKind::vertical_line: return "vertical_line";
    case CurveKind::horizontal_line: return "horizontal_line";
  }
  return "unknown";
}

bool InequalityReport::all_hold() const noexcept {
  for (const auto& c : checks)
    if (c.status == CheckStatus::violated) return false;
  return true;
}

InequalityCheck make_check(std::string name, double lhs, Relation rel, double rhs, double rel_tol) {
  InequalityCheck c;
  c.name = std::move(name);
  c.lhs = lhs;
  c.rhs = rhs;
  c.margin = rel == Relation::less_equal ? rhs - lhs : lhs - rhs;
  c.tolerance = rel_tol;
  const double band = rel_tol * std::abs(rhs);
  if (c.margin > band)
    c.status = CheckStatus::holds;
  else if (c.margin >= -band)
    c.status = CheckStatus::equality_within_tol;
  else
    c.status = CheckStatus::violated;
  return c;
}

InequalityReport check_all(const ShapeMetrics& m, const SpectralPoint& p, long long shape_id) {
  for (double v : {m.area, m.diameter, m.inradius, m.width, p.x, p.y})
    if (!(v > 0.0) || !std::isfinite(v))
      throw Error(ErrorCode::InvalidInput, "check_all needs positive finite metrics and eigenvalues");
  const DiagramConstants& k = diagram_constants();
  const double A = m.area, r = m.inradius, d = m.diameter, w = m.width;
  const double lambda = p.x / A, mu = p.y / A;
  const double j2 = k.j01 * k.j01;
  constexpr auto le = Relation::less_equal;
  constexpr auto ge = Relation::greater_equal;
  const double ts = kSpectralTol, tg = kGeometricTol;

  InequalityReport rep;
  rep.shape_id = shape_id;
  auto& c = rep.checks;
  c.push_back(make_check("faber_krahn", p.x, ge, k.disc_x, ts));
  c.push_back(make_check("weinberger", p.y, le, k.disc_y, ts));
  c.push_back(make_check("hersch", lambda, ge, kPi * kPi / (4.0 * r * r), ts));
  c.push_back(make_check("payne_weinberger", mu, ge, kPi * kPi / (d * d), ts));
  c.push_back(make_check("hll", mu, le, kPi * kPi * w * w / (A * A), ts));
  c.push_back(make_check("incircle_dirichlet", lambda, le, j2 / (r * r), ts));
  c.push_back(make_check("width_dirichlet", lambda, le, 9.0 * j2 / (w * w), ts));
  const double t = 2.0 * r / d;
  const double hcs = r * std::sqrt(std::max(0.0, d * d - 4.0 * r * r)) + r * r * (kPi - 2.0 * std::acos(std::min(1.0, t)));
  c.push_back(make_check("hcs", A, ge, hcs, tg));
  c.push_back(make_check("F_lower", p.F, ge, k.theorem_lower, ts));
  c.push_back(make_check("F_upper", p.F, le, k.theorem_upper, ts));
  c.push_back(make_check("width_area", w * w, le, std::sqrt(3.0) * A, tg));
  c.push_back(make_check("scott", std::sqrt(3.0) * (w / r - 2.0) * d, le, 2.0 * w, tg));
  c.push_back(make_check("width_inradius", w, le, 3.0 * r, tg));

  rep.advisory.push_back(make_check("conjecture_lower", p.F, ge, k.conjecture_lower, ts));
  rep.advisory.push_back(make_check("conjecture_upper", p.F, le, k.conjecture_upper, ts));
  return rep;
}

double F_functional(const SpectralPoint& p) noexcept { return p.x * p.y; }

std::vector<ReferenceCurve> reference_curves() {
  const DiagramConstants& k = diagram_constants();
  return {
      {"F = pi^4/4", k.theorem_lower, CurveKind::hyperbola, "theorem-lower"},
      {"F = 9 pi^2 j01^2", k.theorem_upper, CurveKind::hyperbola, "theorem-upper"},
      {"F = pi^2 j01^2", k.conjecture_lower, CurveKind::hyperbola, "conjecture-lower"},
      {"F = pi^2 j01^2 j11p^2", k.conjecture_upper, CurveKind::hyperbola, "conjecture-upper"},
      {"x = pi j01^2", k.disc_x, CurveKind::vertical_line, "theorem-faber-krahn"},
      {"y = pi j11p^2", k.disc_y, CurveKind::horizontal_line, "theorem-weinberger"},
  };
}

nlohmann::json to_json(const InequalityCheck& c) {
  return {{"name", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"margin", c.margin}, {"status", std::string(to_string(c.status))}};
}

nlohmann::json to_json(const InequalityReport& r) {
  nlohmann::json checks = nlohmann::json::array(), advisory = nlohmann::json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  for (const auto& c : r.advisory) advisory.push_back(to_json(c));
  return {{"shape_id", r.shape_id}, {"checks", checks}, {"advisory", advisory}};
}

}  // namespace eigdiag
