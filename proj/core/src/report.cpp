#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include "eigdiag/diagram.hpp"

namespace eigdiag {

namespace {

struct Tally {
  long long holds = 0;
  long long equality_within_tol = 0;
  long long violated = 0;
};

void count(Tally& t, CheckStatus s) {
  switch (s) {
    case CheckStatus::holds: ++t.holds; break;
    case CheckStatus::equality_within_tol: ++t.equality_within_tol; break;
    case CheckStatus::violated: ++t.violated; break;
  }
}

nlohmann::json tally_json(const std::map<std::string, Tally>& m) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [name, t] : m)
    j[name] = {{"holds", t.holds}, {"equality_within_tol", t.equality_within_tol}, {"violated", t.violated}};
  return j;
}

bool usable(const DiagramRecord& r) {
  for (double v : {r.area, r.diameter, r.inradius, r.width, r.x, r.y})
    if (!(v > 0.0) || !std::isfinite(v)) return false;
  return true;
}

}  // namespace

nlohmann::json verify_report(const std::vector<DiagramRecord>& records) {
  const DiagramConstants& k = diagram_constants();
  const double two_pi4 = 2.0 * std::pow(std::numbers::pi, 4);
  const double tol = kSpectralTol;

  std::map<std::string, Tally> theorem, advisory;
  nlohmann::json violations = nlohmann::json::array();
  nlohmann::json exceedances = nlohmann::json::array();
  nlohmann::json outside_region = nlohmann::json::array();
  nlohmann::json skipped = nlohmann::json::array();
  double f_min = std::numeric_limits<double>::infinity();
  double f_max = -std::numeric_limits<double>::infinity();
  long long argmin = -1, argmax = -1;
  std::string argmax_kind;
  long long checked = 0;

  for (const auto& r : records) {
    if (std::isfinite(r.F)) {
      if (r.F < f_min) f_min = r.F, argmin = r.id;
      if (r.F > f_max) f_max = r.F, argmax = r.id, argmax_kind = r.kind;
    }
    // the theorem band concerns convex shapes; non-convex records carry no inradius
    if (!usable(r)) {
      skipped.push_back({{"id", r.id}, {"kind", r.kind}});
      continue;
    }
    ++checked;
    const InequalityReport rep = check_all(record_metrics(r), record_point(r), r.id);
    for (const auto& c : rep.checks) {
      count(theorem[c.name], c.status);
      if (c.status == CheckStatus::violated)
        violations.push_back({{"id", r.id}, {"name", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"margin", c.margin}});
    }
    for (const auto& c : rep.advisory) {
      count(advisory[c.name], c.status);
      if (c.status == CheckStatus::violated)
        exceedances.push_back({{"id", r.id}, {"kind", r.kind}, {"name", c.name}, {"F", r.F}, {"bound", c.rhs},
                               {"margin", c.margin}});
    }
    const double lo_y = k.theorem_lower / r.x;
    const double hi_y = std::min(k.disc_y, k.theorem_upper / r.x);
    const bool inside = r.x >= k.disc_x * (1.0 - tol) && r.y > lo_y * (1.0 - tol) && r.y <= hi_y * (1.0 + tol);
    if (!inside) outside_region.push_back({{"id", r.id}, {"x", r.x}, {"y", r.y}});
  }

  long long n_violations = 0;
  for (const auto& [name, t] : theorem) n_violations += t.violated;

  nlohmann::json rep;
  rep["records"] = records.size();
  rep["checked"] = checked;
  rep["skipped_nonconvex"] = skipped;
  rep["theorem_checks"] = tally_json(theorem);
  rep["theorem_violations"] = n_violations;
  rep["violations"] = violations;
  rep["advisory_checks"] = tally_json(advisory);
  rep["advisory_exceedances"] = exceedances;
  rep["corollary_region"] = {{"tolerance", tol}, {"outside", outside_region.size()}, {"records", outside_region}};

  nlohmann::json f = nlohmann::json::object();
  if (argmax >= 0 || argmin >= 0) {
    f["min"] = f_min;
    f["argmin"] = argmin;
    f["max"] = f_max;
    f["argmax"] = argmax;
    f["argmax_kind"] = argmax_kind;
    f["max_minus_two_pi4"] = f_max - two_pi4;
    f["max_minus_F_disc"] = f_max - k.conjecture_upper;
    f["margin_to_theorem_upper"] = k.theorem_upper - f_max;
    f["margin_to_theorem_lower"] = f_min - k.theorem_lower;
  }
  rep["F"] = f;
  rep["reference"] = {{"two_pi4", two_pi4},
                      {"F_disc", k.conjecture_upper},
                      {"theorem_lower", k.theorem_lower},
                      {"theorem_upper", k.theorem_upper},
                      {"conjecture_lower", k.conjecture_lower},
                      {"square_exceeds_F_disc", two_pi4 > k.conjecture_upper},
                      {"note",
                       "the unit square has F = 2 pi^4 exactly, above F(disc) = pi^2 j01^2 j11p^2; the conjectured "
                       "upper bound F <= F(disc) is reported, never asserted"}};
  return rep;
}

long long theorem_violations(const nlohmann::json& report) {
  return report.value("theorem_violations", 0LL);
}

}  // namespace eigdiag
