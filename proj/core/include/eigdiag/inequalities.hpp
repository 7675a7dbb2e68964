#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "eigdiag/eigensolve.hpp"
#include "eigdiag/geomkit.hpp"

namespace eigdiag {

/// Bessel function J0 and J1 by their power series (accurate for |x| <= 8).
double bessel_j0(double x) noexcept;
double bessel_j1(double x) noexcept;

struct BesselConstants {
  double j01 = 0.0;   // first zero of J0
  double j11p = 0.0;  // first zero of J1'
};

/// Newton iteration on the series, from 2.4 and 1.8 respectively.
BesselConstants bessel_constants();

/// Derived constants of the diagram: corner A = (pi j01^2, pi j11p^2) and the
/// four hyperbola levels.
struct DiagramConstants {
  double j01, j11p;
  double disc_x;            // pi j01^2, Faber-Krahn line
  double disc_y;            // pi j11p^2, Weinberger line
  double theorem_lower;     // pi^4 / 4
  double theorem_upper;     // 9 pi^2 j01^2
  double conjecture_lower;  // pi^2 j01^2
  double conjecture_upper;  // pi^2 j01^2 j11p^2 = F(disc)
};

const DiagramConstants& diagram_constants();

inline constexpr double kSpectralTol = 5e-3;
inline constexpr double kGeometricTol = 1e-9;

enum class CheckStatus { holds, violated, equality_within_tol };
std::string_view to_string(CheckStatus s) noexcept;

struct InequalityCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // positive when the inequality holds
  double tolerance = 0.0;  // relative
  CheckStatus status = CheckStatus::holds;
};

struct InequalityReport {
  long long shape_id = 0;
  std::vector<InequalityCheck> checks;
  std::vector<InequalityCheck> advisory;  // conjectures: recorded, never a failure

  bool all_hold() const noexcept;
};

enum class Relation { less_equal, greater_equal };

/// Builds one check. margin = rhs - lhs for <=, lhs - rhs for >=; the status
/// compares the margin with rel_tol * |rhs|.
InequalityCheck make_check(std::string name, double lhs, Relation rel, double rhs, double rel_tol);

/// Evaluates every theorem-level inequality for one convex shape (metrics and
/// spectral point of the same shape), plus the advisory conjecture band.
InequalityReport check_all(const ShapeMetrics& m, const SpectralPoint& p, long long shape_id = 0);

double F_functional(const SpectralPoint& p) noexcept;

enum class CurveKind { hyperbola, vertical_line, horizontal_line };
std::string_view to_string(CurveKind k) noexcept;

struct ReferenceCurve {
  std::string name;
  double constant = 0.0;
  CurveKind kind = CurveKind::hyperbola;
  std::string tag;
};

/// F = c hyperbolas {pi^4/4, 9 pi^2 j01^2, pi^2 j01^2, F(disc)} and the lines
/// x = pi j01^2, y = pi j11p^2.
std::vector<ReferenceCurve> reference_curves();

nlohmann::json to_json(const InequalityCheck& c);
nlohmann::json to_json(const InequalityReport& r);

}  // namespace eigdiag
