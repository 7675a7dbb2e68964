#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "eigdiag/geomkit.hpp"
#include "eigdiag/meshkit.hpp"
#include "eigdiag/sparse.hpp"

namespace eigdiag {

struct Assembly {
  SparseSymMatrix stiffness;
  SparseSymMatrix mass;
};

/// P1 stiffness and consistent mass matrices; both share one sparsity pattern.
Assembly assemble(const TriMesh& mesh);

struct EigenResult {
  double eigenvalue = 0.0;
  std::vector<double> eigenvector;  // nodal values on the full mesh
  double h = 0.0;
  double residual = 0.0;  // ||K u - lambda M u|| / ||M u||, dual norm of the factored operator
  std::size_t nodes = 0;
  int iterations = 0;
  std::optional<double> extrapolated;
  std::optional<double> error_estimate;

  /// Extrapolated value when available, otherwise the mesh eigenvalue.
  double best() const noexcept { return extrapolated.value_or(eigenvalue); }
};

struct EigenOptions {
  double tol = 1e-10;
  int max_iter = 500;
};

/// First Dirichlet eigenvalue: shift-invert Lanczos on the interior block.
EigenResult dirichlet_lambda1(const TriMesh& mesh, const EigenOptions& opts = {});
EigenResult dirichlet_lambda1(const TriMesh& mesh, const Assembly& asm_, const EigenOptions& opts = {});

/// First nonzero Neumann eigenvalue: Lanczos on (K + M)^-1 M with the
/// constant mode deflated.
EigenResult neumann_mu1(const TriMesh& mesh, const EigenOptions& opts = {});
EigenResult neumann_mu1(const TriMesh& mesh, const Assembly& asm_, const EigenOptions& opts = {});

struct Extrapolation {
  double extrapolated = 0.0;
  double error_estimate = 0.0;
};

/// Richardson step for O(h^2) convergence; fine.h must equal coarse.h / 2.
Extrapolation richardson(const EigenResult& coarse, const EigenResult& fine);

struct SpectralPoint {
  double x = 0.0;  // area * lambda1
  double y = 0.0;  // area * mu1
  double F = 0.0;  // x * y
};

SpectralPoint spectral_point(double area, double lambda1, double mu1) noexcept;

struct SolveOptions {
  int refinements = 0;  // 0 selects default_refinements()
  int smooth_iters = 10;
  int smooth_level = 2;  // refinement level at which smoothing runs; kept only if min_angle improves
  EigenOptions eigen;
};

/// Smallest refinement level whose mesh reaches 2e4 nodes starting from the
/// given base triangulation; one more for elongated shapes (d^2 / A > 32).
int default_refinements(const TriMesh& base, double elongation);

struct ShapeSolution {
  SpectralPoint point;
  EigenResult lambda1;
  EigenResult mu1;
  ShapeMetrics metrics;  // of the unit-area shape
  TriMesh fine_mesh;
  int refinements = 0;
};

/// Unit-area normalization, meshing, smoothing, both eigenvalues on two nested
/// levels and Richardson extrapolation.
ShapeSolution solve_shape(const ConvexPolygon& poly, const SolveOptions& opts = {});
ShapeSolution solve_shape(const SimplePolygon& poly, const SolveOptions& opts = {});

/// -1 before the window, cos(pi (s - a + L) / L) on [a, a + L], +1 after; the
/// offset a is found by bisection.
struct CosineRamp {
  double length = 1.0;
};

/// -1 before `start`, linear on [start, end], constant c after `end`; the
/// amplitude c is solved for directly.
struct ChannelRamp {
  double start = 0.0;
  double end = 1.0;
};

using StripProfile = std::variant<CosineRamp, ChannelRamp>;

struct StripTestResult {
  std::vector<double> values;  // nodal interpolant, M-orthogonal to constants
  double rayleigh = 0.0;       // v'Kv / v'Mv
  double parameter = 0.0;      // window offset a, or amplitude c
};

/// Mean-zero test function depending only on s = <direction, x>; its Rayleigh
/// quotient bounds the discrete mu1 of the same mesh from above.
StripTestResult strip_test_function(const TriMesh& mesh, Point2 direction, const StripProfile& profile);
StripTestResult strip_test_function(const TriMesh& mesh, const Assembly& asm_, Point2 direction,
                                    const StripProfile& profile);

}  // namespace eigdiag
