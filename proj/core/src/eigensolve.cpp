#include "eigdiag/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>

#include "lanczos.hpp"

namespace eigdiag {

namespace {

double dotp(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

struct Eigenpair {
  double value;
  std::vector<double> vector;
  double residual;
};

// y = K x written as y_i = sum_j K_ij (x_j - x_i), using that P1 stiffness rows
// sum to zero. Avoids the K_ii x_i cancellation on thin elements.
std::vector<double> stiffness_apply(const SparseSymMatrix& k, std::span<const double> x) {
  std::vector<double> y(x.size(), 0.0);
  const auto off = k.row_offsets();
  const auto col = k.columns();
  const auto val = k.values();
  for (int i = 0; i < k.dim(); ++i)
    for (int p = off[static_cast<std::size_t>(i)]; p < off[static_cast<std::size_t>(i) + 1]; ++p) {
      const auto j = static_cast<std::size_t>(col[static_cast<std::size_t>(p)]);
      const auto ii = static_cast<std::size_t>(i);
      if (j == ii) continue;
      const double d = val[static_cast<std::size_t>(p)] * (x[j] - x[ii]);
      y[ii] += d;
      y[j] -= d;
    }
  return y;
}

// x'Kx = sum over edges of -K_ij (x_i - x_j)^2, same identity.
double stiffness_energy(const SparseSymMatrix& k, std::span<const double> x) {
  double e = 0.0;
  const auto off = k.row_offsets();
  const auto col = k.columns();
  const auto val = k.values();
  for (int i = 0; i < k.dim(); ++i)
    for (int p = off[static_cast<std::size_t>(i)]; p < off[static_cast<std::size_t>(i) + 1]; ++p) {
      const auto j = static_cast<std::size_t>(col[static_cast<std::size_t>(p)]);
      const auto ii = static_cast<std::size_t>(i);
      if (j == ii) continue;
      const double d = x[ii] - x[j];
      e -= val[static_cast<std::size_t>(p)] * d * d;
    }
  return e;
}

// ||v||_{A^-1} for the factored operator A.
double dual_norm(const detail::CholeskyFactor& factor, const std::vector<double>& v) {
  std::vector<double> z(v.size());
  factor.solve(v, z);
  return std::sqrt(std::max(0.0, dotp(v, z)));
}

// Rayleigh quotient and relative residual ||K u - lambda M u|| / ||M u|| of a
// vector on the kept nodes (all nodes when `kept` is empty); k_full is the
// stiffness of the whole mesh, m is already restricted. Both norms are the
// dual norm of the factored operator: in the Euclidean norm, rounding u alone
// leaves eps * K_ii / (lambda M_ii), above 1e-8 on meshes of thin shapes.
Eigenpair polish(const SparseSymMatrix& k_full, const SparseSymMatrix& m, const detail::CholeskyFactor& factor,
                 std::span<const int> kept, std::vector<double> u) {
  std::vector<double> full;
  if (!kept.empty()) {
    full.assign(static_cast<std::size_t>(k_full.dim()), 0.0);
    for (std::size_t i = 0; i < kept.size(); ++i) full[static_cast<std::size_t>(kept[i])] = u[i];
  }
  const std::span<const double> uf = kept.empty() ? std::span<const double>(u) : std::span<const double>(full);
  const auto ku_full = stiffness_apply(k_full, uf);
  std::vector<double> ku;
  if (kept.empty()) {
    ku = ku_full;
  } else {
    ku.resize(kept.size());
    for (std::size_t i = 0; i < kept.size(); ++i) ku[i] = ku_full[static_cast<std::size_t>(kept[i])];
  }
  const auto mu = m.multiply(u);
  const double lambda = stiffness_energy(k_full, uf) / dotp(u, mu);
  std::vector<double> r(ku.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = ku[i] - lambda * mu[i];
  return {lambda, std::move(u), dual_norm(factor, r) / dual_norm(factor, mu)};
}

// One inverse-iteration step with the already factored operator: damps the
// high-frequency components that a Ritz vector inherits from the start vector.
std::vector<double> purify(const detail::CholeskyFactor& factor, const SparseSymMatrix& m,
                           const std::vector<double>& u) {
  std::vector<double> out(u.size());
  factor.solve(m.multiply(u), out);
  return out;
}

void check_residual(const Eigenpair& p, const char* what) {
  if (!(p.residual <= 1e-8 * p.value)) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s: relative eigen residual %.3e above 1e-8 (eigenvalue %.6g)", what,
                  p.residual / p.value, p.value);
    throw Error(ErrorCode::NoConvergence, buf);
  }
}

}  // namespace

Assembly assemble(const TriMesh& mesh) {
  const auto& p = mesh.nodes();
  std::vector<Triplet> kt, mt;
  kt.reserve(6 * mesh.triangle_count());
  mt.reserve(6 * mesh.triangle_count());
  for (const auto& t : mesh.triangles()) {
    const Point2 a = p[static_cast<std::size_t>(t[0])], b = p[static_cast<std::size_t>(t[1])],
                 c = p[static_cast<std::size_t>(t[2])];
    const double area2 = cross(b - a, c - a);
    const double area = 0.5 * area2;
    // gradients of the barycentric basis functions
    const Point2 g[3] = {(1.0 / area2) * Point2{b.y - c.y, c.x - b.x},
                         (1.0 / area2) * Point2{c.y - a.y, a.x - c.x},
                         (1.0 / area2) * Point2{a.y - b.y, b.x - a.x}};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j <= i; ++j) {
        const int gi = t[static_cast<std::size_t>(i)], gj = t[static_cast<std::size_t>(j)];
        kt.push_back({gi, gj, area * dot(g[i], g[j])});
        mt.push_back({gi, gj, area / 12.0 * (i == j ? 2.0 : 1.0)});
      }
  }
  const int n = static_cast<int>(mesh.node_count());
  return {SparseSymMatrix::from_triplets(n, std::move(kt)), SparseSymMatrix::from_triplets(n, std::move(mt))};
}

EigenResult dirichlet_lambda1(const TriMesh& mesh, const EigenOptions& opts) {
  return dirichlet_lambda1(mesh, assemble(mesh), opts);
}

EigenResult dirichlet_lambda1(const TriMesh& mesh, const Assembly& asm_, const EigenOptions& opts) {
  std::vector<int> interior;
  for (std::size_t i = 0; i < mesh.node_count(); ++i)
    if (!mesh.is_boundary(static_cast<int>(i))) interior.push_back(static_cast<int>(i));
  if (interior.size() < 10)
    throw Error(ErrorCode::TooCoarse, "Dirichlet problem needs at least 10 interior nodes, mesh has " +
                                          std::to_string(interior.size()));
  const SparseSymMatrix k = asm_.stiffness.restricted(interior);
  const SparseSymMatrix m = asm_.mass.restricted(interior);
  const detail::CholeskyFactor factor(k);
  detail::LanczosOptions lo;
  lo.nev = 1;
  lo.tol = opts.tol;
  lo.max_iter = opts.max_iter;
  const auto lr = detail::shift_invert_lanczos(m, factor, {}, lo);
  if (!lr.converged || lr.pairs.empty())
    throw Error(ErrorCode::NoConvergence, "Dirichlet Lanczos did not converge in " +
                                              std::to_string(lr.iterations) + " iterations");
  Eigenpair ep = polish(asm_.stiffness, m, factor, interior, purify(factor, m, lr.pairs.front().vector));
  check_residual(ep, "dirichlet_lambda1");

  EigenResult r;
  r.eigenvalue = ep.value;
  r.eigenvector.assign(mesh.node_count(), 0.0);
  // sign convention: positive ground state
  const double sign = std::accumulate(ep.vector.begin(), ep.vector.end(), 0.0) < 0 ? -1.0 : 1.0;
  for (std::size_t i = 0; i < interior.size(); ++i)
    r.eigenvector[static_cast<std::size_t>(interior[i])] = sign * ep.vector[i];
  r.h = mesh.h();
  r.residual = ep.residual;
  r.nodes = mesh.node_count();
  r.iterations = lr.iterations;
  return r;
}

EigenResult neumann_mu1(const TriMesh& mesh, const EigenOptions& opts) {
  return neumann_mu1(mesh, assemble(mesh), opts);
}

EigenResult neumann_mu1(const TriMesh& mesh, const Assembly& asm_, const EigenOptions& opts) {
  const SparseSymMatrix& k = asm_.stiffness;
  const SparseSymMatrix& m = asm_.mass;
  constexpr double kShift = 1.0;
  const detail::CholeskyFactor factor(k.combined(1.0, m, kShift));
  const std::vector<double> ones(mesh.node_count(), 1.0);
  detail::LanczosOptions lo;
  lo.nev = std::min<int>(3, static_cast<int>(mesh.node_count()) - 1);
  lo.tol = opts.tol;
  lo.max_iter = opts.max_iter;
  const auto lr = detail::shift_invert_lanczos(m, factor, ones, lo);
  if (!lr.converged || lr.pairs.empty())
    throw Error(ErrorCode::NoConvergence, "Neumann Lanczos did not converge in " +
                                              std::to_string(lr.iterations) + " iterations");

  const auto mones = m.multiply(ones);
  const double ones_norm = std::sqrt(dotp(ones, mones));
  // pairs come ordered by theta descending, i.e. eigenvalue ascending
  for (const auto& pair : lr.pairs) {
    const double u_norm = std::sqrt(m.quadratic_form(pair.vector));
    const double mean = std::abs(dotp(pair.vector, mones)) / (u_norm * ones_norm);
    if (mean >= 1e-8) continue;
    std::vector<double> u = purify(factor, m, pair.vector);
    const double drift = dotp(u, mones) / (ones_norm * ones_norm);
    for (double& x : u) x -= drift;
    Eigenpair ep = polish(k, m, factor, {}, std::move(u));
    if (!(ep.value > 0.0)) continue;
    check_residual(ep, "neumann_mu1");
    EigenResult r;
    r.eigenvalue = ep.value;
    r.eigenvector = std::move(ep.vector);
    r.h = mesh.h();
    r.residual = ep.residual;
    r.nodes = mesh.node_count();
    r.iterations = lr.iterations;
    return r;
  }
  throw Error(ErrorCode::SpuriousKernel, "no mean-zero eigenvector among the computed Neumann modes");
}

Extrapolation richardson(const EigenResult& coarse, const EigenResult& fine) {
  if (!(std::abs(fine.h - 0.5 * coarse.h) <= 1e-9 * coarse.h))
    throw Error(ErrorCode::MismatchedMeshes, "richardson needs fine.h == coarse.h / 2");
  const double diff = fine.eigenvalue - coarse.eigenvalue;
  return {fine.eigenvalue + diff / 3.0, std::abs(diff) / 3.0};
}

SpectralPoint spectral_point(double area, double lambda1, double mu1) noexcept {
  const double x = area * lambda1, y = area * mu1;
  return {x, y, x * y};
}

int default_refinements(const TriMesh& base, double elongation) {
  // exact counts under red refinement: V' = V + E, E' = 2E + 3T, T' = 4T
  double v = static_cast<double>(base.node_count());
  double e = static_cast<double>(mesh_edges(base).size());
  double t = static_cast<double>(base.triangle_count());
  int level = 0;
  while (v < 2e4 || level < 2) {
    v += e;
    e = 2 * e + 3 * t;
    t *= 4;
    ++level;
  }
  return elongation > 32.0 ? level + 1 : level;
}

namespace {

ShapeSolution solve_mesh_hierarchy(const TriMesh& base, const ShapeMetrics& shape_metrics, double area,
                                   const SolveOptions& opts) {
  const double elongation = shape_metrics.diameter * shape_metrics.diameter / shape_metrics.area;
  const int levels = opts.refinements > 0 ? opts.refinements : default_refinements(base, elongation);
  const int smooth_at = std::clamp(opts.smooth_level, 0, levels - 1);
  TriMesh coarse = refine(base, smooth_at);
  // kept only when it improves the worst angle by more than roundoff; on thin
  // shapes averaging destroys the alignment of the fan and costs accuracy
  if (opts.smooth_iters > 0) {
    TriMesh smoothed = smooth(coarse, opts.smooth_iters);
    if (smoothed.min_angle() > coarse.min_angle() * (1.0 + 1e-9)) coarse = std::move(smoothed);
  }
  coarse = refine(coarse, levels - 1 - smooth_at);
  TriMesh fine = refine(coarse);

  const Assembly ac = assemble(coarse);
  const Assembly af = assemble(fine);
  EigenResult lc = dirichlet_lambda1(coarse, ac, opts.eigen);
  EigenResult lf = dirichlet_lambda1(fine, af, opts.eigen);
  EigenResult mc = neumann_mu1(coarse, ac, opts.eigen);
  EigenResult mf = neumann_mu1(fine, af, opts.eigen);
  const Extrapolation le = richardson(lc, lf);
  const Extrapolation me = richardson(mc, mf);
  lf.extrapolated = le.extrapolated;
  lf.error_estimate = le.error_estimate;
  mf.extrapolated = me.extrapolated;
  mf.error_estimate = me.error_estimate;

  ShapeSolution s;
  s.point = spectral_point(area, lf.best(), mf.best());
  s.lambda1 = std::move(lf);
  s.mu1 = std::move(mf);
  s.metrics = shape_metrics;
  s.fine_mesh = std::move(fine);
  s.refinements = levels;
  return s;
}

}  // namespace

ShapeSolution solve_shape(const ConvexPolygon& poly, const SolveOptions& opts) {
  const ConvexPolygon unit = normalize_unit_area(poly);
  const ShapeMetrics sm = metrics(unit);
  return solve_mesh_hierarchy(triangulate_convex(unit), sm, sm.area, opts);
}

ShapeSolution solve_shape(const SimplePolygon& poly, const SolveOptions& opts) {
  const SimplePolygon unit = normalize_unit_area(poly);
  const ShapeMetrics sm = metrics(unit);
  return solve_mesh_hierarchy(triangulate_simple(unit), sm, sm.area, opts);
}

StripTestResult strip_test_function(const TriMesh& mesh, Point2 direction, const StripProfile& profile) {
  return strip_test_function(mesh, assemble(mesh), direction, profile);
}

StripTestResult strip_test_function(const TriMesh& mesh, const Assembly& asm_, Point2 direction,
                                    const StripProfile& profile) {
  const double dn = norm(direction);
  if (!(dn > 0.0)) throw Error(ErrorCode::InvalidParam, "strip direction must be nonzero");
  const Point2 dir = (1.0 / dn) * direction;
  const std::size_t n = mesh.node_count();
  std::vector<double> s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = dot(dir, mesh.nodes()[i]);
  const double smin = *std::min_element(s.begin(), s.end());
  const double smax = *std::max_element(s.begin(), s.end());
  // M * 1: the weights of the discrete mean
  const std::vector<double> weight = asm_.mass.multiply(std::vector<double>(n, 1.0));
  const double total = std::accumulate(weight.begin(), weight.end(), 0.0);

  StripTestResult out;
  out.values.assign(n, 0.0);
  if (const auto* cos_ramp = std::get_if<CosineRamp>(&profile)) {
    const double len = cos_ramp->length;
    if (!(len > 0.0)) throw Error(ErrorCode::NoMeanZero, "cosine ramp length must be positive");
    if (len > (smax - smin) * (1.0 + 1e-12))
      throw Error(ErrorCode::NoMeanZero, "cosine ramp is wider than the shape extent");
    auto fill = [&](double a) {
      for (std::size_t i = 0; i < n; ++i) {
        const double t = s[i] - a;
        out.values[i] = t <= 0.0 ? -1.0 : t >= len ? 1.0 : std::cos(std::numbers::pi / len * (t + len));
      }
      return dotp(out.values, weight);
    };
    // mean(a) is continuous and non-increasing
    double lo = smin - len, hi = smax;
    if (!(fill(lo) > 0.0) || !(fill(hi) < 0.0))
      throw Error(ErrorCode::NoMeanZero, "cosine ramp mean does not change sign over the shape");
    for (int it = 0; it < 200 && hi - lo > 1e-15 * (smax - smin + len); ++it) {
      const double mid = 0.5 * (lo + hi);
      (fill(mid) > 0.0 ? lo : hi) = mid;
    }
    out.parameter = 0.5 * (lo + hi);
    fill(out.parameter);
  } else {
    const auto& ramp = std::get<ChannelRamp>(profile);
    if (!(ramp.end > ramp.start)) throw Error(ErrorCode::NoMeanZero, "channel ramp needs end > start");
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = std::clamp((s[i] - ramp.start) / (ramp.end - ramp.start), 0.0, 1.0);
    const double gw = dotp(g, weight);
    if (!(gw > 0.0)) throw Error(ErrorCode::NoMeanZero, "channel ramp starts beyond the shape");
    // mean(-1 + c g) = -total + c * gw
    const double c = total / gw;
    for (std::size_t i = 0; i < n; ++i) out.values[i] = -1.0 + c * g[i];
    out.parameter = c;
  }
  // remove the residual discrete mean; K annihilates constants so the
  // numerator is unchanged and the vector becomes admissible to roundoff
  const double shift = dotp(out.values, weight) / total;
  for (double& v : out.values) v -= shift;
  out.rayleigh = asm_.stiffness.quadratic_form(out.values) / asm_.mass.quadratic_form(out.values);
  return out;
}

}  // namespace eigdiag
