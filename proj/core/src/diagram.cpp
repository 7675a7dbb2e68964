#include "eigdiag/diagram.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <numbers>
#include <optional>
#include <thread>

namespace eigdiag {

DiagramRecord make_record(long long id, std::string kind, int n_vertices, std::uint64_t seed,
                          const ShapeSolution& sol) {
  DiagramRecord r;
  r.id = id;
  r.kind = std::move(kind);
  r.n_vertices = n_vertices;
  r.seed = seed;
  r.area = sol.metrics.area;
  r.perimeter = sol.metrics.perimeter;
  r.diameter = sol.metrics.diameter;
  r.inradius = sol.metrics.inradius;
  r.width = sol.metrics.width;
  r.lambda1 = sol.lambda1.best();
  r.mu1 = sol.mu1.best();
  r.x = sol.point.x;
  r.y = sol.point.y;
  r.F = sol.point.F;
  r.lambda1_err = sol.lambda1.error_estimate.value_or(std::nan(""));
  r.mu1_err = sol.mu1.error_estimate.value_or(std::nan(""));
  r.h = sol.lambda1.h;
  return r;
}

ShapeMetrics record_metrics(const DiagramRecord& r) noexcept {
  ShapeMetrics m;
  m.area = r.area;
  m.perimeter = r.perimeter;
  m.diameter = r.diameter;
  m.inradius = r.inradius;
  m.width = r.width;
  return m;
}

SpectralPoint record_point(const DiagramRecord& r) noexcept { return {r.x, r.y, r.F}; }

namespace {

void validate(const SampleConfig& c) {
  if (c.count < 1) throw Error(ErrorCode::InvalidParam, "count must be at least 1");
  if (c.sides_min < 3 || c.sides_min > c.sides_max)
    throw Error(ErrorCode::InvalidParam, "need 3 <= sides_min <= sides_max");
  if (c.sides_max > 1000) throw Error(ErrorCode::InvalidParam, "sides_max must be at most 1000");
  if (c.refinements < 0) throw Error(ErrorCode::InvalidParam, "refinements must be non-negative");
}

}  // namespace

SampledShape sample_shape(const SampleConfig& config, long long index) {
  const std::uint64_t seed = derive_seed(config.master_seed, static_cast<std::uint64_t>(index));
  Rng rng(seed);
  const int n = static_cast<int>(rng.uniform_int(config.sides_min, config.sides_max));
  return {seed, n, valtr_random(n, rng.next())};
}

SampleRun run_sample(const SampleConfig& config) {
  validate(config);
  const int count = config.count;
  std::vector<std::optional<DiagramRecord>> slots(static_cast<std::size_t>(count));
  std::vector<std::optional<SampleFailure>> failed(static_cast<std::size_t>(count));
  SolveOptions so;
  so.refinements = config.refinements;

  std::atomic<int> next{0};
  auto work = [&] {
    for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
      const auto idx = static_cast<std::size_t>(i);
      std::uint64_t seed = derive_seed(config.master_seed, static_cast<std::uint64_t>(i));
      try {
        const SampledShape s = sample_shape(config, i);
        seed = s.seed;
        const ShapeSolution sol = solve_shape(s.polygon, so);
        slots[idx] = make_record(i, "valtr", s.n, s.seed, sol);
      } catch (const std::exception& e) {
        failed[idx] = SampleFailure{i, seed, e.what()};
      }
    }
  };

  const int workers = std::clamp(config.workers, 1, count);
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  SampleRun run;
  run.attempted = count;
  for (int i = 0; i < count; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    if (slots[idx]) run.records.push_back(std::move(*slots[idx]));
    if (failed[idx]) run.failures.push_back(std::move(*failed[idx]));
  }
  return run;
}

FamilyKind parse_family_kind(const std::string& s) {
  if (s == "rhombus") return FamilyKind::rhombus;
  if (s == "rectangle") return FamilyKind::rectangle;
  if (s == "isosceles") return FamilyKind::isosceles;
  if (s == "regular") return FamilyKind::regular;
  if (s == "ellipse") return FamilyKind::ellipse;
  if (s == "dumbbell") return FamilyKind::dumbbell;
  throw Error(ErrorCode::InvalidParam, "unknown family kind: " + s);
}

std::string to_string(FamilyKind k) {
  switch (k) {
    case FamilyKind::rhombus: return "rhombus";
    case FamilyKind::rectangle: return "rectangle";
    case FamilyKind::isosceles: return "isosceles";
    case FamilyKind::regular: return "regular";
    case FamilyKind::ellipse: return "ellipse";
    case FamilyKind::dumbbell: return "dumbbell";
  }
  return "unknown";
}

namespace {

FamilyRecord convex_member(FamilyKind kind, long long id, const ConvexPolygon& poly, const SolveOptions& so) {
  FamilyRecord fr;
  fr.raw_area = basic_metrics(poly).area;
  const ShapeSolution sol = solve_shape(poly, so);
  fr.record = make_record(id, to_string(kind), static_cast<int>(poly.size()), 0, sol);
  fr.mu1_mesh = sol.mu1.eigenvalue;
  return fr;
}

FamilyRecord dumbbell_member(long long id, const DumbbellSpec& spec, const SolveOptions& so) {
  const SimplePolygon raw = dumbbell(spec);
  const BasicMetrics bm = basic_metrics(raw);
  const ShapeSolution sol = solve_shape(raw, so);

  FamilyRecord fr;
  fr.raw_area = bm.area;
  fr.record = make_record(id, "dumbbell", static_cast<int>(raw.size()), 0, sol);
  fr.mu1_mesh = sol.mu1.eigenvalue;

  // channel ends in raw coordinates, mapped through the unit-area homothety about the centroid
  const double half = 0.5 * spec.channel_height;
  const double x0 = std::sqrt(1.0 - half * half);
  const double x1 = 1.0 + spec.channel_length + spec.eps - std::sqrt(spec.eps * spec.eps - half * half);
  const double s = 1.0 / std::sqrt(bm.area);
  const double a = bm.centroid.x + s * (x0 - bm.centroid.x);
  const double b = bm.centroid.x + s * (x1 - bm.centroid.x);
  const Assembly asm_ = assemble(sol.fine_mesh);
  fr.rayleigh_bound = strip_test_function(sol.fine_mesh, asm_, {1.0, 0.0}, ChannelRamp{a, b}).rayleigh;
  fr.cosine_rayleigh_bound = strip_test_function(sol.fine_mesh, asm_, {1.0, 0.0}, CosineRamp{b - a}).rayleigh;
  return fr;
}

int as_count(double v, const char* what) {
  if (!(v >= 0.0) || v != std::floor(v) || v > 1e6)
    throw Error(ErrorCode::InvalidParam, std::string(what) + " must be a non-negative integer");
  return static_cast<int>(v);
}

}  // namespace

std::vector<FamilyRecord> family_trace(FamilyKind kind, const std::vector<double>& params,
                                       const FamilyOptions& opts) {
  if (params.empty()) throw Error(ErrorCode::InvalidParam, "family_trace needs at least one parameter");
  SolveOptions so;
  so.refinements = opts.refinements;
  std::vector<FamilyRecord> out;
  out.reserve(params.size());
  long long id = 0;
  for (double p : params) {
    switch (kind) {
      case FamilyKind::rhombus: out.push_back(convex_member(kind, id, rhombus(p), so)); break;
      case FamilyKind::rectangle: out.push_back(convex_member(kind, id, rectangle(p), so)); break;
      case FamilyKind::isosceles: out.push_back(convex_member(kind, id, isosceles_triangle(p), so)); break;
      case FamilyKind::regular:
        out.push_back(convex_member(kind, id, regular_ngon(as_count(p, "vertex count"), 1.0), so));
        break;
      case FamilyKind::ellipse:
        out.push_back(convex_member(kind, id, ellipse_polygon(p, opts.ellipse_vertices), so));
        break;
      case FamilyKind::dumbbell: {
        DumbbellSpec spec = opts.dumbbell;
        spec.channel_height = p;
        out.push_back(dumbbell_member(id, spec, so));
        break;
      }
    }
    ++id;
  }
  return out;
}

}  // namespace eigdiag
