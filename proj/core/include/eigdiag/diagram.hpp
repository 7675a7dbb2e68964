#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "eigdiag/eigensolve.hpp"
#include "eigdiag/inequalities.hpp"
#include "eigdiag/shapegen.hpp"

namespace eigdiag {

struct SampleConfig {
  int count = 1000;
  int sides_min = 3;
  int sides_max = 30;
  std::uint64_t master_seed = 0;
  int refinements = 0;  // 0: per-shape default
  int workers = 1;
};

/// One row of the diagram CSV. All values refer to the unit-area shape.
struct DiagramRecord {
  long long id = 0;
  std::string kind;
  int n_vertices = 0;
  std::uint64_t seed = 0;
  double area = 0.0;
  double perimeter = 0.0;
  double diameter = 0.0;
  double inradius = 0.0;
  double width = 0.0;
  double lambda1 = 0.0;
  double mu1 = 0.0;
  double x = 0.0;
  double y = 0.0;
  double F = 0.0;
  double lambda1_err = 0.0;
  double mu1_err = 0.0;
  double h = 0.0;

  friend bool operator==(const DiagramRecord&, const DiagramRecord&) = default;
};

DiagramRecord make_record(long long id, std::string kind, int n_vertices, std::uint64_t seed,
                          const ShapeSolution& sol);

ShapeMetrics record_metrics(const DiagramRecord& r) noexcept;
SpectralPoint record_point(const DiagramRecord& r) noexcept;

struct SampleFailure {
  long long id = 0;
  std::uint64_t seed = 0;
  std::string message;
};

struct SampleRun {
  std::vector<DiagramRecord> records;  // sorted by id
  std::vector<SampleFailure> failures;
  int attempted = 0;
};

/// Sample i draws n uniformly in [sides_min, sides_max] from the stream of
/// derive_seed(master_seed, i), then solves valtr_random(n, ·) from the same
/// stream. Output does not depend on the worker count.
SampleRun run_sample(const SampleConfig& config);

/// Per-index shape of run_sample, exposed for reproduction of single rows.
struct SampledShape {
  std::uint64_t seed;
  int n;
  ConvexPolygon polygon;
};
SampledShape sample_shape(const SampleConfig& config, long long index);

enum class FamilyKind { rhombus, rectangle, isosceles, regular, ellipse, dumbbell };
FamilyKind parse_family_kind(const std::string& s);
std::string to_string(FamilyKind k);

struct FamilyOptions {
  int refinements = 0;
  int ellipse_vertices = 256;
  DumbbellSpec dumbbell;  // channel_height is overridden by each parameter
};

struct FamilyRecord {
  DiagramRecord record;
  double raw_area = 0.0;    // area of the shape as generated, before normalization
  double mu1_mesh = 0.0;    // unextrapolated mu1 on the fine mesh
  std::optional<double> rayleigh_bound;  // dumbbell: channel-ramp test function, same mesh
  std::optional<double> cosine_rayleigh_bound;  // dumbbell: cosine-ramp test function, same mesh
};

/// One record per parameter: rhombus diameter d, rectangle aspect, isosceles
/// apex angle, regular vertex count, ellipse eps, dumbbell channel height.
std::vector<FamilyRecord> family_trace(FamilyKind kind, const std::vector<double>& params,
                                       const FamilyOptions& opts = {});

inline constexpr const char* kCsvHeader =
    "id,kind,n_vertices,seed,area,perimeter,diameter,inradius,width,lambda1,mu1,x,y,F,lambda1_err,mu1_err,h";

void write_csv(const std::vector<DiagramRecord>& records, std::ostream& out);
void write_csv(const std::vector<DiagramRecord>& records, const std::filesystem::path& path);
std::vector<DiagramRecord> read_csv(std::istream& in);
std::vector<DiagramRecord> read_csv(const std::filesystem::path& path);

struct SvgOptions {
  double width = 900.0;
  double height = 600.0;
  double x_min = 15.0;
  std::optional<double> x_max;  // default max(x) * 1.05
  double y_min = 0.0;
  double y_max = 11.5;
  std::string title = "(x, y) = (|Omega| lambda1, |Omega| mu1)";
  std::string provenance;  // echoed in a comment
};

/// Affine data -> viewBox map used by write_svg.
struct PlotMap {
  double x_min, x_max, y_min, y_max, width, height, margin;
  double px(double x) const noexcept;
  double py(double y) const noexcept;
};

PlotMap plot_map(const std::vector<DiagramRecord>& records, const SvgOptions& opts);

void write_svg(const std::vector<DiagramRecord>& records, const std::vector<ReferenceCurve>& curves,
               std::ostream& out, const SvgOptions& opts = {});
void write_svg(const std::vector<DiagramRecord>& records, const std::vector<ReferenceCurve>& curves,
               const std::filesystem::path& path, const SvgOptions& opts = {});

/// Counts of holds / violations per inequality, F extrema and the comparison
/// of the largest sampled F with 2 pi^4 and F(disc).
nlohmann::json verify_report(const std::vector<DiagramRecord>& records);

/// Total theorem-level violations recorded in a verify_report summary.
long long theorem_violations(const nlohmann::json& report);

}  // namespace eigdiag
