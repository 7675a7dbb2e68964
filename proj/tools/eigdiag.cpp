// eigdiag: eigenvalue diagram of planar convex domains.
//
// Exit codes: 0 success, 1 invalid usage, 2 some shapes skipped or theorem
// violations found, 3 I/O or file format errors.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "eigdiag/diagram.hpp"
#include "eigdiag/inequalities.hpp"
#include "eigdiag/shape_io.hpp"
#include "eigdiag/shapegen.hpp"

namespace {

using namespace eigdiag;
using nlohmann::json;

enum Exit : int { kOk = 0, kUsage = 1, kPartial = 2, kIo = 3 };

std::string g_command_line;

void echo_config(const std::string& sub, json cfg) {
  cfg["subcommand"] = sub;
  cfg["command"] = g_command_line;
  std::cerr << "config " << cfg.dump() << '\n';
}

int default_workers() {
  if (const char* env = std::getenv("EIGDIAG_THREADS")) {
    try {
      const int v = std::stoi(env);
      if (v > 0) return v;
    } catch (const std::exception&) {
    }
    std::cerr << "warning: ignoring EIGDIAG_THREADS=" << env << '\n';
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    std::size_t used = 0;
    const double v = std::stod(cell, &used);
    while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used]))) ++used;
    if (used != cell.size()) throw Error(ErrorCode::InvalidParam, "bad number in --params: " + cell);
    out.push_back(v);
  }
  if (out.empty()) throw Error(ErrorCode::InvalidParam, "--params is empty");
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::IoError, "cannot open " + path + " for writing");
  f << text;
  if (!f) throw Error(ErrorCode::IoError, "write failed: " + path);
}

struct GenArgs {
  int count = 1000;
  int sides_min = 3;
  int sides_max = 30;
  std::uint64_t seed = 1;
  std::string out;
};

int run_gen(const GenArgs& a) {
  echo_config("gen", {{"count", a.count}, {"sides_min", a.sides_min}, {"sides_max", a.sides_max}, {"seed", a.seed},
                      {"out", a.out}});
  SampleConfig cfg;
  cfg.count = a.count;
  cfg.sides_min = a.sides_min;
  cfg.sides_max = a.sides_max;
  cfg.master_seed = a.seed;
  if (cfg.sides_min < 3 || cfg.sides_min > cfg.sides_max || cfg.count < 1)
    throw Error(ErrorCode::InvalidParam, "need count >= 1 and 3 <= sides-min <= sides-max");
  std::vector<ShapeRecord> shapes;
  shapes.reserve(static_cast<std::size_t>(a.count));
  for (int i = 0; i < a.count; ++i) {
    const SampledShape s = sample_shape(cfg, i);
    ShapeRecord r;
    r.id = i;
    r.kind = "valtr";
    r.params = {{"n", s.n}, {"seed", s.seed}};
    r.vertices.assign(s.polygon.vertices().begin(), s.polygon.vertices().end());
    shapes.push_back(std::move(r));
  }
  write_shapes_jsonl(shapes, a.out);
  return kOk;
}

struct EigArgs {
  std::string in;
  std::string out;
  int refine = 0;
};

int run_eig(const EigArgs& a) {
  echo_config("eig", {{"in", a.in}, {"out", a.out}, {"refine", a.refine}});
  const auto shapes = read_shapes_jsonl(a.in);
  SolveOptions so;
  so.refinements = a.refine;
  std::ostringstream out;
  int skipped = 0;
  for (const auto& s : shapes) {
    try {
      const ShapeSolution sol = is_strictly_convex(s.vertices) || is_strictly_convex(std::vector<Point2>(
                                                                       s.vertices.rbegin(), s.vertices.rend()))
                                    ? solve_shape(ConvexPolygon(s.vertices), so)
                                    : solve_shape(SimplePolygon(s.vertices), so);
      const json row = {{"id", s.id},
                        {"x", sol.point.x},
                        {"y", sol.point.y},
                        {"F", sol.point.F},
                        {"lambda1", sol.lambda1.best()},
                        {"mu1", sol.mu1.best()},
                        {"lambda1_err", sol.lambda1.error_estimate.value_or(0.0)},
                        {"mu1_err", sol.mu1.error_estimate.value_or(0.0)},
                        {"h", sol.lambda1.h},
                        {"nodes", sol.lambda1.nodes}};
      out << row.dump(-1, ' ', false, json::error_handler_t::replace) << '\n';
    } catch (const Error& e) {
      ++skipped;
      std::cerr << "shape " << s.id << " skipped: " << e.what() << '\n';
    }
  }
  write_text(a.out, out.str());
  std::cerr << "solved " << shapes.size() - static_cast<std::size_t>(skipped) << " of " << shapes.size() << '\n';
  return skipped ? kPartial : kOk;
}

struct DiagramArgs {
  int count = 1000;
  int sides_min = 3;
  int sides_max = 30;
  std::uint64_t seed = 1;
  int refine = 0;
  int workers = 0;
  std::string out;
  std::string svg;
};

int run_diagram(const DiagramArgs& a) {
  SampleConfig cfg;
  cfg.count = a.count;
  cfg.sides_min = a.sides_min;
  cfg.sides_max = a.sides_max;
  cfg.master_seed = a.seed;
  cfg.refinements = a.refine;
  cfg.workers = a.workers > 0 ? a.workers : default_workers();
  echo_config("diagram", {{"count", cfg.count}, {"sides_min", cfg.sides_min}, {"sides_max", cfg.sides_max},
                          {"seed", cfg.master_seed}, {"refine", cfg.refinements}, {"workers", cfg.workers},
                          {"out", a.out}, {"svg", a.svg}});
  const SampleRun run = run_sample(cfg);
  for (const auto& f : run.failures)
    std::cerr << "shape " << f.id << " (seed " << f.seed << ") skipped: " << f.message << '\n';
  write_csv(run.records, std::filesystem::path(a.out));
  if (!a.svg.empty()) {
    SvgOptions so;
    so.provenance = g_command_line;
    write_svg(run.records, reference_curves(), std::filesystem::path(a.svg), so);
  }
  std::cerr << "completed " << run.records.size() << " of " << run.attempted << '\n';
  return run.failures.empty() ? kOk : kPartial;
}

struct FamilyArgs {
  std::string kind;
  std::string params;
  std::string out;
  int refine = 0;
};

int run_family(const FamilyArgs& a) {
  echo_config("family", {{"kind", a.kind}, {"params", a.params}, {"out", a.out}, {"refine", a.refine}});
  const FamilyKind kind = parse_family_kind(a.kind);
  const auto params = parse_list(a.params);
  FamilyOptions fo;
  fo.refinements = a.refine;
  const auto trace = family_trace(kind, params, fo);
  std::vector<DiagramRecord> records;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const auto& f = trace[i];
    records.push_back(f.record);
    json row = {{"param", params[i]}, {"x", f.record.x}, {"y", f.record.y}, {"F", f.record.F},
                {"raw_area", f.raw_area}, {"mu1_mesh", f.mu1_mesh}};
    if (f.rayleigh_bound) row["rayleigh_bound"] = *f.rayleigh_bound;
    if (f.cosine_rayleigh_bound) row["cosine_rayleigh_bound"] = *f.cosine_rayleigh_bound;
    std::cout << row.dump() << '\n';
  }
  write_csv(records, std::filesystem::path(a.out));
  return kOk;
}

struct VerifyArgs {
  std::string in;
  std::string out;
};

int run_verify(const VerifyArgs& a) {
  echo_config("verify", {{"in", a.in}, {"out", a.out}});
  const auto records = read_csv(std::filesystem::path(a.in));
  json rep = verify_report(records);
  rep["command"] = g_command_line;
  const std::string text = rep.dump(2) + "\n";
  if (a.out.empty())
    std::cout << text;
  else
    write_text(a.out, text);
  const long long v = theorem_violations(rep);
  std::cerr << "theorem violations: " << v << " over " << rep["checked"] << " records\n";
  return v == 0 ? kOk : kPartial;
}

struct PlotArgs {
  std::string in;
  std::string out;
};

int run_plot(const PlotArgs& a) {
  echo_config("plot", {{"in", a.in}, {"out", a.out}});
  const auto records = read_csv(std::filesystem::path(a.in));
  SvgOptions so;
  so.provenance = g_command_line;
  write_svg(records, reference_curves(), std::filesystem::path(a.out), so);
  return kOk;
}

int run_constants() {
  echo_config("constants", json::object());
  const DiagramConstants& k = diagram_constants();
  std::printf("j01               = %.15f\n", k.j01);
  std::printf("j11p              = %.15f\n", k.j11p);
  std::printf("pi j01^2          = %.10f\n", k.disc_x);
  std::printf("pi j11p^2         = %.10f\n", k.disc_y);
  std::printf("pi^4/4            = %.10f\n", k.theorem_lower);
  std::printf("9 pi^2 j01^2      = %.10f\n", k.theorem_upper);
  std::printf("pi^2 j01^2        = %.10f\n", k.conjecture_lower);
  std::printf("pi^2 j01^2 j11p^2 = %.10f\n", k.conjecture_upper);
  return kOk;
}

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::IoError:
    case ErrorCode::SchemaError: return kIo;
    case ErrorCode::InvalidParam:
    case ErrorCode::InvalidInput: return kUsage;
    default: return kPartial;
  }
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 0; i < argc; ++i) g_command_line += (i ? " " : "") + std::string(argv[i]);

  CLI::App app{"Dirichlet/Neumann eigenvalue diagram of planar polygons"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Write random convex polygons (uniform in the unit square) as JSONL");
  g->add_option("--count", gen.count, "Number of polygons")->capture_default_str();
  g->add_option("--sides-min", gen.sides_min, "Smallest vertex count")->capture_default_str();
  g->add_option("--sides-max", gen.sides_max, "Largest vertex count")->capture_default_str();
  g->add_option("--seed", gen.seed, "Master seed")->capture_default_str();
  g->add_option("--out", gen.out, "Output JSONL path")->required();

  EigArgs eig;
  auto* e = app.add_subcommand("eig", "Solve lambda1 and mu1 for every shape of a JSONL file");
  e->add_option("--in", eig.in, "Input shapes JSONL")->required();
  e->add_option("--refine", eig.refine, "Refinement level of the fine mesh (0 = automatic)")->capture_default_str();
  e->add_option("--out", eig.out, "Output JSONL path")->required();

  DiagramArgs dia;
  auto* d = app.add_subcommand("diagram", "Sample random convex polygons and write their diagram points as CSV");
  d->add_option("--count", dia.count, "Number of polygons")->capture_default_str();
  d->add_option("--sides-min", dia.sides_min, "Smallest vertex count")->capture_default_str();
  d->add_option("--sides-max", dia.sides_max, "Largest vertex count")->capture_default_str();
  d->add_option("--seed", dia.seed, "Master seed")->capture_default_str();
  d->add_option("--refine", dia.refine, "Refinement level of the fine mesh (0 = automatic)")->capture_default_str();
  d->add_option("--workers", dia.workers,
                "Worker threads (0 = EIGDIAG_THREADS, else hardware concurrency)")
      ->capture_default_str();
  d->add_option("--out", dia.out, "Output CSV path")->required();
  d->add_option("--svg", dia.svg, "Also write an SVG plot");

  FamilyArgs fam;
  auto* f = app.add_subcommand("family", "Trace a one-parameter family of shapes");
  f->add_option("--kind", fam.kind, "rhombus | rectangle | isosceles | regular | ellipse | dumbbell")
      ->required()
      ->check(CLI::IsMember({"rhombus", "rectangle", "isosceles", "regular", "ellipse", "dumbbell"}));
  f->add_option("--params", fam.params,
                "Comma separated: diameter | aspect | apex angle (rad) | vertex count | eps | channel height")
      ->required();
  f->add_option("--refine", fam.refine, "Refinement level of the fine mesh (0 = automatic)")->capture_default_str();
  f->add_option("--out", fam.out, "Output CSV path")->required();

  VerifyArgs ver;
  auto* v = app.add_subcommand("verify", "Check every inequality on a diagram CSV and write a JSON summary");
  v->add_option("--in", ver.in, "Input CSV")->required();
  v->add_option("--out", ver.out, "Output JSON path (default: standard output)");

  PlotArgs plot;
  auto* p = app.add_subcommand("plot", "Plot a diagram CSV as SVG");
  p->add_option("--in", plot.in, "Input CSV")->required();
  p->add_option("--out", plot.out, "Output SVG path")->required();

  auto* c = app.add_subcommand("constants", "Print the Bessel zeros and the reference constants");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int rc = app.exit(err);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (g->parsed()) return run_gen(gen);
    if (e->parsed()) return run_eig(eig);
    if (d->parsed()) return run_diagram(dia);
    if (f->parsed()) return run_family(fam);
    if (v->parsed()) return run_verify(ver);
    if (p->parsed()) return run_plot(plot);
    if (c->parsed()) return run_constants();
  } catch (const Error& err) {
    std::cerr << "error: " << err.what() << '\n';
    return exit_code_for(err);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
