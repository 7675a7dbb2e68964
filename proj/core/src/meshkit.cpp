#include "eigdiag/meshkit.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace eigdiag {

namespace {

std::uint64_t edge_key(int a, int b) noexcept {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

double tri_area(Point2 a, Point2 b, Point2 c) noexcept { return 0.5 * cross(b - a, c - a); }

double angle_at(Point2 apex, Point2 p, Point2 q) noexcept {
  const Point2 u = p - apex, v = q - apex;
  return std::atan2(std::abs(cross(u, v)), dot(u, v));
}

double min_tri_angle(Point2 a, Point2 b, Point2 c) noexcept {
  return std::min({angle_at(a, b, c), angle_at(b, c, a), angle_at(c, a, b)});
}

struct EdgeUse {
  std::uint64_t key;
  int tri;
  bool forward;  // traversed from lower to higher index
};

std::vector<EdgeUse> collect_edge_uses(const std::vector<Triangle>& tris) {
  std::vector<EdgeUse> uses;
  uses.reserve(3 * tris.size());
  for (std::size_t t = 0; t < tris.size(); ++t) {
    const auto& tr = tris[t];
    for (int k = 0; k < 3; ++k) {
      const int a = tr[static_cast<std::size_t>(k)], b = tr[static_cast<std::size_t>((k + 1) % 3)];
      uses.push_back({edge_key(a, b), static_cast<int>(t), a < b});
    }
  }
  std::sort(uses.begin(), uses.end(), [](const EdgeUse& x, const EdgeUse& y) {
    return x.key < y.key || (x.key == y.key && x.tri < y.tri);
  });
  return uses;
}

}  // namespace

TriMesh::TriMesh(std::vector<Point2> nodes, std::vector<Triangle> triangles)
    : nodes_(std::move(nodes)), triangles_(std::move(triangles)) {
  const int n = static_cast<int>(nodes_.size());
  if (triangles_.empty()) throw Error(ErrorCode::InvalidInput, "mesh has no triangles");
  for (const auto& t : triangles_) {
    for (int v : t)
      if (v < 0 || v >= n) throw Error(ErrorCode::InvalidInput, "triangle references a missing node");
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2])
      throw Error(ErrorCode::InvalidInput, "triangle repeats a node");
    if (!(triangle_area(*this, t) > 0.0))
      throw Error(ErrorCode::InvalidInput, "triangle is not positively oriented");
  }

  boundary_.assign(nodes_.size(), 0);
  const auto uses = collect_edge_uses(triangles_);
  double h2 = 0.0;
  for (std::size_t i = 0; i < uses.size();) {
    std::size_t j = i;
    while (j < uses.size() && uses[j].key == uses[i].key) ++j;
    const auto count = j - i;
    const int a = static_cast<int>(uses[i].key >> 32);
    const int b = static_cast<int>(uses[i].key & 0xffffffffu);
    if (count > 2) throw Error(ErrorCode::InvalidInput, "edge shared by more than two triangles");
    if (count == 2 && uses[i].forward == uses[i + 1].forward)
      throw Error(ErrorCode::InvalidInput, "inconsistent orientation across an edge");
    if (count == 1) {
      boundary_[static_cast<std::size_t>(a)] = 1;
      boundary_[static_cast<std::size_t>(b)] = 1;
    }
    const Point2 e = nodes_[static_cast<std::size_t>(b)] - nodes_[static_cast<std::size_t>(a)];
    h2 = std::max(h2, dot(e, e));
    i = j;
  }
  h_ = std::sqrt(h2);

  min_angle_ = std::numeric_limits<double>::infinity();
  for (const auto& t : triangles_)
    min_angle_ = std::min(min_angle_, min_tri_angle(nodes_[static_cast<std::size_t>(t[0])],
                                                    nodes_[static_cast<std::size_t>(t[1])],
                                                    nodes_[static_cast<std::size_t>(t[2])]));
}

std::size_t TriMesh::interior_count() const noexcept {
  return static_cast<std::size_t>(std::count(boundary_.begin(), boundary_.end(), std::uint8_t{0}));
}

double triangle_area(const TriMesh& mesh, const Triangle& t) noexcept {
  const auto& p = mesh.nodes();
  return tri_area(p[static_cast<std::size_t>(t[0])], p[static_cast<std::size_t>(t[1])],
                  p[static_cast<std::size_t>(t[2])]);
}

double total_area(const TriMesh& mesh) noexcept {
  double s = 0.0;
  for (const auto& t : mesh.triangles()) s += triangle_area(mesh, t);
  return s;
}

std::vector<std::array<int, 2>> mesh_edges(const TriMesh& mesh) {
  std::vector<std::array<int, 2>> edges;
  edges.reserve(3 * mesh.triangle_count());
  for (const auto& t : mesh.triangles())
    for (int k = 0; k < 3; ++k) {
      int a = t[static_cast<std::size_t>(k)], b = t[static_cast<std::size_t>((k + 1) % 3)];
      if (a > b) std::swap(a, b);
      edges.push_back({a, b});
    }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

TriMesh triangulate_convex(const ConvexPolygon& poly) {
  const auto v = poly.vertices();
  const int n = static_cast<int>(v.size());
  std::vector<Point2> nodes(v.begin(), v.end());
  nodes.push_back(basic_metrics(poly).centroid);
  std::vector<Triangle> tris;
  tris.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) tris.push_back({i, (i + 1) % n, n});
  return TriMesh(std::move(nodes), std::move(tris));
}

TriMesh triangulate_simple(const SimplePolygon& poly) {
  const auto v = poly.vertices();
  std::vector<Point2> nodes(v.begin(), v.end());
  std::vector<int> ring(nodes.size());
  for (std::size_t i = 0; i < ring.size(); ++i) ring[i] = static_cast<int>(i);
  std::vector<Triangle> tris;
  tris.reserve(nodes.size() - 2);

  auto P = [&](int i) { return nodes[static_cast<std::size_t>(i)]; };
  auto inside_or_on = [](Point2 p, Point2 a, Point2 b, Point2 c) {
    return cross(b - a, p - a) >= 0 && cross(c - b, p - b) >= 0 && cross(a - c, p - c) >= 0;
  };

  while (ring.size() > 3) {
    const std::size_t m = ring.size();
    int best = -1;
    double best_quality = -1.0;
    for (std::size_t k = 0; k < m; ++k) {
      const int ip = ring[(k + m - 1) % m], ic = ring[k], in = ring[(k + 1) % m];
      const Point2 a = P(ip), b = P(ic), c = P(in);
      if (!(cross(b - a, c - b) > 0)) continue;  // reflex or flat corner
      bool blocked = false;
      for (std::size_t q = 0; q < m && !blocked; ++q) {
        const int iq = ring[q];
        if (iq == ip || iq == ic || iq == in) continue;
        blocked = inside_or_on(P(iq), a, b, c);
      }
      if (blocked) continue;
      const double quality = min_tri_angle(a, b, c);
      if (quality > best_quality) {
        best_quality = quality;
        best = static_cast<int>(k);
      }
    }
    if (best < 0) throw Error(ErrorCode::NotSimple, "ear clipping found no ear; polygon is not simple");
    const auto k = static_cast<std::size_t>(best);
    tris.push_back({ring[(k + m - 1) % m], ring[k], ring[(k + 1) % m]});
    ring.erase(ring.begin() + best);
  }
  tris.push_back({ring[0], ring[1], ring[2]});
  return TriMesh(std::move(nodes), std::move(tris));
}

TriMesh refine(const TriMesh& mesh) {
  std::vector<Point2> nodes = mesh.nodes();
  std::unordered_map<std::uint64_t, int> midpoint;
  midpoint.reserve(3 * mesh.triangle_count());
  auto mid = [&](int a, int b) {
    const auto [it, inserted] = midpoint.try_emplace(edge_key(a, b), static_cast<int>(nodes.size()));
    if (inserted) {
      const Point2 pa = nodes[static_cast<std::size_t>(a)], pb = nodes[static_cast<std::size_t>(b)];
      nodes.push_back({0.5 * (pa.x + pb.x), 0.5 * (pa.y + pb.y)});
    }
    return it->second;
  };
  std::vector<Triangle> tris;
  tris.reserve(4 * mesh.triangle_count());
  for (const auto& t : mesh.triangles()) {
    const int a = t[0], b = t[1], c = t[2];
    const int ab = mid(a, b), bc = mid(b, c), ca = mid(c, a);
    tris.push_back({a, ab, ca});
    tris.push_back({ab, b, bc});
    tris.push_back({ca, bc, c});
    tris.push_back({ab, bc, ca});
  }
  return TriMesh(std::move(nodes), std::move(tris));
}

TriMesh refine(const TriMesh& mesh, int levels) {
  TriMesh m = mesh;
  for (int i = 0; i < levels; ++i) m = refine(m);
  return m;
}

TriMesh smooth(const TriMesh& mesh, int iters) {
  if (iters <= 0) return mesh;
  std::vector<Point2> nodes = mesh.nodes();
  const auto& tris = mesh.triangles();
  const std::size_t n = nodes.size();

  std::vector<std::vector<int>> nbrs(n), incident(n);
  for (const auto& e : mesh_edges(mesh)) {
    nbrs[static_cast<std::size_t>(e[0])].push_back(e[1]);
    nbrs[static_cast<std::size_t>(e[1])].push_back(e[0]);
  }
  for (std::size_t t = 0; t < tris.size(); ++t)
    for (int v : tris[t]) incident[static_cast<std::size_t>(v)].push_back(static_cast<int>(t));

  for (int it = 0; it < iters; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      if (mesh.is_boundary(static_cast<int>(i))) continue;
      Point2 avg{};
      for (int j : nbrs[i]) avg = avg + nodes[static_cast<std::size_t>(j)];
      avg = (1.0 / static_cast<double>(nbrs[i].size())) * avg;
      const Point2 old = nodes[i];
      nodes[i] = avg;
      bool ok = true;
      for (int t : incident[i]) {
        const auto& tr = tris[static_cast<std::size_t>(t)];
        if (!(tri_area(nodes[static_cast<std::size_t>(tr[0])], nodes[static_cast<std::size_t>(tr[1])],
                       nodes[static_cast<std::size_t>(tr[2])]) > 0.0)) {
          ok = false;
          break;
        }
      }
      if (!ok) nodes[i] = old;
    }
  }
  return TriMesh(std::move(nodes), tris);
}

TriMesh grid_mesh(int nx, int ny, double lx, double ly) {
  if (nx < 1 || ny < 1 || !(lx > 0.0) || !(ly > 0.0))
    throw Error(ErrorCode::InvalidParam, "grid_mesh: need positive cell counts and extents");
  std::vector<Point2> nodes;
  nodes.reserve(static_cast<std::size_t>((nx + 1) * (ny + 1)));
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i) nodes.push_back({lx * i / nx, ly * j / ny});
  auto id = [nx](int i, int j) { return j * (nx + 1) + i; };
  std::vector<Triangle> tris;
  tris.reserve(static_cast<std::size_t>(2 * nx * ny));
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      tris.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      tris.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  return TriMesh(std::move(nodes), std::move(tris));
}

MeshStats mesh_stats(const TriMesh& mesh) {
  return {mesh.h(), mesh.min_angle(), mesh.node_count(), mesh.triangle_count()};
}

std::vector<std::string> audit_mesh(const TriMesh& mesh) {
  std::vector<std::string> problems;
  const auto& nodes = mesh.nodes();
  const auto& tris = mesh.triangles();
  for (std::size_t t = 0; t < tris.size(); ++t)
    if (!(triangle_area(mesh, tris[t]) > 0.0))
      problems.push_back("triangle " + std::to_string(t) + " has non-positive area");

  std::unordered_map<std::uint64_t, int> count;
  for (const auto& t : tris)
    for (int k = 0; k < 3; ++k) ++count[edge_key(t[static_cast<std::size_t>(k)], t[static_cast<std::size_t>((k + 1) % 3)])];
  std::vector<std::uint8_t> on_boundary(nodes.size(), 0);
  double h = 0.0;
  for (const auto& [key, c] : count) {
    const auto a = static_cast<std::size_t>(key >> 32), b = static_cast<std::size_t>(key & 0xffffffffu);
    if (c > 2) problems.push_back("edge " + std::to_string(a) + "-" + std::to_string(b) + " is shared by " + std::to_string(c) + " triangles");
    if (c == 1) on_boundary[a] = on_boundary[b] = 1;
    h = std::max(h, distance(nodes[a], nodes[b]));
  }
  if (on_boundary != mesh.boundary()) problems.push_back("boundary flags disagree with single-triangle edges");
  if (std::abs(h - mesh.h()) > 1e-15 * h) problems.push_back("stored h is not the longest edge");

  std::vector<std::size_t> order(nodes.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return nodes[a].x < nodes[b].x || (nodes[a].x == nodes[b].x && nodes[a].y < nodes[b].y);
  });
  const double tol = 1e-12 * h;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t j = i + 1; j < order.size() && nodes[order[j]].x - nodes[order[i]].x <= tol; ++j)
      if (distance(nodes[order[i]], nodes[order[j]]) <= tol)
        problems.push_back("duplicate nodes " + std::to_string(order[i]) + " and " + std::to_string(order[j]));
  return problems;
}

void write_mesh_text(const TriMesh& mesh, std::ostream& out) {
  out << "nodes " << mesh.node_count() << " tris " << mesh.triangle_count() << '\n';
  out << std::setprecision(17);
  for (std::size_t i = 0; i < mesh.node_count(); ++i)
    out << mesh.nodes()[i].x << ' ' << mesh.nodes()[i].y << ' ' << int(mesh.boundary()[i]) << '\n';
  for (const auto& t : mesh.triangles()) out << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

void write_mesh_text(const TriMesh& mesh, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  write_mesh_text(mesh, out);
}

TriMesh read_mesh_text(std::istream& in) {
  std::string w1, w2;
  std::size_t n = 0, t = 0;
  if (!(in >> w1 >> n >> w2 >> t) || w1 != "nodes" || w2 != "tris")
    throw Error(ErrorCode::SchemaError, "mesh header must read 'nodes N tris T'");
  std::vector<Point2> nodes(n);
  for (auto& p : nodes) {
    int b = 0;
    if (!(in >> p.x >> p.y >> b)) throw Error(ErrorCode::SchemaError, "truncated node list");
  }
  std::vector<Triangle> tris(t);
  for (auto& tr : tris)
    if (!(in >> tr[0] >> tr[1] >> tr[2])) throw Error(ErrorCode::SchemaError, "truncated triangle list");
  // boundary flags are re-derived from the topology
  return TriMesh(std::move(nodes), std::move(tris));
}

}  // namespace eigdiag
