#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "eigdiag/geomkit.hpp"

namespace eigdiag {

using Triangle = std::array<int, 3>;

/// Conforming triangulation. Triangles are CCW; a node is a boundary node iff
/// it lies on an edge that belongs to a single triangle.
class TriMesh {
 public:
  TriMesh() = default;
  /// Validates orientation and conformity, then derives boundary flags,
  /// h and min_angle. Throws InvalidInput on a malformed mesh.
  TriMesh(std::vector<Point2> nodes, std::vector<Triangle> triangles);

  const std::vector<Point2>& nodes() const noexcept { return nodes_; }
  const std::vector<Triangle>& triangles() const noexcept { return triangles_; }
  const std::vector<std::uint8_t>& boundary() const noexcept { return boundary_; }
  bool is_boundary(int node) const noexcept { return boundary_[static_cast<std::size_t>(node)] != 0; }
  std::size_t node_count() const noexcept { return nodes_.size(); }
  std::size_t triangle_count() const noexcept { return triangles_.size(); }
  std::size_t interior_count() const noexcept;

  double h() const noexcept { return h_; }
  double min_angle() const noexcept { return min_angle_; }

 private:
  std::vector<Point2> nodes_;
  std::vector<Triangle> triangles_;
  std::vector<std::uint8_t> boundary_;
  double h_ = 0.0;
  double min_angle_ = 0.0;
};

double triangle_area(const TriMesh& mesh, const Triangle& t) noexcept;
double total_area(const TriMesh& mesh) noexcept;

/// Unique undirected edges (i < j), sorted.
std::vector<std::array<int, 2>> mesh_edges(const TriMesh& mesh);

/// Fan from the centroid: one triangle per polygon edge.
TriMesh triangulate_convex(const ConvexPolygon& poly);

/// Ear clipping, always cutting the ear whose smallest angle is largest.
TriMesh triangulate_simple(const SimplePolygon& poly);

/// Red refinement: every triangle split into four through its edge midpoints.
TriMesh refine(const TriMesh& mesh);
TriMesh refine(const TriMesh& mesh, int levels);

/// Laplacian smoothing of interior nodes (Gauss-Seidel sweep in node order).
/// A move that would make any incident triangle non-positive is skipped.
TriMesh smooth(const TriMesh& mesh, int iters);

/// Structured nx-by-ny grid on [0, lx] x [0, ly], each cell cut along the
/// diagonal from its lower-left to its upper-right corner.
TriMesh grid_mesh(int nx, int ny, double lx, double ly);

struct MeshStats {
  double h = 0.0;
  double min_angle = 0.0;  // radians
  std::size_t node_count = 0;
  std::size_t tri_count = 0;
};

MeshStats mesh_stats(const TriMesh& mesh);

/// Independent audit of every TriMesh invariant; empty when the mesh is sound.
std::vector<std::string> audit_mesh(const TriMesh& mesh);

/// Plain-text format: "nodes N tris T", N lines "x y b", T lines "i j k".
void write_mesh_text(const TriMesh& mesh, std::ostream& out);
void write_mesh_text(const TriMesh& mesh, const std::filesystem::path& path);
TriMesh read_mesh_text(std::istream& in);

}  // namespace eigdiag
