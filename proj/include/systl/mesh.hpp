#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "systl/errors.hpp"

namespace systl {

// Undirected edge of a triangle mesh. Vertex ids satisfy a < b.
// f0 is always a valid incident face; f1 == -1 marks a boundary edge.
struct Edge {
  int a = -1;
  int b = -1;
  int f0 = -1;
  int f1 = -1;
  bool boundary() const { return f1 < 0; }
};

// Summary of the checks run by EmbeddedMesh construction / validate().
struct SurfaceInfo {
  int num_vertices = 0;
  int num_edges = 0;
  int num_faces = 0;
  int euler = 0;           // V - E + F
  int genus = 0;           // from V - E + F = 2 - 2g - b
  int boundary_loops = 0;  // b
  double area = 0.0;
  double boundary_length = 0.0;  // total over all loops
  double min_edge = 0.0;
  double mean_edge = 0.0;
  double bbox_diag = 0.0;
  bool unit_circle_boundary = false;  // single loop on the unit x1x2-circle
  double circle_deficit = 0.0;        // 2*pi - boundary_length when flagged
};

// Triangulated surface embedded in R^n, n >= 2. Connectivity must be an
// oriented 2-manifold (with or without boundary); construction verifies this
// and derives edges, boundary loops, face areas and the Euler data. Instances
// are immutable after construction.
class EmbeddedMesh {
 public:
  EmbeddedMesh(int ambient_dim, std::vector<double> coords,
               std::vector<std::array<int, 3>> faces,
               std::string comment = {});

  int ambient_dim() const { return n_; }
  int num_vertices() const { return static_cast<int>(coords_.size()) / n_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int num_faces() const { return static_cast<int>(faces_.size()); }

  std::span<const double> vertex(int v) const {
    return {coords_.data() + static_cast<size_t>(v) * n_, static_cast<size_t>(n_)};
  }
  const std::vector<double>& coords() const { return coords_; }
  const std::array<int, 3>& face(int f) const { return faces_[f]; }
  const std::vector<std::array<int, 3>>& faces() const { return faces_; }

  const Edge& edge(int e) const { return edges_[e]; }
  const std::vector<Edge>& edges() const { return edges_; }
  // Edge id for the unordered pair {u, v}, or -1 if absent.
  int edge_between(int u, int v) const;
  double edge_length(int e) const { return edge_len_[e]; }
  const std::array<int, 3>& face_edges(int f) const { return face_edges_[f]; }
  double face_area(int f) const { return face_area_[f]; }
  // Edges incident to v, ascending ids.
  const std::vector<int>& vertex_edges(int v) const { return vert_edges_[v]; }

  double area() const { return area_; }
  int genus() const { return info_.genus; }
  int boundary_count() const { return info_.boundary_loops; }
  // Boundary loop k as a closed vertex cycle, oriented by the face traversal.
  const std::vector<int>& boundary_loop(int k) const { return bdry_loops_[k]; }
  bool edge_on_boundary(int e) const { return edges_[e].boundary(); }
  // Boundary loop index of a boundary edge, -1 for interior edges.
  int boundary_loop_of(int e) const { return edge_bdry_loop_[e]; }
  bool vertex_on_boundary(int v) const { return vert_on_bdry_[v]; }

  const SurfaceInfo& info() const { return info_; }
  // Free-form comment block carried through io (e.g. generator provenance).
  const std::string& comment() const { return comment_; }
  void set_comment(std::string c) { comment_ = std::move(c); }

  double squared_dist(int u, int v) const;
  double dist(int u, int v) const;

 private:
  int n_;
  std::vector<double> coords_;
  std::vector<std::array<int, 3>> faces_;
  std::string comment_;

  std::vector<Edge> edges_;
  std::vector<double> edge_len_;
  std::vector<std::array<int, 3>> face_edges_;
  std::vector<double> face_area_;
  std::vector<std::vector<int>> vert_edges_;
  std::vector<std::vector<int>> bdry_loops_;
  std::vector<int> edge_bdry_loop_;
  std::vector<char> vert_on_bdry_;
  double area_ = 0.0;
  SurfaceInfo info_;

  void build_edges();
  void check_degeneracy();
  void check_manifold();
  void check_orientation() const;
  void check_connected() const;
  void build_boundary();
  void finish_info();
};

// Re-derives the summary (cheap; the checks already ran at construction).
SurfaceInfo validate(const EmbeddedMesh& m);

// Stable triangle area from side lengths (Kahan's ordering of Heron).
double triangle_area(double a, double b, double c);

// One round of 1->4 midpoint refinement. Midpoints of boundary edges whose
// endpoints lie on the unit x1x2-circle are re-projected onto the circle.
EmbeddedMesh refine(const EmbeddedMesh& m, int rounds = 1);

}  // namespace systl
