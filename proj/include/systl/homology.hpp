#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "systl/mesh.hpp"

namespace systl {

// Z2 homology class relative to a fixed basis, one bit per basis element.
using CycleSig = std::uint64_t;

// Closed cycle in the 1-skeleton: vertices[i] -> vertices[i+1] (cyclically)
// along edges[i].
struct EdgeCycle {
  std::vector<int> vertices;
  std::vector<int> edges;
  double length = 0.0;

  static EdgeCycle from_vertices(const EmbeddedMesh& m, std::vector<int> verts);
  bool is_simple() const;
};

// Rotation/reflection-minimal vertex sequence; total order on cycles used
// for deterministic tie-breaking.
std::vector<int> canonical_cycle(const std::vector<int>& verts);

// Cocycle basis of H^1(S; Z2) from a tree-cotree decomposition. Boundary
// loops are capped with a dummy dual node, so the pairing sees the classes of
// the closed-up surface; in particular every boundary loop is null-homologous
// and a simple cycle is separating iff its class vanishes.
class HomologyBasis {
 public:
  explicit HomologyBasis(const EmbeddedMesh& m);

  const EmbeddedMesh& mesh() const { return *mesh_; }
  int rank() const { return rank_; }  // = 2 * genus
  CycleSig edge_sig(int e) const { return sig_[e]; }
  // Edge sets of the supporting cocycles, one per bit.
  const std::vector<std::vector<int>>& cocycles() const { return cocycles_; }
  // Loops in the 1-skeleton generating H_1; cocycle i pairs to 1 with loop i
  // and to 0 with every other (verified in tests).
  const std::vector<EdgeCycle>& generators() const { return gens_; }
  bool edge_in_tree(int e) const { return in_tree_[e]; }

 private:
  const EmbeddedMesh* mesh_;
  int rank_ = 0;
  std::vector<CycleSig> sig_;
  std::vector<std::vector<int>> cocycles_;
  std::vector<EdgeCycle> gens_;
  std::vector<char> in_tree_;
};

inline HomologyBasis build_basis(const EmbeddedMesh& m) { return HomologyBasis(m); }

// Class of a closed edge cycle: xor of edge signatures.
CycleSig cycle_class(const HomologyBasis& basis, const EdgeCycle& cycle);

// A simple closed cycle separates iff its class vanishes.
bool is_separating(const HomologyBasis& basis, const EdgeCycle& cycle);

// Independent route: delete the cycle's edges and count components of the
// face adjacency graph (boundary loops capped). Requires a simple cycle.
bool oracle_is_separating(const EmbeddedMesh& m, const EdgeCycle& cycle);

// Class of a closed transverse curve given as the cyclic sequence of edges it
// crosses (consecutive crossings share a face). The curve is snapped to a
// homotopic walk in the 1-skeleton and classified there.
CycleSig transverse_class(const HomologyBasis& basis, std::span<const int> crossed);

// Splits a closed walk with nonzero class at repeated vertices until a simple
// cycle remains; the result has nonzero class and no greater length.
EdgeCycle simplify_to_nonzero(const HomologyBasis& basis,
                              const std::vector<int>& walk);

// Every simple cycle of the 1-skeleton, deterministically ordered. Guarded:
// refuses meshes with more than `max_edges` edges.
std::vector<EdgeCycle> all_simple_cycles(const EmbeddedMesh& m, int max_edges = 30);

}  // namespace systl
