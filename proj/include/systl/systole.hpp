#pragma once

#include "systl/homology.hpp"
#include "systl/mesh.hpp"

namespace systl {

struct SystoleOptions {
  // Above this vertex count sources are subsampled and the result is only an
  // upper bound, flagged via `exact = false`.
  int exact_vertex_limit = 20000;
  int threads = 0;  // 0 = hardware default
};

struct SystoleReport {
  double length = 0.0;
  EdgeCycle witness;        // simple, nonzero class
  CycleSig witness_class = 0;
  bool exact = true;
  int sources = 0;
};

// Shortest cycle of the 1-skeleton with nonzero class: per-source Dijkstra on
// the (vertex, signature) product graph, pruned at half the best length.
// Ties are broken on the canonical vertex sequence, so the result does not
// depend on thread scheduling. Throws PreconditionError when the surface has
// no non-separating cycle (genus 0).
SystoleReport shortest_nonseparating(const EmbeddedMesh& m,
                                     const HomologyBasis& basis,
                                     const SystoleOptions& opts = {});

// Independent route for small meshes: enumerate every simple cycle and keep
// the shortest one the cut oracle calls non-separating.
SystoleReport brute_force_systole(const EmbeddedMesh& m, int max_edges = 30);

struct LoewnerReport {
  double length = 0.0;  // shortest non-separating cycle
  double area = 0.0;
  double ratio = 0.0;   // length^2 / area
  double bound = 0.0;   // 2 / sqrt(3)
  double tol = 0.0;
  bool pass = false;
};

// Flat-torus sanity check: on a closed genus-1 mesh the squared systole is at
// most 2/sqrt(3) times the area (up to `tol` for discretisation effects).
LoewnerReport loewner_check(const EmbeddedMesh& m, double tol = 0.0);

}  // namespace systl
