#pragma once

#include <cstdint>
#include <string>

#include "systl/mesh.hpp"

namespace systl {

// Parameter record for a generated instance. Only the fields used by the
// named family matter for the geometry; `seed` selects a reproducible
// interior jitter (0 = pristine). The full record is echoed into the mesh
// comment as a `familyspec:` line so instances are self-describing.
struct FamilySpec {
  std::string family;  // disk | handle-disk | clifford | revolution |
                       // genus2-disk | csaszar
  double eps = 0.0;    // tube girth parameter (handle families)
  double R = 0.0;      // major radius (revolution)
  double r = 0.0;      // minor radius (revolution)
  int n = 0;           // grid size (clifford)
  int refine = 0;      // midpoint refinement rounds applied after assembly
  std::uint64_t seed = 0;

  // "familyspec: family=<name> eps=... R=... r=... n=... refine=... seed=..."
  std::string to_comment() const;
  // Inverse of to_comment; accepts an optional leading "familyspec:" tag.
  static FamilySpec parse(const std::string& line);
};

// Flat unit disk in the x1x2-plane (g=0, b=1), boundary exactly on the unit
// circle. Used as the hypothesis-violation fixture (genus 0).
EmbeddedMesh gen_unit_disk(int refine = 0);

// Unit disk with one thin handle: a square tube of girth 4*eps arching in x3
// between two side-eps square holes centered at (+-1/2, 0). g=1, b=1,
// boundary on the unit circle; area -> pi and systole -> 0 as eps -> 0.
// Requires 0 < eps <= 1/2.
EmbeddedMesh gen_handle_disk(double eps, int refine = 0);

// Flat Clifford torus grid in R^4, (u,v) -> (cos u, sin u, cos v, sin v)/sqrt2
// on an n x n grid. Closed (b=0), g=1, area = 2 n^2 sin^2(pi/n) -> 2 pi^2.
// Requires n >= 3.
EmbeddedMesh gen_clifford_torus(int n);

// Torus of revolution (radii R > r > 0) with a disk removed at the inner
// equator and a collar blending the hole down to the unit circle in the
// x1x2-plane. g=1, b=1, unit-circle boundary. The collar profile is an
// implementation constant recorded in the mesh comment.
EmbeddedMesh gen_revolution_torus_patch(double R, double r, int refine = 0);

// Unit disk with two handles (tubes along x2 between hole pairs at
// (+-1/2, +-7/20)). g=2, b=1, unit-circle boundary. Requires 0 < eps <= 1/2.
EmbeddedMesh gen_genus2_disk(double eps, int refine = 0);

// Csaszar's 7-vertex triangulated torus with the classical embedding
// coordinates. V=7, E=21, F=14, g=1, b=0. Oracle fixture.
EmbeddedMesh gen_csaszar();

// Dispatch on spec.family; applies `refine` rounds and, when seed != 0, a
// deterministic interior jitter of amplitude JITTER_FRACTION * min edge.
EmbeddedMesh gen_from_spec(const FamilySpec& spec);

// Moves every vertex not on a boundary loop by a uniform offset in
// [-amplitude, amplitude] per coordinate (mt19937_64 stream, vertex order).
// Boundary vertices stay fixed so inscription properties survive.
EmbeddedMesh jitter_interior(const EmbeddedMesh& m, double amplitude,
                             std::uint64_t seed);

// Flips faces (in place) to a consistent orientation per connected component,
// anchored at the lowest-index face. Throws TopologyError if non-orientable.
void orient_faces(int num_vertices, std::vector<std::array<int, 3>>& faces);

// Jitter amplitude used by gen_from_spec for seed != 0, as a fraction of the
// pristine mesh's minimum edge length. Small enough to keep every instance
// valid and every frozen oracle within its tolerance.
inline constexpr double JITTER_FRACTION = 0.02;

// Documented constant c for the boundary inscription deficit invariant:
// deficit <= c * 2*pi / nb^2 where nb = number of boundary vertices. Equal
// arcs give c = pi^2/6 ~ 1.64; the square-to-disk boundary map spreads
// vertices within a bounded angular distortion, observed c <= 1.94 across
// the families. Pinned with headroom by the generators tests.
inline constexpr double DEFICIT_CONSTANT = 4.0;

}  // namespace systl
