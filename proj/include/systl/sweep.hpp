#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "systl/homology.hpp"
#include "systl/mesh.hpp"

namespace systl {

// One connected component of a coordinate level set. Points are crossing
// points of mesh edges with the level plane, stored flat with ambient-dim
// stride; `edges[i]` is the mesh edge carrying point i and `faces[i]` the face
// the curve traverses between points i and i+1 (loops wrap around). Arcs start
// and end on boundary edges; loops carry their Z2 class, arcs store 0.
struct LevelComponent {
  bool is_loop = false;
  std::vector<int> edges;
  std::vector<int> faces;
  std::vector<double> points;
  double length = 0.0;
  CycleSig cls = 0;
};

// Level set of a coordinate function at a regular value. `level` is the value
// actually used: on a vertex collision the requested value is nudged by
// +1e-7 of the coordinate extent until regular. Components are ordered by
// their smallest crossed edge; arcs come first.
struct LevelSlice {
  int axis = 0;
  double level = 0.0;
  std::vector<LevelComponent> components;
  int num_arcs = 0;
  int num_loops = 0;
  double total_length = 0.0;
  bool has_nonsep_loop = false;
};

LevelSlice extract_level(const EmbeddedMesh& m, const HomologyBasis& basis,
                         int axis, double t);

// Exact piecewise-linear co-area identity: integral over t of the level-set
// length equals the sum over faces of |grad x_axis| * area. The gradient of a
// coordinate is 1-Lipschitz, so integral_rhs <= area_lhs up to roundoff.
struct CoareaReport {
  int axis = 0;
  double area_lhs = 0.0;
  double integral_rhs = 0.0;
};

CoareaReport coarea_check(const EmbeddedMesh& m, int axis);

// Levels whose slice contains a non-separating loop, detected on a uniform
// sample grid (runs separated by a single negative sample are merged) and
// sharpened by bisection to width 1e-4. On a genus-g surface this is a union
// of at most 2g intervals up to sampling slack; empty for genus 0.
struct IntervalReport {
  int axis = 0;
  double lo = 0.0, hi = 0.0;  // coordinate range scanned
  std::vector<std::array<double, 2>> intervals;
  double measure = 0.0;  // total width
};

IntervalReport nonsep_interval(const EmbeddedMesh& m, const HomologyBasis& basis,
                               int axis, int samples = 512);

// Compares the boundary-to-boundary arc of a slice against the shortest
// 1-skeleton path between the same two boundary crossings (endpoints snapped
// to the nearest vertex of their boundary edge). The arc is a path in the
// surface with those endpoints, so gap >= -tol with tol = 5 * mean edge.
struct ArcComparison {
  int axis = 0;
  double level = 0.0;
  double arc_length = 0.0;
  double geodesic_length = 0.0;
  double gap = 0.0;  // arc_length - geodesic_length
  double tol = 0.0;
};

ArcComparison arc_vs_geodesic(const EmbeddedMesh& m, int axis, double t);

// Closed curve w bounding the coordinate rectangle [a,b] x [c,d]: the four
// slice arcs at x1 = a, b and x2 = c, d, each restricted to the other
// coordinate's range and joined at corner points inside triangles. Separation
// is decided on the face graph with the crossed edges blocked; components
// made only of curve-visited faces are corner slivers sitting on the cut and
// belong to neither side. t1 is the side containing the mesh boundary.
// area_t1/area_t2 split the visited faces exactly along the curve chords
// (slivers are charged to t1, an underestimate of t2 within tolerance).
struct SeparatingCurve {
  std::vector<double> points;  // closed polyline, ambient stride, no repeat
  double length = 0.0;
  bool separates = false;
  bool simple = true;  // false when two portions cross the same edge
  std::vector<int> faces_t1;
  std::vector<int> faces_t2;
  double area_t1 = 0.0;
  double area_t2 = 0.0;
};

SeparatingCurve build_w(const EmbeddedMesh& m, double a, double b, double c,
                        double d);

// Closes a one-boundary-loop face set with a triangle fan: the apex is the
// smallest vertex on the loop, so cap_area <= length * diameter / 2 and a
// planar convex loop is capped by its enclosed area exactly.
struct CapResult {
  EmbeddedMesh closed;
  double cap_area = 0.0;
  int apex = -1;          // vertex id in `closed`
  double rim_length = 0.0;
  double rim_diameter = 0.0;
};

CapResult cap_with_cone(const EmbeddedMesh& m, const std::vector<int>& faces);

// Per-axis sweep summary: slice census, non-separating band, co-area sides,
// arc-vs-geodesic table, and (when the systole is supplied) the adjusted band
// endpoints moved outward by at most ell/100 to levels whose arc gap is at
// most ell/10. Adjusted endpoints are NaN when no band exists or no level
// qualifies.
struct LevelRow {
  double t = 0.0;
  int arcs = 0;
  int loops = 0;
  double total_length = 0.0;
  bool nonsep = false;
};

struct SweepReport {
  int axis = 0;
  int samples = 0;
  double lo = 0.0, hi = 0.0;
  std::vector<LevelRow> rows;
  IntervalReport interval;
  CoareaReport coarea;
  std::vector<ArcComparison> arc_table;
  double ell = std::numeric_limits<double>::quiet_NaN();
  double adj_lo = std::numeric_limits<double>::quiet_NaN();
  double adj_hi = std::numeric_limits<double>::quiet_NaN();
};

SweepReport sweep_axis(const EmbeddedMesh& m, const HomologyBasis& basis,
                       int axis, int samples = 512,
                       double ell = std::numeric_limits<double>::quiet_NaN());

// Replay of the area-excess argument on a genus-1 surface with unit-circle
// boundary. Exactly one of three cases certifies a lower bound on area - pi:
//   A: a coordinate axis has non-separating measure >= ell/10    -> ell^2/10
//   B: some axis has measure >= ell/100 of levels with arc gap
//      >= ell/10                                                 -> ell^2/1000
//   C: both measures are small; the rectangle curve w through
//      low-gap levels just outside the bands separates, is shorter
//      than 0.9 ell, leaves area_t1 >= pi - (0.81/4pi) ell^2 by the
//      isoperimetric inequality, and capping t2 gives a torus whose
//      systole ell_1 satisfies ell <= 2 ell_1 and area_t2 > ell^2/8 -> ell^2/100
// All bounds are reduced by tol = 5 * mean edge. When a case-C check fails
// numerically the certificate downgrades to inconclusive ('I', bound 0) with
// diagnostics instead of overclaiming.
struct ProofCertificate {
  char case_fired = 'I';  // 'A', 'B', 'C' or 'I'
  double ell = 0.0;
  double tol = 0.0;
  double area = 0.0;
  IntervalReport interval_x, interval_y;
  double nonsep_measure_x = 0.0, nonsep_measure_y = 0.0;
  double gap_measure_x = std::numeric_limits<double>::quiet_NaN();
  double gap_measure_y = std::numeric_limits<double>::quiet_NaN();
  // band endpoints and adjusted levels (case C; NaN otherwise)
  double a1 = std::numeric_limits<double>::quiet_NaN();
  double b1 = std::numeric_limits<double>::quiet_NaN();
  double c1 = std::numeric_limits<double>::quiet_NaN();
  double d1 = std::numeric_limits<double>::quiet_NaN();
  double a = std::numeric_limits<double>::quiet_NaN();
  double b = std::numeric_limits<double>::quiet_NaN();
  double c = std::numeric_limits<double>::quiet_NaN();
  double d = std::numeric_limits<double>::quiet_NaN();
  // case C quantities
  double w_length = std::numeric_limits<double>::quiet_NaN();
  double area_t1 = std::numeric_limits<double>::quiet_NaN();
  double area_t2 = std::numeric_limits<double>::quiet_NaN();
  double ell1 = std::numeric_limits<double>::quiet_NaN();
  double cap_area = std::numeric_limits<double>::quiet_NaN();
  bool w_simple = false;
  double bound = 0.0;  // certified lower bound on area - pi
  std::string diagnostics;
};

ProofCertificate trace_proof(const EmbeddedMesh& m, const HomologyBasis& basis);

// Recomputes the certified bound from the stored case and quantities alone;
// equals `bound` bit for bit on a freshly produced certificate.
double recheck_bound(const ProofCertificate& cert);

}  // namespace systl
