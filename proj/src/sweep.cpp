#include "systl/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <utility>

#include "systl/errors.hpp"
#include "systl/systole.hpp"

namespace systl {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kNudgeFraction = 1e-7;  // of the coordinate extent
constexpr int kMaxNudges = 32;
constexpr double kBisectWidth = 1e-4;
constexpr int kAdjustCandidates = 10;

std::string fmt(const char* f, ...) {
  va_list ap;
  va_start(ap, f);
  char buf[512];
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

double coord(const EmbeddedMesh& m, int v, int axis) {
  return m.vertex(v)[axis];
}

std::pair<double, double> coord_range(const EmbeddedMesh& m, int axis) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (int v = 0; v < m.num_vertices(); ++v) {
    double x = coord(m, v, axis);
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  return {lo, hi};
}

void check_axis(const EmbeddedMesh& m, int axis) {
  if (axis < 0 || axis >= m.ambient_dim())
    throw ParamError(fmt("axis %d out of range for ambient dimension %d", axis,
                         m.ambient_dim()));
}

// Nudges t upward until no vertex coordinate equals it exactly.
double make_regular(const EmbeddedMesh& m, int axis, double t) {
  auto [lo, hi] = coord_range(m, axis);
  double step = kNudgeFraction * (hi > lo ? hi - lo : 1.0);
  for (int tries = 0; tries <= kMaxNudges; ++tries) {
    bool hit = false;
    for (int v = 0; v < m.num_vertices() && !hit; ++v)
      if (coord(m, v, axis) == t) hit = true;
    if (!hit) return t;
    t += step;
  }
  throw DegeneracyError(
      fmt("level x%d=%.17g could not be nudged to a regular value", axis + 1, t));
}

// Level extraction; `basis` may be null when loop classes are not needed.
LevelSlice extract_impl(const EmbeddedMesh& m, const HomologyBasis* basis,
                        int axis, double t0) {
  check_axis(m, axis);
  const int n = m.ambient_dim();
  const int E = m.num_edges(), F = m.num_faces();

  LevelSlice slice;
  slice.axis = axis;
  slice.level = make_regular(m, axis, t0);
  const double t = slice.level;

  std::vector<char> crossed(E, 0);
  std::vector<double> cpts(static_cast<size_t>(E) * n, 0.0);
  std::vector<std::array<int, 2>> per_face(F, {-1, -1});
  for (int e = 0; e < E; ++e) {
    const Edge& ed = m.edge(e);
    double fa = coord(m, ed.a, axis) - t;
    double fb = coord(m, ed.b, axis) - t;
    if ((fa < 0) == (fb < 0)) continue;
    crossed[e] = 1;
    double lam = fa / (fa - fb);
    auto pa = m.vertex(ed.a), pb = m.vertex(ed.b);
    for (int k = 0; k < n; ++k)
      cpts[static_cast<size_t>(e) * n + k] = pa[k] + lam * (pb[k] - pa[k]);
    for (int f : {ed.f0, ed.f1}) {
      if (f < 0) continue;
      per_face[f][per_face[f][0] < 0 ? 0 : 1] = e;
    }
  }

  auto other_crossed = [&](int f, int e) {
    return per_face[f][0] == e ? per_face[f][1] : per_face[f][0];
  };
  auto point_of = [&](int e) {
    return std::span<const double>(cpts.data() + static_cast<size_t>(e) * n,
                                   static_cast<size_t>(n));
  };
  auto seg_len = [&](int e1, int e2) {
    auto p = point_of(e1), q = point_of(e2);
    double s = 0;
    for (int k = 0; k < n; ++k) s += (p[k] - q[k]) * (p[k] - q[k]);
    return std::sqrt(s);
  };

  std::vector<char> used(E, 0);
  auto emit = [&](LevelComponent&& c) {
    for (int e : c.edges) {
      auto p = point_of(e);
      c.points.insert(c.points.end(), p.begin(), p.end());
    }
    size_t segs = c.edges.size() - (c.is_loop ? 0 : 1);
    for (size_t i = 0; i < segs; ++i)
      c.length += seg_len(c.edges[i], c.edges[(i + 1) % c.edges.size()]);
    if (c.is_loop && basis)
      c.cls = transverse_class(*basis, std::span<const int>(c.edges));
    slice.total_length += c.length;
    if (c.is_loop) {
      ++slice.num_loops;
      if (c.cls != 0) slice.has_nonsep_loop = true;
    } else {
      ++slice.num_arcs;
    }
    slice.components.push_back(std::move(c));
  };

  // Arcs: walk inward from each unused crossed boundary edge.
  for (int e0 = 0; e0 < E; ++e0) {
    if (!crossed[e0] || used[e0] || !m.edge_on_boundary(e0)) continue;
    LevelComponent c;
    int e = e0, f = m.edge(e0).f0;
    used[e] = 1;
    c.edges.push_back(e);
    while (true) {
      int en = other_crossed(f, e);
      used[en] = 1;
      c.edges.push_back(en);
      c.faces.push_back(f);
      if (m.edge_on_boundary(en)) break;
      const Edge& ed = m.edge(en);
      f = (ed.f0 == f) ? ed.f1 : ed.f0;
      e = en;
    }
    emit(std::move(c));
  }

  // Loops: walk around from each remaining crossed edge.
  for (int e0 = 0; e0 < E; ++e0) {
    if (!crossed[e0] || used[e0]) continue;
    LevelComponent c;
    c.is_loop = true;
    const Edge& ed0 = m.edge(e0);
    int e = e0, f = std::min(ed0.f0, ed0.f1);
    used[e] = 1;
    c.edges.push_back(e);
    while (true) {
      int en = other_crossed(f, e);
      c.faces.push_back(f);
      if (en == e0) break;
      used[en] = 1;
      c.edges.push_back(en);
      const Edge& ed = m.edge(en);
      f = (ed.f0 == f) ? ed.f1 : ed.f0;
      e = en;
    }
    emit(std::move(c));
  }
  return slice;
}

// Shortest 1-skeleton path length between two vertices.
double skeleton_dist(const EmbeddedMesh& m, int src, int dst) {
  if (src == dst) return 0.0;
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(m.num_vertices(), inf);
  using QN = std::pair<double, int>;
  std::priority_queue<QN, std::vector<QN>, std::greater<>> pq;
  dist[src] = 0.0;
  pq.push({0.0, src});
  while (!pq.empty()) {
    auto [d, v] = pq.top();
    pq.pop();
    if (d > dist[v]) continue;
    if (v == dst) return d;
    for (int e : m.vertex_edges(v)) {
      const Edge& ed = m.edge(e);
      int w = ed.a == v ? ed.b : ed.a;
      double nd = d + m.edge_length(e);
      if (nd < dist[w]) {
        dist[w] = nd;
        pq.push({nd, w});
      }
    }
  }
  return dist[dst];
}

// Sampled indicator sharpened by bisection at run boundaries. Runs separated
// by a single negative sample are merged before refinement.
IntervalReport scan_intervals(int axis, double lo, double hi, int samples,
                              const std::function<bool(double)>& pred) {
  if (samples < 2) throw ParamError("interval scan needs at least 2 samples");
  IntervalReport rep;
  rep.axis = axis;
  rep.lo = lo;
  rep.hi = hi;
  if (!(hi > lo)) return rep;
  const double step = (hi - lo) / samples;
  auto at = [&](int i) { return lo + step * (i + 0.5); };

  std::vector<char> flag(samples, 0);
  for (int i = 0; i < samples; ++i) flag[i] = pred(at(i)) ? 1 : 0;

  std::vector<std::array<int, 2>> runs;
  for (int i = 0; i < samples; ++i) {
    if (!flag[i]) continue;
    int j = i;
    while (j + 1 < samples && flag[j + 1]) ++j;
    runs.push_back({i, j});
    i = j;
  }
  std::vector<std::array<int, 2>> merged;
  for (auto& r : runs) {
    if (!merged.empty() && r[0] - merged.back()[1] <= 2)
      merged.back()[1] = r[1];
    else
      merged.push_back(r);
  }

  auto bisect = [&](double f, double tr) {
    while (std::abs(tr - f) > kBisectWidth) {
      double mid = 0.5 * (f + tr);
      (pred(mid) ? tr : f) = mid;
    }
    return 0.5 * (f + tr);
  };
  for (auto& r : merged) {
    double a, b;
    if (r[0] == 0)
      a = pred(lo) ? lo : bisect(lo, at(0));
    else
      a = bisect(at(r[0] - 1), at(r[0]));
    if (r[1] == samples - 1)
      b = pred(hi) ? hi : bisect(hi, at(samples - 1));
    else
      b = bisect(at(r[1] + 1), at(r[1]));
    rep.intervals.push_back({a, b});
    rep.measure += b - a;
  }
  return rep;
}

// Arc comparison that reports "no arc" as nullopt instead of throwing.
std::optional<ArcComparison> try_arc(const EmbeddedMesh& m, int axis, double t) {
  LevelSlice slice = extract_impl(m, nullptr, axis, t);
  const int n = m.ambient_dim();
  const LevelComponent* best = nullptr;
  for (const auto& c : slice.components)
    if (!c.is_loop && (!best || c.length > best->length)) best = &c;
  if (!best) return std::nullopt;

  auto snap = [&](int e, const double* p) {
    const Edge& ed = m.edge(e);
    double da = 0, db = 0;
    auto pa = m.vertex(ed.a), pb = m.vertex(ed.b);
    for (int k = 0; k < n; ++k) {
      da += (p[k] - pa[k]) * (p[k] - pa[k]);
      db += (p[k] - pb[k]) * (p[k] - pb[k]);
    }
    if (da < db) return ed.a;
    if (db < da) return ed.b;
    return std::min(ed.a, ed.b);
  };
  int u = snap(best->edges.front(), best->points.data());
  int v = snap(best->edges.back(),
               best->points.data() + (best->edges.size() - 1) * n);

  ArcComparison cmp;
  cmp.axis = axis;
  cmp.level = slice.level;
  cmp.arc_length = best->length;
  cmp.geodesic_length = skeleton_dist(m, u, v);
  cmp.gap = cmp.arc_length - cmp.geodesic_length;
  cmp.tol = 5.0 * m.info().mean_edge;
  return cmp;
}

// ---------------------------------------------------------------------------
// build_w internals

struct Portion {
  int axis = 0;        // sweep axis of the source arc
  double level = 0.0;  // actual (nudged) level
  int inner_sign = 0;  // +1: inner side is coord > level, -1: coord < level
  std::vector<double> pts;  // polyline, ambient stride, clip points included
  std::vector<int> faces;   // face carrying segment i -> i+1
  std::vector<int> edges;   // mesh edges carrying the interior points
};

// Restricts a slice arc to clip_axis values in [clo, chi]. The arc must cross
// each clip level exactly once; the result runs from the clo crossing to the
// chi crossing.
Portion clip_arc(const EmbeddedMesh& m, const LevelComponent& arc, int axis,
                 double level, int inner_sign, int clip_axis, double clo,
                 double chi) {
  const int n = m.ambient_dim();
  const int np = static_cast<int>(arc.edges.size());
  auto val = [&](int i) { return arc.points[static_cast<size_t>(i) * n + clip_axis]; };

  struct Hit {
    int seg;
    double lam;
  };
  auto find_hit = [&](double L) {
    std::vector<Hit> hits;
    for (int i = 0; i + 1 < np; ++i)
      if ((val(i) < L) != (val(i + 1) < L))
        hits.push_back({i, (L - val(i)) / (val(i + 1) - val(i))});
    if (hits.size() != 1)
      throw ConstructionError(
          fmt("arc at x%d=%.12g crosses clip level x%d=%.12g %zu times "
              "(need exactly once)",
              axis + 1, level, clip_axis + 1, L, hits.size()));
    return hits[0];
  };
  Hit hlo = find_hit(clo), hhi = find_hit(chi);

  auto lerp_pt = [&](const Hit& h, double* out) {
    const double* p = arc.points.data() + static_cast<size_t>(h.seg) * n;
    const double* q = p + n;
    for (int k = 0; k < n; ++k) out[k] = p[k] + h.lam * (q[k] - p[k]);
  };

  Portion por;
  por.axis = axis;
  por.level = level;
  por.inner_sign = inner_sign;

  bool fwd = (hlo.seg < hhi.seg) ||
             (hlo.seg == hhi.seg && hlo.lam < hhi.lam);
  const Hit& first = fwd ? hlo : hhi;
  const Hit& last = fwd ? hhi : hlo;

  std::vector<double> p0(n), p1(n);
  lerp_pt(first, p0.data());
  lerp_pt(last, p1.data());
  por.pts.insert(por.pts.end(), p0.begin(), p0.end());
  por.faces.push_back(arc.faces[first.seg]);
  for (int i = first.seg + 1; i <= last.seg; ++i) {
    const double* p = arc.points.data() + static_cast<size_t>(i) * n;
    por.pts.insert(por.pts.end(), p, p + n);
    por.edges.push_back(arc.edges[i]);
    if (i < last.seg) por.faces.push_back(arc.faces[i]);
  }
  if (first.seg < last.seg) por.faces.push_back(arc.faces[last.seg]);
  por.pts.insert(por.pts.end(), p1.begin(), p1.end());
  if (!fwd) {  // reorient from clo crossing to chi crossing
    std::vector<double> rp;
    for (int i = static_cast<int>(por.pts.size()) / n - 1; i >= 0; --i)
      rp.insert(rp.end(), por.pts.begin() + static_cast<size_t>(i) * n,
                por.pts.begin() + static_cast<size_t>(i + 1) * n);
    por.pts.swap(rp);
    std::reverse(por.faces.begin(), por.faces.end());
    std::reverse(por.edges.begin(), por.edges.end());
  }
  return por;
}

// The spanning arc (longest) of a slice; throws when the slice has none.
const LevelComponent& spanning_arc(const LevelSlice& slice) {
  const LevelComponent* best = nullptr;
  for (const auto& c : slice.components)
    if (!c.is_loop && (!best || c.length > best->length)) best = &c;
  if (!best)
    throw PreconditionError(fmt("no arc in the slice at x%d=%.12g",
                                slice.axis + 1, slice.level));
  return *best;
}

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(int k) : p(k) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  void unite(int x, int y) { p[find(x)] = find(y); }
};

// Splits a triangle by a path entering and leaving through its boundary and
// returns the area of the side passing all (axis, level, sign) tests.
struct FaceSplit {
  std::vector<std::array<double, 3>> tests;  // axis, level, sign
  std::vector<std::vector<double>> paths;    // each: polyline, ambient stride
};

double inner_area_of_face(const EmbeddedMesh& m, int f, const FaceSplit& fs,
                          bool* ok) {
  const int n = m.ambient_dim();
  *ok = true;
  // Join the collected paths into a single chain when they share an endpoint.
  std::vector<std::vector<double>> paths = fs.paths;
  auto close_pts = [&](const double* p, const double* q) {
    double s = 0;
    for (int k = 0; k < n; ++k) s += (p[k] - q[k]) * (p[k] - q[k]);
    return std::sqrt(s) <= 1e-6 * m.info().bbox_diag;
  };
  while (paths.size() > 1) {
    bool joined = false;
    for (size_t i = 0; i < paths.size() && !joined; ++i) {
      for (size_t j = i + 1; j < paths.size() && !joined; ++j) {
        auto& A = paths[i];
        auto& B = paths[j];
        auto np_of = [&](const std::vector<double>& P) {
          return static_cast<int>(P.size()) / n;
        };
        const double* a0 = A.data();
        const double* a1 = A.data() + static_cast<size_t>(np_of(A) - 1) * n;
        const double* b0 = B.data();
        const double* b1 = B.data() + static_cast<size_t>(np_of(B) - 1) * n;
        auto rev = [&](std::vector<double>& P) {
          std::vector<double> r;
          for (int t = np_of(P) - 1; t >= 0; --t)
            r.insert(r.end(), P.begin() + static_cast<size_t>(t) * n,
                     P.begin() + static_cast<size_t>(t + 1) * n);
          P.swap(r);
        };
        if (close_pts(a1, b1)) rev(B);
        else if (close_pts(a0, b0)) rev(A);
        else if (close_pts(a0, b1)) { std::swap(A, B); }
        else if (!close_pts(a1, b0)) continue;
        // now A ends where B starts: append B minus its first point
        A.insert(A.end(), B.begin() + n, B.end());
        paths.erase(paths.begin() + j);
        joined = true;
      }
    }
    if (!joined) {
      *ok = false;  // disjoint chords in one face: caller falls back
      return 0.0;
    }
  }
  const std::vector<double>& path = paths[0];
  const int np = static_cast<int>(path.size()) / n;
  if (np < 2) {
    *ok = false;
    return 0.0;
  }

  // Face chart: orthonormal basis of the triangle plane.
  auto A3 = m.vertex(m.face(f)[0]);
  auto B3 = m.vertex(m.face(f)[1]);
  auto C3 = m.vertex(m.face(f)[2]);
  std::vector<double> u(n), w0(n), v(n);
  double lu = 0;
  for (int k = 0; k < n; ++k) {
    u[k] = B3[k] - A3[k];
    lu += u[k] * u[k];
  }
  lu = std::sqrt(lu);
  for (auto& x : u) x /= lu;
  double proj = 0;
  for (int k = 0; k < n; ++k) {
    w0[k] = C3[k] - A3[k];
    proj += w0[k] * u[k];
  }
  double lv = 0;
  for (int k = 0; k < n; ++k) {
    v[k] = w0[k] - proj * u[k];
    lv += v[k] * v[k];
  }
  lv = std::sqrt(lv);
  if (lv == 0) {
    *ok = false;
    return 0.0;
  }
  for (auto& x : v) x /= lv;
  auto chart = [&](const double* p) {
    double x = 0, y = 0;
    for (int k = 0; k < n; ++k) {
      x += (p[k] - A3[k]) * u[k];
      y += (p[k] - A3[k]) * v[k];
    }
    return std::array<double, 2>{x, y};
  };

  // Locate the two path terminals on the triangle boundary.
  std::array<std::array<double, 2>, 3> corner = {
      chart(&A3[0]), chart(&B3[0]), chart(&C3[0])};
  auto locate = [&](const double* p) {
    auto q = chart(p);
    double best = std::numeric_limits<double>::infinity(), bt = 0;
    int bs = 0;
    for (int s = 0; s < 3; ++s) {
      auto& S0 = corner[s];
      auto& S1 = corner[(s + 1) % 3];
      double dx = S1[0] - S0[0], dy = S1[1] - S0[1];
      double len2 = dx * dx + dy * dy;
      double t = ((q[0] - S0[0]) * dx + (q[1] - S0[1]) * dy) / len2;
      t = std::clamp(t, 0.0, 1.0);
      double ex = S0[0] + t * dx - q[0], ey = S0[1] + t * dy - q[1];
      double d = ex * ex + ey * ey;
      if (d < best) {
        best = d;
        bs = s;
        bt = t;
      }
    }
    return bs + bt;  // position along the boundary in [0, 3)
  };
  double s0 = locate(path.data());
  double s1 = locate(path.data() + static_cast<size_t>(np - 1) * n);

  auto shoelace = [&](const std::vector<std::array<double, 2>>& poly) {
    double s = 0;
    for (size_t i = 0; i < poly.size(); ++i) {
      auto& p = poly[i];
      auto& q = poly[(i + 1) % poly.size()];
      s += p[0] * q[1] - q[0] * p[1];
    }
    return 0.5 * std::abs(s);
  };
  auto centroid_inner = [&](const std::vector<const double*>& pts3) {
    std::vector<double> c(n, 0.0);
    for (auto p : pts3)
      for (int k = 0; k < n; ++k) c[k] += p[k];
    for (auto& x : c) x /= static_cast<double>(pts3.size());
    for (auto& t : fs.tests) {
      int ax = static_cast<int>(t[0]);
      bool pass = t[2] > 0 ? c[ax] > t[1] : c[ax] < t[1];
      if (!pass) return false;
    }
    return true;
  };

  // Corners of the triangle strictly between boundary positions a and b,
  // walking forward (positions live on the cyclic range [0, 3)).
  auto corners_between = [&](double a, double b) {
    double span = b - a;
    while (span <= 0) span += 3;
    std::vector<std::pair<double, int>> rel;
    for (int cidx = 0; cidx < 3; ++cidx) {
      double r = cidx - a;
      while (r <= 0) r += 3;
      if (r < span) rel.push_back({r, cidx});
    }
    std::sort(rel.begin(), rel.end());
    std::vector<int> out;
    for (auto& [r, cidx] : rel) out.push_back(cidx);
    return out;
  };

  const std::array<std::span<const double>, 3> cv = {A3, B3, C3};
  double inner = 0.0;
  // Side 1: path forward then boundary from s1 forward to s0.
  {
    std::vector<std::array<double, 2>> poly;
    std::vector<const double*> pts3;
    for (int i = 0; i < np; ++i) {
      poly.push_back(chart(path.data() + static_cast<size_t>(i) * n));
      pts3.push_back(path.data() + static_cast<size_t>(i) * n);
    }
    for (int cidx : corners_between(s1, s0)) {
      poly.push_back(corner[cidx]);
      pts3.push_back(&cv[cidx][0]);
    }
    if (centroid_inner(pts3)) inner += shoelace(poly);
  }
  // Side 2: path backward then boundary from s0 forward to s1.
  {
    std::vector<std::array<double, 2>> poly;
    std::vector<const double*> pts3;
    for (int i = np - 1; i >= 0; --i) {
      poly.push_back(chart(path.data() + static_cast<size_t>(i) * n));
      pts3.push_back(path.data() + static_cast<size_t>(i) * n);
    }
    for (int cidx : corners_between(s0, s1)) {
      poly.push_back(corner[cidx]);
      pts3.push_back(&cv[cidx][0]);
    }
    if (centroid_inner(pts3)) inner += shoelace(poly);
  }
  return inner;
}

}  // namespace

LevelSlice extract_level(const EmbeddedMesh& m, const HomologyBasis& basis,
                         int axis, double t) {
  return extract_impl(m, &basis, axis, t);
}

CoareaReport coarea_check(const EmbeddedMesh& m, int axis) {
  check_axis(m, axis);
  const int n = m.ambient_dim();
  CoareaReport rep;
  rep.axis = axis;
  rep.area_lhs = m.area();
  for (int f = 0; f < m.num_faces(); ++f) {
    auto A = m.vertex(m.face(f)[0]);
    auto B = m.vertex(m.face(f)[1]);
    auto C = m.vertex(m.face(f)[2]);
    double g11 = 0, g12 = 0, g22 = 0, f1 = 0, f2 = 0;
    for (int k = 0; k < n; ++k) {
      double e1 = B[k] - A[k], e2 = C[k] - A[k];
      g11 += e1 * e1;
      g12 += e1 * e2;
      g22 += e2 * e2;
    }
    f1 = B[axis] - A[axis];
    f2 = C[axis] - A[axis];
    double det = g11 * g22 - g12 * g12;  // = (2 area)^2 > 0
    double grad2 =
        (f1 * (g22 * f1 - g12 * f2) + f2 * (g11 * f2 - g12 * f1)) / det;
    rep.integral_rhs += std::sqrt(std::max(0.0, grad2)) * m.face_area(f);
  }
  return rep;
}

IntervalReport nonsep_interval(const EmbeddedMesh& m, const HomologyBasis& basis,
                               int axis, int samples) {
  check_axis(m, axis);
  auto [lo, hi] = coord_range(m, axis);
  auto pred = [&](double t) {
    return extract_impl(m, &basis, axis, t).has_nonsep_loop;
  };
  return scan_intervals(axis, lo, hi, samples, pred);
}

ArcComparison arc_vs_geodesic(const EmbeddedMesh& m, int axis, double t) {
  check_axis(m, axis);
  auto cmp = try_arc(m, axis, t);
  if (!cmp)
    throw PreconditionError(
        fmt("no arc in the slice at x%d=%.12g", axis + 1, t));
  return *cmp;
}

SeparatingCurve build_w(const EmbeddedMesh& m, double a, double b, double c,
                        double d) {
  if (m.ambient_dim() < 2) throw ParamError("build_w needs ambient dim >= 2");
  if (!(a < b) || !(c < d))
    throw ParamError(fmt("build_w needs a < b and c < d (got a=%g b=%g c=%g d=%g)",
                         a, b, c, d));
  const int n = m.ambient_dim();

  LevelSlice sa = extract_impl(m, nullptr, 0, a);
  LevelSlice sb = extract_impl(m, nullptr, 0, b);
  LevelSlice sc = extract_impl(m, nullptr, 1, c);
  LevelSlice sd = extract_impl(m, nullptr, 1, d);
  const double la = sa.level, lb = sb.level, lc = sc.level, ld = sd.level;
  if (!(la < lb) || !(lc < ld))
    throw ConstructionError("levels collapsed after nudging");

  // Each portion runs from the lower to the upper crossing of the other axis.
  Portion SA = clip_arc(m, spanning_arc(sa), 0, la, +1, 1, lc, ld);
  Portion SB = clip_arc(m, spanning_arc(sb), 0, lb, -1, 1, lc, ld);
  Portion SC = clip_arc(m, spanning_arc(sc), 1, lc, +1, 0, la, lb);
  Portion SD = clip_arc(m, spanning_arc(sd), 1, ld, -1, 0, la, lb);

  auto pt = [&](const Portion& P, int i) {
    return P.pts.data() + static_cast<size_t>(i) * n;
  };
  auto npts = [&](const Portion& P) { return static_cast<int>(P.pts.size()) / n; };
  auto dist_pp = [&](const double* p, const double* q) {
    double s = 0;
    for (int k = 0; k < n; ++k) s += (p[k] - q[k]) * (p[k] - q[k]);
    return std::sqrt(s);
  };
  const double ctol = 1e-6 * m.info().bbox_diag;
  // Corner consistency: the alpha and beta portions must meet pairwise.
  struct CornerRef {
    const double* alpha;
    const double* beta;
    const char* name;
  };
  const std::array<CornerRef, 4> corners = {{
      {pt(SA, 0), pt(SC, 0), "(a,c)"},
      {pt(SA, npts(SA) - 1), pt(SD, 0), "(a,d)"},
      {pt(SB, npts(SB) - 1), pt(SD, npts(SD) - 1), "(b,d)"},
      {pt(SB, 0), pt(SC, npts(SC) - 1), "(b,c)"},
  }};
  for (const auto& cr : corners)
    if (dist_pp(cr.alpha, cr.beta) > ctol)
      throw ConstructionError(
          fmt("arcs do not meet at corner %s (distance %.3g)", cr.name,
              dist_pp(cr.alpha, cr.beta)));

  SeparatingCurve out;
  // w = SA (c->d) + SD (a->b from the (a,d) corner) + SB reversed (d->c)
  //   + SC reversed (b->a), with the alpha clip points as canonical corners.
  auto append = [&](const Portion& P, bool reversed, bool drop_first,
                    bool drop_last) {
    int k = npts(P);
    for (int i = 0; i < k; ++i) {
      int j = reversed ? k - 1 - i : i;
      if ((i == 0 && drop_first) || (i == k - 1 && drop_last)) continue;
      const double* p = pt(P, j);
      out.points.insert(out.points.end(), p, p + n);
    }
  };
  append(SA, false, false, false);       // (a,c) ... (a,d)
  append(SD, false, true, true);         // interior of (a,d) -> (b,d)
  append(SB, true, false, false);        // (b,d) ... (b,c)
  append(SC, true, true, true);          // interior of (b,c) -> (a,c)
  {
    int k = static_cast<int>(out.points.size()) / n;
    for (int i = 0; i < k; ++i) {
      const double* p = out.points.data() + static_cast<size_t>(i) * n;
      const double* q = out.points.data() + static_cast<size_t>((i + 1) % k) * n;
      out.length += dist_pp(p, q);
    }
  }

  // Blocked edges: every mesh edge one of the portions crosses.
  std::vector<char> blocked(m.num_edges(), 0);
  out.simple = true;
  for (const Portion* P : {&SA, &SB, &SC, &SD})
    for (int e : P->edges) {
      if (blocked[e]) out.simple = false;
      blocked[e] = 1;
    }

  // Faces the curve passes through. Both neighbours of every blocked edge are
  // visited, so any component made only of strip faces is a sliver pinched
  // between the chord necklaces near a corner; slivers sit on the cut and do
  // not count against separation (and join neither side).
  std::vector<char> strip(m.num_faces(), 0);
  for (const Portion* P : {&SA, &SB, &SC, &SD})
    for (int f : P->faces) strip[f] = 1;

  UnionFind uf(m.num_faces());
  for (int e = 0; e < m.num_edges(); ++e) {
    const Edge& ed = m.edge(e);
    if (ed.f1 < 0 || blocked[e]) continue;
    uf.unite(ed.f0, ed.f1);
  }
  std::map<int, int> clear_faces;  // root -> # faces off the curve
  for (int f = 0; f < m.num_faces(); ++f) clear_faces[uf.find(f)] += !strip[f];
  int main_comps = 0;
  for (auto& [root, cnt] : clear_faces) main_comps += cnt > 0;
  out.separates = main_comps == 2;
  if (!out.separates) return out;

  int bdry_face = -1;
  for (int e = 0; e < m.num_edges() && bdry_face < 0; ++e)
    if (m.edge_on_boundary(e)) bdry_face = m.edge(e).f0;
  int r1 = uf.find(bdry_face);
  for (int f = 0; f < m.num_faces(); ++f) {
    int r = uf.find(f);
    if (clear_faces[r] == 0) continue;  // sliver
    (r == r1 ? out.faces_t1 : out.faces_t2).push_back(f);
  }

  // Exact area split: faces the curve passes through are divided along its
  // chords; the side inside the coordinate rectangle belongs to t2.
  std::map<int, FaceSplit> splits;
  for (const Portion* P : {&SA, &SB, &SC, &SD}) {
    int k = npts(*P);
    for (int i = 0; i + 1 < k; ++i) {
      int f = P->faces[i];
      auto& fs = splits[f];
      std::array<double, 3> test = {static_cast<double>(P->axis), P->level,
                                    static_cast<double>(P->inner_sign)};
      if (std::find(fs.tests.begin(), fs.tests.end(), test) == fs.tests.end())
        fs.tests.push_back(test);
      std::vector<double> seg(pt(*P, i), pt(*P, i) + n);
      seg.insert(seg.end(), pt(*P, i + 1), pt(*P, i + 1) + n);
      // Extend the previous path when contiguous, else start a new one.
      if (!fs.paths.empty()) {
        auto& last = fs.paths.back();
        if (dist_pp(last.data() + last.size() - n, seg.data()) <=
            1e-12 * m.info().bbox_diag + 1e-300) {
          last.insert(last.end(), seg.begin() + n, seg.end());
          continue;
        }
      }
      fs.paths.push_back(std::move(seg));
    }
  }

  double inner_total = 0.0, strip_full = 0.0;
  std::vector<char> in_t2(m.num_faces(), 0);
  for (int f : out.faces_t2) in_t2[f] = 1;
  bool all_ok = out.simple;
  for (auto& [f, fs] : splits) {
    bool ok = false;
    double inner = all_ok ? inner_area_of_face(m, f, fs, &ok) : 0.0;
    if (!ok) {  // fall back to whole-face assignment for this face
      inner = in_t2[f] ? m.face_area(f) : 0.0;
    }
    inner_total += inner;
    if (in_t2[f]) strip_full += m.face_area(f);
  }
  double t2_whole = 0.0;
  for (int f : out.faces_t2) t2_whole += m.face_area(f);
  out.area_t2 = t2_whole - strip_full + inner_total;
  out.area_t1 = m.area() - out.area_t2;
  return out;
}

CapResult cap_with_cone(const EmbeddedMesh& m, const std::vector<int>& faces) {
  if (faces.empty()) throw ParamError("cap_with_cone: empty face set");
  std::vector<int> fs = faces;
  std::sort(fs.begin(), fs.end());
  if (std::adjacent_find(fs.begin(), fs.end()) != fs.end())
    throw ParamError("cap_with_cone: duplicate face ids");
  if (fs.front() < 0 || fs.back() >= m.num_faces())
    throw ParamError("cap_with_cone: face id out of range");

  const int n = m.ambient_dim();
  std::vector<int> remap(m.num_vertices(), -1);
  std::vector<double> coords;
  std::vector<std::array<int, 3>> tris;
  int next = 0;
  for (int f : fs) {
    std::array<int, 3> t{};
    for (int k = 0; k < 3; ++k) {
      int v = m.face(f)[k];
      if (remap[v] < 0) {
        remap[v] = next++;
        auto p = m.vertex(v);
        coords.insert(coords.end(), p.begin(), p.end());
      }
      t[k] = remap[v];
    }
    tris.push_back(t);
  }
  EmbeddedMesh sub(n, coords, tris, "");
  if (sub.boundary_count() != 1)
    throw TopologyError(fmt("cap_with_cone: face set has %d boundary loops, need 1",
                            sub.boundary_count()));

  const std::vector<int>& loop = sub.boundary_loop(0);
  const int k = static_cast<int>(loop.size());
  CapResult res{sub, 0.0, -1, 0.0, 0.0};

  // Rim metrics on the submesh.
  for (int i = 0; i < k; ++i) {
    res.rim_length += sub.dist(loop[i], loop[(i + 1) % k]);
    for (int j = i + 1; j < k; ++j)
      res.rim_diameter = std::max(res.rim_diameter, sub.dist(loop[i], loop[j]));
  }

  int apex = *std::min_element(loop.begin(), loop.end());
  res.apex = apex;

  // The fan must traverse each rim edge opposite to the existing face.
  auto traverses = [&](int f, int u, int v) {
    auto& t = sub.face(f);
    return (t[0] == u && t[1] == v) || (t[1] == u && t[2] == v) ||
           (t[2] == u && t[0] == v);
  };
  int e0 = sub.edge_between(loop[0], loop[1]);
  bool fwd = traverses(sub.edge(e0).f0, loop[0], loop[1]);

  std::vector<std::array<int, 3>> capped = tris;
  for (int i = 0; i < k; ++i) {
    int u = loop[i], v = loop[(i + 1) % k];
    if (u == apex || v == apex) continue;
    capped.push_back(fwd ? std::array<int, 3>{apex, v, u}
                         : std::array<int, 3>{apex, u, v});
    res.cap_area += triangle_area(sub.dist(apex, u), sub.dist(apex, v),
                                  sub.dist(u, v));
  }
  if (res.cap_area > 0.5 * res.rim_length * res.rim_diameter + 1e-9)
    throw ConstructionError("cap area exceeds the length-diameter bound");
  res.closed = EmbeddedMesh(n, coords, capped, "");
  return res;
}

namespace {

// First level within reach of `endpoint` (moving outward by at most ell/100)
// whose slice has an arc with gap <= ell/10; NaN when none qualifies.
double adjust_endpoint(const EmbeddedMesh& m, int axis, double endpoint,
                       int direction, double ell) {
  for (int k = 0; k < kAdjustCandidates; ++k) {
    double z = endpoint +
               direction * (k + 0.5) * (ell / 100.0) / kAdjustCandidates;
    auto cmp = try_arc(m, axis, z);
    if (cmp && cmp->gap <= ell / 10.0) return cmp->level;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

SweepReport sweep_axis(const EmbeddedMesh& m, const HomologyBasis& basis,
                       int axis, int samples, double ell) {
  check_axis(m, axis);
  if (samples < 2) throw ParamError("sweep_axis needs at least 2 samples");
  SweepReport rep;
  rep.axis = axis;
  rep.samples = samples;
  auto [lo, hi] = coord_range(m, axis);
  rep.lo = lo;
  rep.hi = hi;
  rep.ell = ell;

  const double step = (hi - lo) / samples;
  for (int i = 0; i < samples; ++i) {
    LevelSlice s = extract_impl(m, &basis, axis, lo + step * (i + 0.5));
    rep.rows.push_back(
        {s.level, s.num_arcs, s.num_loops, s.total_length, s.has_nonsep_loop});
  }
  rep.interval = nonsep_interval(m, basis, axis, samples);
  rep.coarea = coarea_check(m, axis);

  int stride = std::max(1, samples / 32);
  for (int i = 0; i < samples; i += stride) {
    if (rep.rows[i].arcs == 0) continue;
    auto cmp = try_arc(m, axis, rep.rows[i].t);
    if (cmp) rep.arc_table.push_back(*cmp);
  }

  if (!std::isnan(ell) && !rep.interval.intervals.empty()) {
    auto widest = *std::max_element(
        rep.interval.intervals.begin(), rep.interval.intervals.end(),
        [](const auto& p, const auto& q) {
          return p[1] - p[0] < q[1] - q[0];
        });
    rep.adj_lo = adjust_endpoint(m, axis, widest[0], -1, ell);
    rep.adj_hi = adjust_endpoint(m, axis, widest[1], +1, ell);
  }
  return rep;
}

ProofCertificate trace_proof(const EmbeddedMesh& m, const HomologyBasis& basis) {
  const SurfaceInfo& info = m.info();
  if (info.genus != 1 || info.boundary_loops != 1 ||
      !info.unit_circle_boundary)
    throw PreconditionError(
        fmt("trace_proof needs genus 1, one boundary loop on the unit circle "
            "(got g=%d b=%d circle=%d)",
            info.genus, info.boundary_loops,
            info.unit_circle_boundary ? 1 : 0));

  ProofCertificate cert;
  cert.ell = shortest_nonseparating(m, basis).length;
  cert.tol = 5.0 * info.mean_edge;
  cert.area = info.area;
  const double ell = cert.ell;

  cert.interval_x = nonsep_interval(m, basis, 0);
  cert.interval_y = nonsep_interval(m, basis, 1);
  cert.nonsep_measure_x = cert.interval_x.measure;
  cert.nonsep_measure_y = cert.interval_y.measure;

  // Case A: a thick band of non-separating levels carries length >= ell each.
  if (std::max(cert.nonsep_measure_x, cert.nonsep_measure_y) >= ell / 10.0) {
    cert.case_fired = 'A';
    cert.bound = ell * ell / 10.0 - cert.tol;
    return cert;
  }

  // Case B: a thick band of levels whose arc overshoots its geodesic.
  auto gap_measure = [&](int axis) {
    auto [lo, hi] = coord_range(m, axis);
    auto pred = [&](double t) {
      auto cmp = try_arc(m, axis, t);
      return cmp && cmp->gap >= ell / 10.0;
    };
    return scan_intervals(axis, lo, hi, 512, pred).measure;
  };
  cert.gap_measure_x = gap_measure(0);
  cert.gap_measure_y = gap_measure(1);
  if (std::max(cert.gap_measure_x, cert.gap_measure_y) >= ell / 100.0) {
    cert.case_fired = 'B';
    cert.bound = ell * ell / 1000.0 - cert.tol;
    return cert;
  }

  // Case C: both bands are thin; cut out the rectangle curve w.
  std::vector<std::string> bad;
  auto fail = [&](std::string msg) { bad.push_back(std::move(msg)); };
  if (cert.interval_x.intervals.empty() || cert.interval_y.intervals.empty()) {
    cert.diagnostics = "no non-separating band on one of the axes";
    return cert;
  }
  auto widest = [](const IntervalReport& r) {
    return *std::max_element(r.intervals.begin(), r.intervals.end(),
                             [](const auto& p, const auto& q) {
                               return p[1] - p[0] < q[1] - q[0];
                             });
  };
  auto bx = widest(cert.interval_x), by = widest(cert.interval_y);
  cert.a1 = bx[0];
  cert.b1 = bx[1];
  cert.c1 = by[0];
  cert.d1 = by[1];
  cert.a = adjust_endpoint(m, 0, cert.a1, -1, ell);
  cert.b = adjust_endpoint(m, 0, cert.b1, +1, ell);
  cert.c = adjust_endpoint(m, 1, cert.c1, -1, ell);
  cert.d = adjust_endpoint(m, 1, cert.d1, +1, ell);
  if (std::isnan(cert.a) || std::isnan(cert.b) || std::isnan(cert.c) ||
      std::isnan(cert.d)) {
    cert.diagnostics = "no low-gap level near a band endpoint";
    return cert;
  }

  try {
    SeparatingCurve w = build_w(m, cert.a, cert.b, cert.c, cert.d);
    cert.w_length = w.length;
    cert.w_simple = w.simple;
    cert.area_t1 = w.area_t1;
    cert.area_t2 = w.area_t2;
    if (!w.separates) fail("w does not separate");
    if (!(w.length < 0.9 * ell + cert.tol))
      fail(fmt("length(w)=%.6g not below 0.9*ell+tol=%.6g", w.length,
               0.9 * ell + cert.tol));
    double iso = kPi - (0.81 / (4.0 * kPi)) * ell * ell - cert.tol;
    if (!(w.area_t1 >= iso))
      fail(fmt("area(t1)=%.6g below isoperimetric floor %.6g", w.area_t1, iso));
    if (!(w.area_t2 > ell * ell / 8.0 - cert.tol))
      fail(fmt("area(t2)=%.6g not above ell^2/8-tol=%.6g", w.area_t2,
               ell * ell / 8.0 - cert.tol));
    if (w.separates) {
      CapResult cap = cap_with_cone(m, w.faces_t2);
      cert.cap_area = cap.cap_area;
      if (cap.closed.genus() != 1 || cap.closed.boundary_count() != 0)
        fail(fmt("capped surface is not a closed torus (g=%d b=%d)",
                 cap.closed.genus(), cap.closed.boundary_count()));
      else {
        HomologyBasis cb(cap.closed);
        cert.ell1 = shortest_nonseparating(cap.closed, cb).length;
        if (!(ell <= 2.0 * cert.ell1 + cert.tol))
          fail(fmt("ell=%.6g exceeds 2*ell1+tol=%.6g", ell,
                   2.0 * cert.ell1 + cert.tol));
      }
    }
  } catch (const Error& e) {
    fail(fmt("construction failed: %s", e.what()));
  }

  if (!bad.empty()) {
    std::string d;
    for (const auto& s : bad) {
      if (!d.empty()) d += "; ";
      d += s;
    }
    cert.diagnostics = d;
    return cert;  // inconclusive, bound stays 0
  }
  cert.case_fired = 'C';
  cert.bound = ell * ell / 100.0 - cert.tol;
  return cert;
}

double recheck_bound(const ProofCertificate& cert) {
  switch (cert.case_fired) {
    case 'A':
      return cert.ell * cert.ell / 10.0 - cert.tol;
    case 'B':
      return cert.ell * cert.ell / 1000.0 - cert.tol;
    case 'C':
      return cert.ell * cert.ell / 100.0 - cert.tol;
    default:
      return 0.0;
  }
}

}  // namespace systl
