#include "systl/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <queue>
#include <sstream>

namespace systl {

namespace {

std::string at_face(int f) {
  std::ostringstream os;
  os << " (face " << f << ")";
  return os.str();
}

}  // namespace

double triangle_area(double a, double b, double c) {
  // Sort so that a >= b >= c, then use Kahan's stable form of Heron.
  if (a < b) std::swap(a, b);
  if (b < c) std::swap(b, c);
  if (a < b) std::swap(a, b);
  if (c - (a - b) < 0.0) return -1.0;  // not a triangle (caller decides)
  double t = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c));
  return 0.25 * std::sqrt(std::max(t, 0.0));
}

EmbeddedMesh::EmbeddedMesh(int ambient_dim, std::vector<double> coords,
                           std::vector<std::array<int, 3>> faces,
                           std::string comment)
    : n_(ambient_dim),
      coords_(std::move(coords)),
      faces_(std::move(faces)),
      comment_(std::move(comment)) {
  if (n_ < 2) throw ParamError("ambient dimension must be >= 2");
  if (coords_.empty() || coords_.size() % n_ != 0)
    throw ParseError("coordinate array size is not a multiple of the ambient dimension");
  if (faces_.empty()) throw TopologyError("mesh has no faces");
  const int V = num_vertices();
  std::vector<char> used(V, 0);
  for (int f = 0; f < num_faces(); ++f) {
    const auto& fc = faces_[f];
    for (int k = 0; k < 3; ++k) {
      if (fc[k] < 0 || fc[k] >= V)
        throw TopologyError("face references vertex out of range" + at_face(f));
      used[fc[k]] = 1;
    }
    if (fc[0] == fc[1] || fc[1] == fc[2] || fc[0] == fc[2])
      throw TopologyError("face repeats a vertex" + at_face(f));
  }
  for (int v = 0; v < V; ++v)
    if (!used[v]) throw TopologyError("isolated vertex " + std::to_string(v));
  for (double x : coords_)
    if (!std::isfinite(x)) throw ParseError("non-finite vertex coordinate");

  build_edges();
  check_degeneracy();
  check_manifold();
  check_orientation();
  check_connected();
  build_boundary();
  finish_info();
}

void EmbeddedMesh::build_edges() {
  std::map<std::pair<int, int>, int> ids;
  face_edges_.assign(num_faces(), {-1, -1, -1});
  for (int f = 0; f < num_faces(); ++f) {
    const auto& fc = faces_[f];
    for (int k = 0; k < 3; ++k) {
      int u = fc[k], v = fc[(k + 1) % 3];
      auto key = std::minmax(u, v);
      auto [it, fresh] = ids.try_emplace(key, static_cast<int>(edges_.size()));
      if (fresh) edges_.push_back({key.first, key.second, f, -1});
      else {
        Edge& e = edges_[it->second];
        if (e.f1 >= 0)
          throw TopologyError("edge " + std::to_string(e.a) + "-" +
                              std::to_string(e.b) + " borders more than two faces");
        e.f1 = f;
      }
      face_edges_[f][k] = it->second;
    }
  }
  edge_len_.resize(edges_.size());
  for (size_t e = 0; e < edges_.size(); ++e)
    edge_len_[e] = dist(edges_[e].a, edges_[e].b);
  vert_edges_.assign(num_vertices(), {});
  for (int e = 0; e < num_edges(); ++e) {
    vert_edges_[edges_[e].a].push_back(e);
    vert_edges_[edges_[e].b].push_back(e);
  }
}

void EmbeddedMesh::check_degeneracy() {
  std::vector<double> lov(n_, std::numeric_limits<double>::max());
  std::vector<double> hiv(n_, std::numeric_limits<double>::lowest());
  for (int v = 0; v < num_vertices(); ++v)
    for (int k = 0; k < n_; ++k) {
      double x = coords_[static_cast<size_t>(v) * n_ + k];
      lov[k] = std::min(lov[k], x);
      hiv[k] = std::max(hiv[k], x);
    }
  double d2 = 0.0;
  for (int k = 0; k < n_; ++k) d2 += (hiv[k] - lov[k]) * (hiv[k] - lov[k]);
  info_.bbox_diag = std::sqrt(d2);
  const double floor_area = 1e-14 * d2;

  for (int e = 0; e < num_edges(); ++e)
    if (!(edge_len_[e] > 0.0))
      throw DegeneracyError("zero-length edge " + std::to_string(edges_[e].a) +
                            "-" + std::to_string(edges_[e].b));
  face_area_.resize(num_faces());
  area_ = 0.0;
  for (int f = 0; f < num_faces(); ++f) {
    const auto& fe = face_edges_[f];
    double ar = triangle_area(edge_len_[fe[0]], edge_len_[fe[1]], edge_len_[fe[2]]);
    if (!(ar >= floor_area))
      throw DegeneracyError("face area below degeneracy floor" + at_face(f));
    face_area_[f] = ar;
    area_ += ar;
  }
}

void EmbeddedMesh::check_manifold() {
  // Corners incident to each vertex must form a single fan: walk face-to-face
  // across shared incident edges and require one component per vertex.
  std::vector<std::vector<int>> vfaces(num_vertices());
  for (int f = 0; f < num_faces(); ++f)
    for (int v : faces_[f]) vfaces[v].push_back(f);
  std::vector<int> mark(num_faces(), -1);
  std::vector<int> stack;
  for (int v = 0; v < num_vertices(); ++v) {
    const auto& fs = vfaces[v];
    stack.assign(1, fs[0]);
    mark[fs[0]] = v;
    size_t seen = 1;
    while (!stack.empty()) {
      int f = stack.back();
      stack.pop_back();
      for (int e : face_edges_[f]) {
        const Edge& ed = edges_[e];
        if (ed.a != v && ed.b != v) continue;
        int g = (ed.f0 == f) ? ed.f1 : ed.f0;
        if (g < 0 || mark[g] == v) continue;
        mark[g] = v;
        ++seen;
        stack.push_back(g);
      }
    }
    if (seen != fs.size())
      throw TopologyError("pinched vertex " + std::to_string(v) +
                          " (link is not a single fan)");
  }
}

void EmbeddedMesh::check_orientation() const {
  // A face traverses each of its edges in one direction; consistent
  // orientation means the two faces of an interior edge disagree.
  auto direction = [&](int f, const Edge& e) {
    const auto& fc = faces_[f];
    for (int k = 0; k < 3; ++k)
      if (fc[k] == e.a && fc[(k + 1) % 3] == e.b) return +1;
    return -1;
  };
  for (const Edge& e : edges_) {
    if (e.boundary()) continue;
    if (direction(e.f0, e) == direction(e.f1, e))
      throw TopologyError("inconsistent orientation across edge " +
                          std::to_string(e.a) + "-" + std::to_string(e.b));
  }
}

void EmbeddedMesh::check_connected() const {
  std::vector<char> seen(num_faces(), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int f = stack.back();
    stack.pop_back();
    for (int e : face_edges_[f]) {
      int g = (edges_[e].f0 == f) ? edges_[e].f1 : edges_[e].f0;
      if (g < 0 || seen[g]) continue;
      seen[g] = 1;
      ++count;
      stack.push_back(g);
    }
  }
  if (count != num_faces()) throw TopologyError("mesh is not connected");
}

void EmbeddedMesh::build_boundary() {
  // Boundary edges inherit the direction their unique face traverses them;
  // chaining successor directed edges yields the loops.
  vert_on_bdry_.assign(num_vertices(), 0);
  std::map<int, std::pair<int, int>> out;  // start vertex -> (end vertex, edge)
  for (int e = 0; e < num_edges(); ++e) {
    const Edge& ed = edges_[e];
    if (!ed.boundary()) continue;
    const auto& fc = faces_[ed.f0];
    int u = -1, v = -1;
    for (int k = 0; k < 3; ++k) {
      int p = fc[k], q = fc[(k + 1) % 3];
      if ((p == ed.a && q == ed.b) || (p == ed.b && q == ed.a)) {
        u = p;
        v = q;
        break;
      }
    }
    if (out.count(u))
      throw TopologyError("boundary branches at vertex " + std::to_string(u));
    out[u] = {v, e};
    vert_on_bdry_[u] = vert_on_bdry_[v] = 1;
  }
  edge_bdry_loop_.assign(num_edges(), -1);
  std::vector<char> used_start(num_vertices(), 0);
  for (const auto& [start, _] : out) {
    if (used_start[start]) continue;
    int loop_id = static_cast<int>(bdry_loops_.size());
    std::vector<int> loop;
    int v = start;
    do {
      auto it = out.find(v);
      if (it == out.end())
        throw TopologyError("open boundary chain at vertex " + std::to_string(v));
      loop.push_back(v);
      used_start[v] = 1;
      edge_bdry_loop_[it->second.second] = loop_id;
      v = it->second.first;
    } while (v != start);
    bdry_loops_.push_back(std::move(loop));
  }
}

void EmbeddedMesh::finish_info() {
  info_.num_vertices = num_vertices();
  info_.num_edges = num_edges();
  info_.num_faces = num_faces();
  info_.euler = num_vertices() - num_edges() + num_faces();
  info_.boundary_loops = static_cast<int>(bdry_loops_.size());
  int twice_genus = 2 - info_.boundary_loops - info_.euler;
  if (twice_genus < 0 || twice_genus % 2 != 0)
    throw TopologyError("Euler characteristic " + std::to_string(info_.euler) +
                        " with " + std::to_string(info_.boundary_loops) +
                        " boundary loops is not an orientable surface");
  info_.genus = twice_genus / 2;
  info_.area = area_;

  double min_e = std::numeric_limits<double>::max(), sum_e = 0.0;
  for (double l : edge_len_) {
    min_e = std::min(min_e, l);
    sum_e += l;
  }
  info_.min_edge = min_e;
  info_.mean_edge = sum_e / num_edges();

  info_.boundary_length = 0.0;
  for (const auto& loop : bdry_loops_) {
    for (size_t i = 0; i < loop.size(); ++i)
      info_.boundary_length += dist(loop[i], loop[(i + 1) % loop.size()]);
  }

  // Unit-circle boundary: a single loop whose vertices sit on the unit circle
  // of the x1x2-plane (within 1e-9) and whose angle is strictly monotone.
  info_.unit_circle_boundary = false;
  info_.circle_deficit = 0.0;
  if (info_.boundary_loops == 1) {
    const auto& loop = bdry_loops_[0];
    bool on_circle = true;
    for (int v : loop) {
      auto p = vertex(v);
      if (std::abs(p[0] * p[0] + p[1] * p[1] - 1.0) > 1e-9) on_circle = false;
      for (int k = 2; k < n_ && on_circle; ++k)
        if (std::abs(p[k]) > 1e-9) on_circle = false;
      if (!on_circle) break;
    }
    if (on_circle && loop.size() >= 3) {
      double winding = 0.0;
      bool monotone = true;
      int sign = 0;
      for (size_t i = 0; i < loop.size(); ++i) {
        auto p = vertex(loop[i]);
        auto q = vertex(loop[(i + 1) % loop.size()]);
        double dth = std::atan2(q[1], q[0]) - std::atan2(p[1], p[0]);
        while (dth <= -std::numbers::pi) dth += 2.0 * std::numbers::pi;
        while (dth > std::numbers::pi) dth -= 2.0 * std::numbers::pi;
        int s = (dth > 0.0) ? 1 : (dth < 0.0 ? -1 : 0);
        if (s == 0 || (sign != 0 && s != sign)) monotone = false;
        sign = s ? s : sign;
        winding += dth;
      }
      if (monotone && std::abs(std::abs(winding) - 2.0 * std::numbers::pi) < 1e-6) {
        info_.unit_circle_boundary = true;
        info_.circle_deficit = 2.0 * std::numbers::pi - info_.boundary_length;
      }
    }
  }
}

int EmbeddedMesh::edge_between(int u, int v) const {
  for (int e : vert_edges_[u]) {
    const Edge& ed = edges_[e];
    if (ed.a == v || ed.b == v) return e;
  }
  return -1;
}

double EmbeddedMesh::squared_dist(int u, int v) const {
  const double* p = coords_.data() + static_cast<size_t>(u) * n_;
  const double* q = coords_.data() + static_cast<size_t>(v) * n_;
  double s = 0.0;
  for (int k = 0; k < n_; ++k) s += (p[k] - q[k]) * (p[k] - q[k]);
  return s;
}

double EmbeddedMesh::dist(int u, int v) const { return std::sqrt(squared_dist(u, v)); }

SurfaceInfo validate(const EmbeddedMesh& m) { return m.info(); }

EmbeddedMesh refine(const EmbeddedMesh& m, int rounds) {
  if (rounds < 0) throw ParamError("refinement rounds must be >= 0");
  if (rounds == 0) return m;

  const int n = m.ambient_dim();
  std::vector<double> coords = m.coords();
  std::vector<std::array<int, 3>> faces;
  faces.reserve(static_cast<size_t>(m.num_faces()) * 4);

  const bool project = m.info().unit_circle_boundary;
  std::vector<int> mid(m.num_edges());
  for (int e = 0; e < m.num_edges(); ++e) {
    const Edge& ed = m.edge(e);
    auto p = m.vertex(ed.a);
    auto q = m.vertex(ed.b);
    std::vector<double> mp(n);
    for (int k = 0; k < n; ++k) mp[k] = 0.5 * (p[k] + q[k]);
    if (project && ed.boundary()) {
      double r = std::hypot(mp[0], mp[1]);
      if (r > 0.0) {
        mp[0] /= r;
        mp[1] /= r;
      }
    }
    mid[e] = static_cast<int>(coords.size()) / n;
    coords.insert(coords.end(), mp.begin(), mp.end());
  }
  for (int f = 0; f < m.num_faces(); ++f) {
    const auto& fc = m.face(f);
    int m01 = mid[m.edge_between(fc[0], fc[1])];
    int m12 = mid[m.edge_between(fc[1], fc[2])];
    int m20 = mid[m.edge_between(fc[2], fc[0])];
    faces.push_back({fc[0], m01, m20});
    faces.push_back({fc[1], m12, m01});
    faces.push_back({fc[2], m20, m12});
    faces.push_back({m01, m12, m20});
  }
  EmbeddedMesh out(n, std::move(coords), std::move(faces), m.comment());
  return rounds == 1 ? out : refine(out, rounds - 1);
}

}  // namespace systl
