#include "systl/homology.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <string>

namespace systl {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

EdgeCycle EdgeCycle::from_vertices(const EmbeddedMesh& m, std::vector<int> verts) {
  if (verts.size() < 3)
    throw PreconditionError("a cycle needs at least three vertices");
  EdgeCycle c;
  c.vertices = std::move(verts);
  size_t k = c.vertices.size();
  c.edges.reserve(k);
  for (size_t i = 0; i < k; ++i) {
    int u = c.vertices[i], v = c.vertices[(i + 1) % k];
    int e = m.edge_between(u, v);
    if (e < 0)
      throw PreconditionError("no edge between vertices " + std::to_string(u) +
                              " and " + std::to_string(v));
    c.edges.push_back(e);
    c.length += m.edge_length(e);
  }
  return c;
}

bool EdgeCycle::is_simple() const {
  std::vector<int> v = vertices;
  std::sort(v.begin(), v.end());
  return std::adjacent_find(v.begin(), v.end()) == v.end();
}

std::vector<int> canonical_cycle(const std::vector<int>& verts) {
  const size_t k = verts.size();
  std::vector<int> best, cand(k);
  for (int dir = 0; dir < 2; ++dir) {
    for (size_t s = 0; s < k; ++s) {
      for (size_t i = 0; i < k; ++i)
        cand[i] = dir ? verts[(s + k - i) % k] : verts[(s + i) % k];
      if (best.empty() || cand < best) best = cand;
    }
  }
  return best;
}

HomologyBasis::HomologyBasis(const EmbeddedMesh& m) : mesh_(&m) {
  const int V = m.num_vertices(), E = m.num_edges(), F = m.num_faces();
  const int b = m.boundary_count();

  // Primal spanning tree: BFS from vertex 0, ascending edge ids.
  in_tree_.assign(E, 0);
  std::vector<int> parent_edge(V, -1), parent_vert(V, -1), depth(V, -1);
  {
    std::queue<int> q;
    q.push(0);
    depth[0] = 0;
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int e : m.vertex_edges(v)) {
        int u = (m.edge(e).a == v) ? m.edge(e).b : m.edge(e).a;
        if (depth[u] >= 0) continue;
        depth[u] = depth[v] + 1;
        parent_vert[u] = v;
        parent_edge[u] = e;
        in_tree_[e] = 1;
        q.push(u);
      }
    }
  }

  // Dual spanning tree over faces plus one cap node per boundary loop,
  // restricted to edges outside the primal tree.
  const int D = F + b;
  std::vector<char> in_cotree(E, 0);
  std::vector<int> dparent_edge(D, -1), dparent_node(D, -1), ddepth(D, -1);
  std::vector<std::vector<int>> cap_edges(b);
  for (int e = 0; e < E; ++e)
    if (m.edge_on_boundary(e)) cap_edges[m.boundary_loop_of(e)].push_back(e);
  auto across = [&](int node, int e) {
    const Edge& ed = m.edge(e);
    if (node < F) return ed.boundary() ? F + m.boundary_loop_of(e)
                                       : (ed.f0 == node ? ed.f1 : ed.f0);
    return ed.f0;
  };
  auto node_edges = [&](int node) -> std::vector<int> {
    if (node < F) {
      auto fe = m.face_edges(node);
      std::vector<int> v(fe.begin(), fe.end());
      std::sort(v.begin(), v.end());
      return v;
    }
    return cap_edges[node - F];
  };
  {
    std::queue<int> q;
    q.push(0);
    ddepth[0] = 0;
    while (!q.empty()) {
      int node = q.front();
      q.pop();
      for (int e : node_edges(node)) {
        if (in_tree_[e] || in_cotree[e]) continue;
        int other = across(node, e);
        if (ddepth[other] >= 0) continue;
        ddepth[other] = ddepth[node] + 1;
        dparent_node[other] = node;
        dparent_edge[other] = e;
        in_cotree[e] = 1;
        q.push(other);
      }
    }
    for (int node = 0; node < D; ++node)
      if (ddepth[node] < 0)
        throw TopologyError("internal: dual graph is not connected");
  }

  std::vector<int> leftover;
  for (int e = 0; e < E; ++e)
    if (!in_tree_[e] && !in_cotree[e]) leftover.push_back(e);
  rank_ = static_cast<int>(leftover.size());
  if (rank_ != 2 * m.genus())
    throw TopologyError("internal: homology rank mismatch");
  if (rank_ > 64)
    throw PreconditionError("genus too large: more than 64 basis elements");

  // Cocycle i = primal edges crossed by the dual cycle closed up through
  // leftover edge i: the leftover edge itself plus the cotree paths from its
  // two dual endpoints to the dual root (shared segments cancel mod 2).
  sig_.assign(E, 0);
  std::vector<int> count(E, 0);
  for (int i = 0; i < rank_; ++i) {
    int e = leftover[i];
    std::fill(count.begin(), count.end(), 0);
    count[e] = 1;
    const Edge& ed = m.edge(e);
    int na = ed.f0;
    int nb = ed.boundary() ? F + m.boundary_loop_of(e) : ed.f1;
    for (int node : {na, nb})
      while (dparent_node[node] >= 0) {
        count[dparent_edge[node]] ^= 1;
        node = dparent_node[node];
      }
    std::vector<int> coc;
    for (int k = 0; k < E; ++k)
      if (count[k]) {
        coc.push_back(k);
        sig_[k] |= CycleSig{1} << i;
      }
    cocycles_.push_back(std::move(coc));
  }

  // Generator loop i = leftover edge i closed up through the primal tree.
  for (int e : leftover) {
    int u = m.edge(e).a, v = m.edge(e).b;
    std::vector<int> up, vp;
    int x = u, y = v;
    while (depth[x] > depth[y]) up.push_back(x), x = parent_vert[x];
    while (depth[y] > depth[x]) vp.push_back(y), y = parent_vert[y];
    while (x != y) {
      up.push_back(x), x = parent_vert[x];
      vp.push_back(y), y = parent_vert[y];
    }
    up.push_back(x);  // the meeting vertex
    std::vector<int> cyc(up.begin(), up.end());
    cyc.insert(cyc.end(), vp.rbegin(), vp.rend());
    std::reverse(cyc.begin(), cyc.end());  // v ... u, closed by edge (u, v)
    gens_.push_back(EdgeCycle::from_vertices(m, std::move(cyc)));
  }
}

CycleSig cycle_class(const HomologyBasis& basis, const EdgeCycle& cycle) {
  CycleSig s = 0;
  for (int e : cycle.edges) s ^= basis.edge_sig(e);
  return s;
}

bool is_separating(const HomologyBasis& basis, const EdgeCycle& cycle) {
  return cycle_class(basis, cycle) == 0;
}

bool oracle_is_separating(const EmbeddedMesh& m, const EdgeCycle& cycle) {
  if (cycle.edges.empty()) throw PreconditionError("empty cycle");
  if (!cycle.is_simple())
    throw PreconditionError("cut oracle requires a simple cycle");
  const int F = m.num_faces(), b = m.boundary_count();
  std::vector<char> on_cycle(m.num_edges(), 0);
  for (int e : cycle.edges) on_cycle[e] = 1;
  UnionFind uf(F + b);
  for (int e = 0; e < m.num_edges(); ++e) {
    if (on_cycle[e]) continue;
    const Edge& ed = m.edge(e);
    if (ed.boundary()) uf.unite(ed.f0, F + m.boundary_loop_of(e));
    else uf.unite(ed.f0, ed.f1);
  }
  int comps = 0;
  for (int x = 0; x < F + b; ++x) comps += (uf.find(x) == x);
  return comps >= 2;
}

CycleSig transverse_class(const HomologyBasis& basis, std::span<const int> crossed) {
  const EmbeddedMesh& m = basis.mesh();
  std::vector<int> g(crossed.begin(), crossed.end());
  // A curve crossing an edge and immediately crossing back is homotopic to
  // one that does neither; cancel such pairs (cyclically) first.
  for (bool changed = true; changed && g.size() >= 2;) {
    changed = false;
    for (size_t i = 0; i < g.size(); ++i) {
      size_t j = (i + 1) % g.size();
      if (g[i] == g[j]) {
        g.erase(g.begin() + std::max(i, j));
        g.erase(g.begin() + std::min(i, j));
        changed = true;
        break;
      }
    }
  }
  if (g.empty()) return 0;
  const size_t k = g.size();
  if (k == 1) throw PreconditionError("crossing sequence does not close up");

  auto share_face = [&](int e0, int e1) {
    const Edge& ed = m.edge(e0);
    for (int f : {ed.f0, ed.f1}) {
      if (f < 0) continue;
      const auto& fe = m.face_edges(f);
      if (fe[0] == e1 || fe[1] == e1 || fe[2] == e1) return true;
    }
    return false;
  };
  auto common_vertex = [&](int e0, int e1) {
    const Edge& x = m.edge(e0), y = m.edge(e1);
    if (x.a == y.a || x.a == y.b) return x.a;
    if (x.b == y.a || x.b == y.b) return x.b;
    return -1;
  };

  // Snap: between crossings of g[i] and g[i+1] the curve stays in a common
  // face; park it at the corner those edges share. The snapped walk moves
  // along g[i] exactly when the parked corner changes, and is homotopic to
  // the original curve.
  std::vector<int> corner(k);
  for (size_t i = 0; i < k; ++i) {
    int e0 = g[i], e1 = g[(i + 1) % k];
    if (!share_face(e0, e1))
      throw PreconditionError("consecutive crossings do not share a face");
    corner[i] = common_vertex(e0, e1);
    if (corner[i] < 0)
      throw PreconditionError("consecutive crossed edges share no vertex");
  }
  CycleSig s = 0;
  for (size_t i = 0; i < k; ++i)
    if (corner[(i + k - 1) % k] != corner[i]) s ^= basis.edge_sig(g[i]);
  return s;
}

EdgeCycle simplify_to_nonzero(const HomologyBasis& basis,
                              const std::vector<int>& walk) {
  const EmbeddedMesh& m = basis.mesh();
  std::vector<int> w = walk;
  // Drop zero-length steps.
  w.erase(std::unique(w.begin(), w.end()), w.end());
  while (w.size() > 1 && w.front() == w.back()) w.pop_back();

  auto piece_sig = [&](const std::vector<int>& p) {
    CycleSig s = 0;
    for (size_t i = 0; i < p.size(); ++i) {
      int e = m.edge_between(p[i], p[(i + 1) % p.size()]);
      if (e < 0) throw PreconditionError("walk leaves the 1-skeleton");
      s ^= basis.edge_sig(e);
    }
    return s;
  };
  auto piece_len = [&](const std::vector<int>& p) {
    double l = 0.0;
    for (size_t i = 0; i < p.size(); ++i)
      l += m.edge_length(m.edge_between(p[i], p[(i + 1) % p.size()]));
    return l;
  };
  if (piece_sig(w) == 0)
    throw PreconditionError("walk has zero class; nothing to extract");

  for (;;) {
    std::vector<int> pos(m.num_vertices(), -1);
    int i0 = -1, i1 = -1;
    for (size_t i = 0; i < w.size(); ++i) {
      if (pos[w[i]] >= 0) {
        i0 = pos[w[i]];
        i1 = static_cast<int>(i);
        break;
      }
      pos[w[i]] = static_cast<int>(i);
    }
    if (i0 < 0) break;  // simple
    std::vector<int> a(w.begin() + i0, w.begin() + i1);
    std::vector<int> b(w.begin() + i1, w.end());
    b.insert(b.end(), w.begin(), w.begin() + i0);
    CycleSig sa = a.size() >= 2 ? piece_sig(a) : 0;
    CycleSig sb = b.size() >= 2 ? piece_sig(b) : 0;
    if (sa && sb) w = (piece_len(a) <= piece_len(b)) ? a : b;
    else if (sa) w = a;
    else if (sb) w = b;
    else
      throw PreconditionError("walk split into two separating pieces");
  }
  return EdgeCycle::from_vertices(m, std::move(w));
}

std::vector<EdgeCycle> all_simple_cycles(const EmbeddedMesh& m, int max_edges) {
  if (m.num_edges() > max_edges)
    throw PreconditionError("cycle enumeration limited to " +
                            std::to_string(max_edges) + " edges");
  const int V = m.num_vertices();
  std::vector<std::vector<int>> nbr(V);
  for (const Edge& e : m.edges()) {
    nbr[e.a].push_back(e.b);
    nbr[e.b].push_back(e.a);
  }
  for (auto& v : nbr) std::sort(v.begin(), v.end());

  std::vector<EdgeCycle> out;
  std::vector<int> path;
  std::vector<char> on_path(V, 0);
  auto dfs = [&](auto&& self, int s, int v) -> void {
    for (int u : nbr[v]) {
      if (u == s && path.size() >= 3 && path[1] < path.back())
        out.push_back(EdgeCycle::from_vertices(m, path));
      if (u > s && !on_path[u]) {
        on_path[u] = 1;
        path.push_back(u);
        self(self, s, u);
        path.pop_back();
        on_path[u] = 0;
      }
    }
  };
  for (int s = 0; s < V; ++s) {
    path.assign(1, s);
    on_path.assign(V, 0);
    on_path[s] = 1;
    dfs(dfs, s, s);
  }
  return out;
}

}  // namespace systl
