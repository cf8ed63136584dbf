#include "systl/systole.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <queue>

#include "systl/parallel.hpp"

namespace systl {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void atomic_min(std::atomic<double>& target, double value) {
  double cur = target.load(std::memory_order_relaxed);
  while (value < cur &&
         !target.compare_exchange_weak(cur, value, std::memory_order_relaxed)) {
  }
}

// Removes zero-length steps and the duplicated endpoint of a closed walk.
void clean_walk(std::vector<int>& w) {
  w.erase(std::unique(w.begin(), w.end()), w.end());
  while (w.size() > 1 && w.front() == w.back()) w.pop_back();
}

// Scratch buffers for one searching thread, reused across sources.
struct Scratch {
  std::vector<double> dist;
  std::vector<char> settled;
  std::vector<int64_t> parent;
  std::vector<int> parent_edge;
  std::vector<int64_t> touched;

  void init(int64_t states) {
    dist.assign(states, kInf);
    settled.assign(states, 0);
    parent.assign(states, -1);
    parent_edge.assign(states, -1);
    touched.clear();
  }
  void reset() {
    for (int64_t st : touched) {
      dist[st] = kInf;
      settled[st] = 0;
      parent[st] = -1;
      parent_edge[st] = -1;
    }
    touched.clear();
  }
};

struct Best {
  double length = kInf;
  std::vector<int> canon;
  std::vector<int> walk;

  void offer(double len, std::vector<int> w) {
    clean_walk(w);
    auto c = canonical_cycle(w);
    if (len < length || (len == length && (canon.empty() || c < canon))) {
      length = len;
      canon = std::move(c);
      walk = std::move(w);
    }
  }
};

}  // namespace

SystoleReport shortest_nonseparating(const EmbeddedMesh& m,
                                     const HomologyBasis& basis,
                                     const SystoleOptions& opts) {
  if (basis.rank() == 0)
    throw PreconditionError(
        "surface has no non-separating cycle (first homology is trivial)");
  const int V = m.num_vertices();
  if (basis.rank() > 20)
    throw PreconditionError("product search supports at most 20 basis elements");
  const int S = 1 << basis.rank();
  const int64_t states = static_cast<int64_t>(V) * S;
  if (states > 200'000'000)
    throw PreconditionError("product graph too large for the exact search");

  std::vector<int> sources;
  bool exact = true;
  if (V <= opts.exact_vertex_limit) {
    sources.resize(V);
    for (int v = 0; v < V; ++v) sources[v] = v;
  } else {
    int stride = (V + opts.exact_vertex_limit - 1) / opts.exact_vertex_limit;
    for (int v = 0; v < V; v += stride) sources.push_back(v);
    exact = false;
  }

  int threads = opts.threads > 0 ? opts.threads : default_threads();
  std::atomic<double> global_best{kInf};
  std::vector<Scratch> scratch(threads);
  std::vector<Best> best(threads);
  for (auto& sc : scratch) sc.init(states);

  using QItem = std::pair<double, int64_t>;

  parallel_for(static_cast<int>(sources.size()), threads, [&](int tid, int si) {
    const int s = sources[si];
    Scratch& sc = scratch[tid];
    sc.reset();
    std::priority_queue<QItem, std::vector<QItem>, std::greater<>> heap;

    const int64_t start = static_cast<int64_t>(s) * S;
    sc.dist[start] = 0.0;
    sc.touched.push_back(start);
    heap.push({0.0, start});

    // Best meet through this source: total length plus the two half states
    // (joining edge -1 for a meet at a shared vertex).
    double cand = kInf;
    int64_t cst1 = -1, cst2 = -1;

    while (!heap.empty()) {
      auto [d, st] = heap.top();
      heap.pop();
      if (sc.settled[st]) continue;
      double cap = std::min(cand, global_best.load(std::memory_order_relaxed));
      if (2.0 * d > cap) break;  // no shorter meet can still appear
      sc.settled[st] = 1;
      const int v = static_cast<int>(st >> basis.rank());
      const CycleSig sig = static_cast<CycleSig>(st & (S - 1));

      // Meet at v: a settled copy with another signature closes up a walk of
      // nonzero class.
      const int64_t base = static_cast<int64_t>(v) * S;
      for (int t = 0; t < S; ++t) {
        if (static_cast<CycleSig>(t) == sig || !sc.settled[base + t]) continue;
        double total = d + sc.dist[base + t];
        if (total < cand) {
          cand = total;
          cst1 = st;
          cst2 = base + t;
        }
      }

      for (int e : m.vertex_edges(v)) {
        const Edge& ed = m.edge(e);
        const int u = (ed.a == v) ? ed.b : ed.a;
        const CycleSig nsig = sig ^ basis.edge_sig(e);
        const int64_t ubase = static_cast<int64_t>(u) * S;
        const int64_t nst = ubase + static_cast<int64_t>(nsig);
        const double nd = d + m.edge_length(e);
        if (!sc.settled[nst] && nd < sc.dist[nst]) {
          if (sc.dist[nst] == kInf) sc.touched.push_back(nst);
          sc.dist[nst] = nd;
          sc.parent[nst] = st;
          sc.parent_edge[nst] = e;
          heap.push({nd, nst});
        }
        // Meet across e: combined class sig ^ sig(e) ^ t is nonzero for
        // every settled signature t != nsig.
        for (int t = 0; t < S; ++t) {
          if (static_cast<CycleSig>(t) == nsig || !sc.settled[ubase + t]) continue;
          double total = nd + sc.dist[ubase + t];
          if (total < cand) {
            cand = total;
            cst1 = st;
            cst2 = ubase + t;
          }
        }
      }
    }

    if (cand < kInf) {
      atomic_min(global_best, cand);
      auto path_of = [&](int64_t st) {
        std::vector<int> p;
        while (st >= 0) {
          p.push_back(static_cast<int>(st >> basis.rank()));
          st = sc.parent[st];
        }
        std::reverse(p.begin(), p.end());
        return p;  // source ... endpoint
      };
      std::vector<int> w = path_of(cst1);
      std::vector<int> half2 = path_of(cst2);
      w.insert(w.end(), half2.rbegin(), half2.rend());
      best[tid].offer(cand, std::move(w));
    }
  });

  Best merged;
  for (const auto& b : best)
    if (b.length < kInf) merged.offer(b.length, b.walk);
  if (!(merged.length < kInf))
    throw PreconditionError("no non-separating cycle found");

  SystoleReport rep;
  rep.length = merged.length;
  rep.witness = simplify_to_nonzero(basis, merged.walk);
  rep.witness_class = cycle_class(basis, rep.witness);
  rep.exact = exact;
  rep.sources = static_cast<int>(sources.size());
  return rep;
}

SystoleReport brute_force_systole(const EmbeddedMesh& m, int max_edges) {
  auto cycles = all_simple_cycles(m, max_edges);
  const EdgeCycle* best = nullptr;
  std::vector<int> best_canon;
  for (const auto& c : cycles) {
    if (oracle_is_separating(m, c)) continue;
    auto canon = canonical_cycle(c.vertices);
    if (!best || c.length < best->length ||
        (c.length == best->length && canon < best_canon)) {
      best = &c;
      best_canon = std::move(canon);
    }
  }
  if (!best)
    throw PreconditionError(
        "surface has no non-separating cycle (exhaustive enumeration)");
  SystoleReport rep;
  rep.length = best->length;
  rep.witness = *best;
  rep.witness_class = cycle_class(build_basis(m), *best);
  rep.exact = true;
  rep.sources = m.num_vertices();
  return rep;
}

LoewnerReport loewner_check(const EmbeddedMesh& m, double tol) {
  if (m.boundary_count() != 0 || m.genus() != 1)
    throw TopologyError("flat-torus check requires a closed genus-1 surface");
  auto basis = build_basis(m);
  auto sys = shortest_nonseparating(m, basis);
  LoewnerReport rep;
  rep.length = sys.length;
  rep.area = m.area();
  rep.ratio = sys.length * sys.length / m.area();
  rep.bound = 2.0 / std::sqrt(3.0);
  rep.tol = tol;
  rep.pass = rep.ratio <= rep.bound + tol;
  return rep;
}

}  // namespace systl
