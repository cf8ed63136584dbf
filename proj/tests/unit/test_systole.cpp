#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "systl/homology.hpp"
#include "systl/mesh.hpp"
#include "systl/systole.hpp"

using namespace systl;
using doctest::Approx;

namespace {

EmbeddedMesh k7_torus(const std::vector<double>& jitter = {}) {
  std::vector<double> coords = {3,  -3, 0, -3, 3,  0, -3, -3, 1, 3, 3, 1,
                                -1, -2, 3, 1,  2,  3, 0,  0,  15};
  for (size_t i = 0; i < jitter.size() && i < coords.size(); ++i)
    coords[i] += jitter[i];
  std::vector<std::array<int, 3>> faces;
  for (int i = 0; i < 7; ++i) {
    faces.push_back({i, (i + 1) % 7, (i + 3) % 7});
    faces.push_back({(i + 3) % 7, (i + 2) % 7, i});
  }
  return EmbeddedMesh(3, coords, faces);
}

EmbeddedMesh punctured_k7() {
  auto m = k7_torus();
  auto faces = m.faces();
  faces.pop_back();
  return EmbeddedMesh(3, m.coords(), faces);
}

}  // namespace

TEST_CASE("k7 torus systole, both routes") {
  auto m = k7_torus();
  auto basis = build_basis(m);
  auto fast = shortest_nonseparating(m, basis);
  auto slow = brute_force_systole(m);

  // Independently enumerated: the shortest non-separating cycle is the
  // triangle (3,4,5) of length 3 + 5*sqrt(5).
  const double expect = 3.0 + 5.0 * std::sqrt(5.0);
  CHECK(fast.length == Approx(expect).epsilon(1e-15));
  CHECK(std::abs(fast.length - slow.length) <= 1e-12);
  CHECK(canonical_cycle(fast.witness.vertices) == std::vector<int>{3, 4, 5});
  CHECK(canonical_cycle(slow.witness.vertices) ==
        canonical_cycle(fast.witness.vertices));
  CHECK(fast.exact);

  // Witness validity via both classification routes.
  CHECK(fast.witness.is_simple());
  CHECK(cycle_class(basis, fast.witness) != 0);
  CHECK_FALSE(oracle_is_separating(m, fast.witness));
  double len = 0.0;
  for (int e : fast.witness.edges) len += m.edge_length(e);
  CHECK(fast.length == Approx(len).epsilon(1e-15));
}

TEST_CASE("search is independent of thread count") {
  auto m = k7_torus({0.01, -0.02, 0.005, 0.01});
  auto basis = build_basis(m);
  SystoleOptions one, many;
  one.threads = 1;
  many.threads = 8;
  auto a = shortest_nonseparating(m, basis, one);
  auto b = shortest_nonseparating(m, basis, many);
  CHECK(a.length == b.length);
  CHECK(a.witness.vertices == b.witness.vertices);
}

TEST_CASE("perturbed family: product search matches enumeration") {
  std::mt19937_64 rng(20240817);
  std::uniform_real_distribution<double> jolt(-0.05, 0.05);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<double> jitter(21);
    for (auto& x : jitter) x = jolt(rng);
    auto m = k7_torus(jitter);
    auto basis = build_basis(m);
    auto fast = shortest_nonseparating(m, basis);
    auto slow = brute_force_systole(m);
    REQUIRE(std::abs(fast.length - slow.length) <= 1e-12);
    REQUIRE(fast.witness.is_simple());
    REQUIRE_FALSE(oracle_is_separating(m, fast.witness));
    REQUIRE_FALSE(is_separating(basis, slow.witness));
  }
}

TEST_CASE("boundary surfaces are searched the same way") {
  auto m = punctured_k7();
  auto basis = build_basis(m);
  auto fast = shortest_nonseparating(m, basis);
  auto slow = brute_force_systole(m);
  CHECK(std::abs(fast.length - slow.length) <= 1e-12);
  CHECK_FALSE(oracle_is_separating(m, fast.witness));
}

TEST_CASE("refinement cannot lengthen the systole") {
  auto m = k7_torus();
  auto r = refine(m, 1);
  auto rb = build_basis(r);
  auto rs = shortest_nonseparating(r, rb);
  CHECK(rs.length <= 3.0 + 5.0 * std::sqrt(5.0) + 1e-12);
  // The subdivided witness survives unchanged here.
  CHECK(rs.length == Approx(3.0 + 5.0 * std::sqrt(5.0)).epsilon(1e-15));
  CHECK(rs.witness.is_simple());
}

TEST_CASE("genus zero has nothing to find") {
  EmbeddedMesh tetra(3, {0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1},
                     {{0, 1, 3}, {1, 2, 3}, {2, 0, 3}, {0, 2, 1}});
  auto basis = build_basis(tetra);
  CHECK_THROWS_AS(shortest_nonseparating(tetra, basis), PreconditionError);
  CHECK_THROWS_AS(brute_force_systole(tetra), PreconditionError);
}

TEST_CASE("sampled sources give a flagged upper bound") {
  auto m = k7_torus();
  auto basis = build_basis(m);
  SystoleOptions opts;
  opts.exact_vertex_limit = 3;
  auto rep = shortest_nonseparating(m, basis, opts);
  CHECK_FALSE(rep.exact);
  CHECK(rep.sources < m.num_vertices());
  CHECK(rep.length >= 3.0 + 5.0 * std::sqrt(5.0) - 1e-12);
}

TEST_CASE("enumeration guard") {
  auto r = refine(k7_torus(), 1);  // 84 edges
  CHECK_THROWS_AS(brute_force_systole(r), PreconditionError);
}

TEST_CASE("flat torus ratio check") {
  auto m = k7_torus();
  auto rep = loewner_check(m);
  CHECK(rep.bound == Approx(2.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(rep.ratio == Approx(rep.length * rep.length / rep.area).epsilon(1e-15));
  // This embedding is comfortably inside the bound.
  CHECK(rep.ratio == Approx(0.6753752476027689).epsilon(1e-12));
  CHECK(rep.pass);

  CHECK_THROWS_AS(loewner_check(punctured_k7()), TopologyError);
  EmbeddedMesh tetra(3, {0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1},
                     {{0, 1, 3}, {1, 2, 3}, {2, 0, 3}, {0, 2, 1}});
  CHECK_THROWS_AS(loewner_check(tetra), TopologyError);
}
