#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "osarr/arrangement.hpp"
#include "osarr/errors.hpp"
#include "osarr/graphs.hpp"
#include "support/oracles.hpp"
#include "support/rng.hpp"

using namespace osarr;
using osarr::test::Dense;
using osarr::test::Rng;

namespace {

Arrangement make(std::size_t dim, const Dense& d) {
  std::vector<std::vector<Integer>> normals;
  for (const auto& r : d) {
    std::vector<Integer> v;
    for (auto x : r) v.emplace_back(x);
    normals.push_back(std::move(v));
  }
  return Arrangement::build(dim, std::move(normals));
}

Dense nonfano() { return {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {1, 1, 1, 1}, {1, -1, -1, 1}}; }

Dense random_config(Rng& rng, std::size_t n, std::size_t dim, long long bound) {
  for (;;) {
    Dense d = rng.matrix(n, dim, -bound, bound);
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      if (std::all_of(d[i].begin(), d[i].end(), [](long long x) { return x == 0; })) ok = false;
      for (std::size_t j = 0; j < i && ok; ++j)
        if (test::rank({d[i], d[j]}) < 2) ok = false;
    }
    if (ok) return d;
  }
}

Graph random_graph(Rng& rng, std::size_t n, int percent) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (rng.range(0, 99) < percent) edges.emplace_back(u, v);
  return Graph(n, edges);
}

}  // namespace

TEST(Bits, SubsetsAndSigns) {
  std::vector<Mask> seen;
  for_each_subset(5, 3, [&](Mask m) { seen.push_back(m); });
  ASSERT_EQ(seen.size(), binomial(5, 3));
  for (std::size_t i = 0; i < seen.size(); ++i) {
    EXPECT_EQ(lex_rank(seen[i], 5), i);
    if (i) EXPECT_TRUE(lex_less(seen[i - 1], seen[i]));
  }
  EXPECT_EQ(wedge_sign(bit(2), bit(0)), -1);
  EXPECT_EQ(wedge_sign(bit(0), bit(2)), 1);
  EXPECT_EQ(wedge_sign(bit(1) | bit(2), bit(0)), 1);
  EXPECT_EQ(above(63), Mask{0});
  EXPECT_EQ(above(61), bit(62) | bit(63));
  EXPECT_EQ(mask_indices(indices_mask({0, 5, 63})), (std::vector<std::size_t>{0, 5, 63}));
}

TEST(Arrangement, RejectsBadNormals) {
  try {
    make(2, {{1, 2}, {0, 1}, {-2, -4}});
    FAIL();
  } catch (const InputError& e) {
    EXPECT_EQ(e.items(), (std::vector<int>{0, 2}));
  }
  EXPECT_THROW(make(2, {{0, 0}}), InputError);
  EXPECT_THROW(make(3, {{1, 2}}), InputError);
  EXPECT_THROW(Graph(3, {{0, 0}}), InputError);
  EXPECT_THROW(Graph(3, {{0, 1}, {1, 0}}), InputError);
  EXPECT_THROW(Graph(3, {{0, 3}}), InputError);
}

TEST(Arrangement, RankClosureIndependence) {
  Rng rng(8);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t dim = rng.range(2, 4), n = rng.range(2, 7);
    const Dense d = random_config(rng, n, dim, 2);
    const auto a = make(dim, d);
    for (Mask s = 0; s < bit(n); ++s) {
      const auto idx = mask_indices(s);
      ASSERT_EQ(a.rank(s), test::subset_rank(d, idx));
      const Mask cl = a.closure(s);
      for (std::size_t x = 0; x < n; ++x) {
        auto t = idx;
        t.push_back(x);
        EXPECT_EQ((cl >> x) & 1, test::subset_rank(d, t) == test::subset_rank(d, idx) ? 1u : 0u);
      }
    }
  }
}

TEST(Arrangement, CircuitsAgreeWithBruteForce) {
  Rng rng(12);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t dim = rng.range(2, 4), n = rng.range(3, 8);
    const Dense d = random_config(rng, n, dim, 2);
    const auto a = make(dim, d);
    std::vector<std::vector<std::size_t>> got;
    for (const auto& c : circuits(a, n)) got.push_back(c.indices);
    EXPECT_EQ(got, test::brute_circuits(d));
  }
}

TEST(Arrangement, GraphicCircuitsAreCycles) {
  Rng rng(13);
  for (int trial = 0; trial < 40; ++trial) {
    const Graph g = random_graph(rng, rng.range(3, 7), 60);
    if (g.edge_count() == 0) continue;
    const auto a = Arrangement::from_graph(g);
    std::set<std::vector<std::size_t>> got;
    for (const auto& c : circuits(a, a.size())) got.insert(c.indices);
    EXPECT_EQ(got, test::graph_cycles(g.vertex_count(), g.edges()));
  }
}

TEST(Arrangement, NonFanoChordlessCircuits) {
  const auto a = make(4, nonfano());
  const auto five = chordless_circuits(a, 5);
  ASSERT_EQ(five.size(), 2u);
  EXPECT_EQ(five[0].indices, (std::vector<std::size_t>{0, 1, 2, 3, 4}));
  EXPECT_EQ(five[1].indices, (std::vector<std::size_t>{0, 1, 2, 3, 5}));
  const auto all = circuits(a, 6);
  const auto has = [&](std::vector<std::size_t> c) {
    return std::find_if(all.begin(), all.end(), [&](const Circuit& x) { return x.indices == c; }) != all.end();
  };
  EXPECT_TRUE(has({1, 2, 4, 5}));
  EXPECT_TRUE(has({0, 3, 4, 5}));
  EXPECT_THROW(chordless_circuits(a, 2), InputError);
}

TEST(Arrangement, ChordDefinition) {
  // 4-cycle with one diagonal: the outer cycle has a chord, the triangles do not
  const auto a = Arrangement::from_graph(Graph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {0, 2}}));
  // edges sorted: 01 02 03 12 23
  EXPECT_TRUE(has_chord(a, indices_mask({0, 2, 3, 4})));
  EXPECT_FALSE(has_chord(a, indices_mask({0, 1, 3})));
  EXPECT_EQ(chordless_circuits(a, 4).size(), 0u);
  EXPECT_EQ(chordless_circuits(a, 3).size(), 2u);
}

TEST(Lattice, MobiusMatchesBruteForce) {
  Rng rng(21);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t dim = rng.range(2, 4), n = rng.range(2, 7);
    const Dense d = random_config(rng, n, dim, 2);
    const auto b = betti_mobius(make(dim, d));
    const auto expect = test::brute_betti(d);
    ASSERT_EQ(b.size(), expect.size());
    for (std::size_t i = 0; i < b.size(); ++i) EXPECT_EQ(b[i], Integer(expect[i]));
  }
}

TEST(Lattice, JoinMeetModular) {
  const auto a = Arrangement::from_graph(Graph(3, {{0, 1}, {0, 2}, {1, 2}}));
  const auto l = flats(a);
  EXPECT_EQ(l.size(), 5u);
  EXPECT_EQ(l.rank(), 2u);
  EXPECT_EQ(l.join(bit(0), bit(1)), Mask{7});
  EXPECT_EQ(l.meet(bit(0), bit(1)), Mask{0});
  EXPECT_TRUE(l.is_modular(bit(0)));
  EXPECT_TRUE(l.modular_chain().has_value());
  // the 4-cycle has no modular chain
  const auto c4 = flats(Arrangement::from_graph(Graph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}})));
  EXPECT_FALSE(c4.modular_chain().has_value());
}

TEST(Lattice, Genericity) {
  const auto g = c_and_genericity(make(4, nonfano()));
  EXPECT_EQ(g.c, 4u);
  EXPECT_EQ(g.two_generic, true);
  const auto k3 = c_and_genericity(Arrangement::from_graph(Graph(3, {{0, 1}, {0, 2}, {1, 2}})));
  EXPECT_EQ(k3.c, 3u);
  EXPECT_EQ(k3.two_generic, false);
  const auto boolean = c_and_genericity(make(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
  EXPECT_FALSE(boolean.c.has_value());
  EXPECT_FALSE(boolean.two_generic.has_value());
}

TEST(Graphs, ChromaticPolynomialCountsColorings) {
  Rng rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = rng.range(1, 7);
    const Graph g = random_graph(rng, n, 50);
    const auto poly = chromatic_polynomial(g);
    for (long long k = 0; k <= 4; ++k) {
      Integer value, power(1);
      for (const auto& c : poly) {
        value += c * power;
        power *= Integer(k);
      }
      EXPECT_EQ(value, Integer(test::count_colorings(n, g.edges(), k)));
    }
  }
}

TEST(Graphs, BettiAreChromaticMagnitudes) {
  Rng rng(32);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = rng.range(2, 7);
    const Graph g = random_graph(rng, n, 55);
    if (g.edge_count() == 0 || !is_connected(g)) continue;
    const auto poly = chromatic_polynomial(g);
    const auto betti = betti_mobius(Arrangement::from_graph(g));
    // chi(t) = sum (-1)^i b_i t^(n-i)
    for (std::size_t i = 0; i < betti.size(); ++i) EXPECT_EQ(abs(poly[n - i]), betti[i]);
  }
}

TEST(Graphs, ChordalAgreesWithInducedCycles) {
  Rng rng(33);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = rng.range(1, 8);
    const Graph g = random_graph(rng, n, static_cast<int>(rng.range(20, 80)));
    EXPECT_EQ(is_chordal(g), test::chordal_by_induced_cycles(n, g.edges()));
  }
}

TEST(Graphs, CanonicalFormIsInvariant) {
  Rng rng(34);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = rng.range(1, 8);
    const Graph g = random_graph(rng, n, 50);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.range(0, static_cast<long long>(i) - 1)]);
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (auto [u, v] : g.edges()) edges.emplace_back(std::min(perm[u], perm[v]), std::max(perm[u], perm[v]));
    const auto a = canonical_form(g), b = canonical_form(Graph(n, edges));
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.key(), b.key());
    EXPECT_EQ(canonical_form(a.graph()), a);
    EXPECT_EQ(a.graph().edge_count(), g.edge_count());
  }
}

TEST(Graphs, ConnectedGraphCounts) {
  // connected graphs on 2..7 unlabeled vertices: 1, 2, 6, 21, 112, 853
  const std::vector<std::size_t> expect{0, 0, 1, 2, 6, 21, 112, 853};
  const auto all = connected_graphs(2, 7);
  std::vector<std::size_t> by_n(8, 0);
  for (const auto& cf : all) {
    ++by_n[cf.vertex_count];
    EXPECT_TRUE(is_connected(cf.graph()));
  }
  EXPECT_EQ(by_n, expect);
  EXPECT_TRUE(std::is_sorted(all.begin(), all.end()));
  EXPECT_EQ(std::adjacent_find(all.begin(), all.end()), all.end());
}
