#include <gtest/gtest.h>

#include "osarr/errors.hpp"
#include "osarr/graphs.hpp"
#include "osarr/hypersolvable.hpp"
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

Dense normals_of(const Arrangement& a) {
  Dense d;
  for (const auto& v : a.normals()) {
    std::vector<long long> r;
    for (const auto& x : v) r.push_back(x.small_value());
    d.push_back(r);
  }
  return d;
}

Dense d4() {
  Dense d;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      for (int s : {-1, 1}) {
        std::vector<long long> v(4, 0);
        v[i] = 1;
        v[j] = s;
        d.push_back(v);
      }
  return d;
}

Graph theta() { return Graph(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 5}, {1, 4}}); }

// The three extension conditions read directly off triple ranks.
bool extension_ok(const Dense& d, const std::vector<std::size_t>& base, const std::vector<std::size_t>& ext) {
  auto collinear = [&](std::size_t x, std::size_t y, std::size_t z) { return test::subset_rank(d, {x, y, z}) == 2; };
  for (auto a : ext)
    for (std::size_t i = 0; i < base.size(); ++i)
      for (std::size_t j = i + 1; j < base.size(); ++j)
        if (collinear(a, base[i], base[j])) return false;
  auto f = [&](std::size_t a, std::size_t b) -> long long {
    for (auto x : base)
      if (collinear(a, b, x)) return static_cast<long long>(x);
    return -1;
  };
  for (std::size_t i = 0; i < ext.size(); ++i)
    for (std::size_t j = i + 1; j < ext.size(); ++j)
      if (f(ext[i], ext[j]) < 0) return false;
  for (std::size_t i = 0; i < ext.size(); ++i)
    for (std::size_t j = i + 1; j < ext.size(); ++j)
      for (std::size_t k = j + 1; k < ext.size(); ++k) {
        const auto x = f(ext[i], ext[j]), y = f(ext[j], ext[k]), z = f(ext[i], ext[k]);
        if (x == y && y == z) continue;
        if (x == y || y == z || x == z) return false;
        if (test::subset_rank(d, {std::size_t(x), std::size_t(y), std::size_t(z)}) != 2) return false;
      }
  return true;
}

void expect_valid_series(const Arrangement& a, const CompositionSeries& s) {
  const Dense d = normals_of(a);
  ASSERT_FALSE(s.chain.empty());
  EXPECT_EQ(popcount(s.chain.front()), 1u);
  EXPECT_EQ(s.chain.back(), a.all());
  ASSERT_EQ(s.exponents.size(), s.chain.size());
  EXPECT_EQ(s.exponents.front(), 1u);
  std::size_t total = 0;
  for (auto e : s.exponents) total += e;
  EXPECT_EQ(total, a.size());
  for (std::size_t i = 0; i + 1 < s.chain.size(); ++i) {
    ASSERT_EQ(s.chain[i] & ~s.chain[i + 1], Mask{0});
    EXPECT_EQ(popcount(s.chain[i + 1] & ~s.chain[i]), s.exponents[i + 1]);
    EXPECT_TRUE(extension_ok(d, mask_indices(s.chain[i]), mask_indices(s.chain[i + 1] & ~s.chain[i])));
  }
}

}  // namespace

TEST(Extension, SpecExamples) {
  const auto k3 = Arrangement::from_graph(Graph(3, {{0, 1}, {0, 2}, {1, 2}}));
  EXPECT_TRUE(solvable_extension_check(k3, bit(0)).ok);
  const auto boolean = make(2, {{1, 0}, {0, 1}});
  EXPECT_TRUE(solvable_extension_check(boolean, bit(0)).ok);
  EXPECT_THROW(solvable_extension_check(k3, 0), InputError);
  EXPECT_THROW(solvable_extension_check(k3, k3.all()), InputError);
}

TEST(Extension, WitnessesEachCondition) {
  const auto k3 = Arrangement::from_graph(Graph(3, {{0, 1}, {0, 2}, {1, 2}}));
  auto closed = solvable_extension_check(k3, bit(0) | bit(1));
  EXPECT_FALSE(closed.ok);
  EXPECT_EQ(closed.condition, 1);
  EXPECT_EQ(closed.witness, (std::vector<std::size_t>{2, 0, 1}));
  const auto boolean = make(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  auto complete = solvable_extension_check(boolean, bit(0));
  EXPECT_FALSE(complete.ok);
  EXPECT_EQ(complete.condition, 2);
  EXPECT_FALSE(complete.message.empty());
}

TEST(CompositionSeries, SpecExamples) {
  const auto boolean = composition_series(make(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
  ASSERT_TRUE(boolean);
  EXPECT_EQ(boolean->exponents, (std::vector<std::size_t>{1, 1, 1}));
  const auto k3 = composition_series(Arrangement::from_graph(Graph(3, {{0, 1}, {0, 2}, {1, 2}})));
  ASSERT_TRUE(k3);
  EXPECT_EQ(k3->exponents, (std::vector<std::size_t>{1, 2}));
  EXPECT_FALSE(composition_series(make(4, d4())).has_value());
}

TEST(CompositionSeries, GraphsSatisfyConditions) {
  for (const auto& cf : connected_graphs(2, 6)) {
    const auto a = Arrangement::from_graph(cf.graph());
    const auto s = composition_series(a);
    if (s) expect_valid_series(a, *s);
    // chordal graphs are supersolvable, hence hypersolvable
    if (is_chordal(cf.graph())) EXPECT_TRUE(s.has_value()) << cf.key();
  }
}

TEST(CompositionSeries, RandomConfigurations) {
  Rng rng(55);
  for (int trial = 0; trial < 30; ++trial) {
    // 13 directions with entries in {-1, 0, 1} in dimension 3
    const std::size_t dim = 3, n = rng.range(3, 8);
    Dense d;
    while (d.size() < n) {
      std::vector<long long> v(dim);
      for (auto& x : v) x = rng.range(-1, 1);
      bool fresh = test::rank({v}) == 1;
      for (const auto& w : d) fresh = fresh && test::rank({v, w}) == 2;
      if (fresh) d.push_back(v);
    }
    const auto a = make(dim, d);
    if (auto s = composition_series(a)) expect_valid_series(a, *s);
  }
}

TEST(Classify, SupersolvableIffChordal) {
  for (const auto& cf : connected_graphs(2, 6)) {
    const auto g = cf.graph();
    const auto c = classify(Arrangement::from_graph(g));
    EXPECT_EQ(c.supersolvable, test::chordal_by_induced_cycles(g.vertex_count(), g.edges())) << cf.key();
    EXPECT_EQ(c.supersolvable, c.modular_chain);
    if (c.supersolvable) EXPECT_TRUE(c.hypersolvable);
  }
}

TEST(Classify, Theta) {
  const auto c = classify(Arrangement::from_graph(theta()));
  EXPECT_TRUE(c.hypersolvable);
  EXPECT_FALSE(c.supersolvable);
  EXPECT_EQ(c.p, 2u);
  EXPECT_EQ(c.r, 5u);
  EXPECT_TRUE(c.warnings.empty());
}

TEST(Classify, TwoGenericHasPEqualCMinusTwo) {
  Rng rng(77);
  int seen = 0;
  for (int trial = 0; trial < 60 && seen < 12; ++trial) {
    const std::size_t dim = rng.range(3, 4), n = rng.range(dim + 1, 7);
    const Dense d = rng.matrix(n, dim, -3, 3);
    Arrangement a;
    try {
      a = make(dim, d);
    } catch (const InputError&) {
      continue;
    }
    const auto g = c_and_genericity(a);
    if (!g.two_generic.value_or(false)) continue;
    ++seen;
    const auto c = classify(a);
    EXPECT_TRUE(c.hypersolvable);
    EXPECT_FALSE(c.supersolvable);
    EXPECT_EQ(c.p, *g.c - 2);
    ASSERT_TRUE(c.series);
    EXPECT_EQ(c.series->exponents, std::vector<std::size_t>(n, 1));
  }
  EXPECT_GE(seen, 5);
}

TEST(Classify, D4) {
  const auto c = classify(make(4, d4()));
  EXPECT_FALSE(c.hypersolvable);
  EXPECT_FALSE(c.supersolvable);
  EXPECT_FALSE(c.series.has_value());
  EXPECT_FALSE(c.warnings.empty());
  ASSERT_TRUE(c.p.has_value());
  EXPECT_GE(*c.p, 2u);
}

TEST(POrder, Examples) {
  EXPECT_FALSE(p_order(Arrangement::from_graph(Graph(3, {{0, 1}, {0, 2}, {1, 2}}))).has_value());
  EXPECT_EQ(p_order(Arrangement::from_graph(theta())), 2u);
  EXPECT_EQ(p_order(make(4, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {1, 1, 1, 1}, {1, -1, -1, 1}})),
            2u);
}

TEST(ExponentPolynomial, Expands) {
  EXPECT_EQ(exponent_polynomial({1, 2}), (std::vector<Integer>{1, 3, 2}));
  EXPECT_EQ(exponent_polynomial({}), (std::vector<Integer>{1}));
  EXPECT_EQ(exponent_polynomial({1, 1, 1}), (std::vector<Integer>{1, 3, 3, 1}));
}
