#include <gtest/gtest.h>

#include <gmpxx.h>

#include "osarr/errors.hpp"
#include "osarr/integer.hpp"
#include "osarr/lattice.hpp"
#include "osarr/normal_form.hpp"
#include "support/oracles.hpp"
#include "support/rng.hpp"

using namespace osarr;
using osarr::test::Dense;
using osarr::test::Rng;

namespace {

IntegerMatrix to_matrix(const Dense& d, std::size_t cols) {
  IntegerMatrix m(d.size(), cols);
  for (std::size_t r = 0; r < d.size(); ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = static_cast<long long>(d[r][c]);
  return m;
}

mpz_class to_mpz(const Integer& v) { return v.to_mpz(); }

bool is_diagonal_with(const IntegerMatrix& d, const std::vector<Integer>& divisors) {
  for (std::size_t r = 0; r < d.rows(); ++r)
    for (std::size_t c = 0; c < d.cols(); ++c) {
      Integer want = (r == c && r < divisors.size()) ? divisors[r] : Integer(0);
      if (d(r, c) != want) return false;
    }
  return true;
}

}  // namespace

TEST(Integer, MatchesGmpAcrossOverflow) {
  Rng rng(11);
  for (int i = 0; i < 2000; ++i) {
    const long long a = static_cast<long long>(rng.next()), b = static_cast<long long>(rng.next() >> rng.range(0, 62));
    const Integer x(a), y(b);
    const mpz_class ma(static_cast<long>(a)), mb(static_cast<long>(b));
    EXPECT_EQ(to_mpz(x + y), ma + mb);
    EXPECT_EQ(to_mpz(x - y), ma - mb);
    EXPECT_EQ(to_mpz(x * y), ma * mb);
    EXPECT_EQ(to_mpz(x * y * y), ma * mb * mb);
    if (b != 0) {
      EXPECT_EQ(to_mpz(x / y), mpz_class(ma / mb));
      EXPECT_EQ(to_mpz(x % y), mpz_class(ma % mb));
    }
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), ma.get_mpz_t(), mb.get_mpz_t());
    EXPECT_EQ(to_mpz(gcd(x, y)), g);
  }
}

TEST(Integer, NormalizesBackToSmall) {
  Integer big = Integer(std::numeric_limits<long long>::max()) * Integer(4);
  EXPECT_FALSE(big.is_small());
  Integer back = div_exact(big, Integer(4));
  EXPECT_TRUE(back.is_small());
  EXPECT_EQ(back, Integer(std::numeric_limits<long long>::max()));
  EXPECT_EQ(-Integer(std::numeric_limits<long long>::min()), Integer::parse("9223372036854775808"));
}

TEST(Integer, ParseAndPrint) {
  EXPECT_EQ(Integer::parse("-17"), Integer(-17));
  EXPECT_EQ(Integer::parse("+5"), Integer(5));
  EXPECT_EQ(Integer::parse("123456789012345678901234567890").to_string(), "123456789012345678901234567890");
  EXPECT_THROW(Integer::parse("12a"), std::invalid_argument);
  EXPECT_THROW(Integer::parse(""), std::invalid_argument);
  EXPECT_THROW(Integer::parse("-"), std::invalid_argument);
}

TEST(Integer, ExtendedGcdBezout) {
  Rng rng(3);
  for (int i = 0; i < 500; ++i) {
    Integer a(rng.range(-1000000, 1000000)), b(rng.range(-1000, 1000));
    auto [g, s, t] = extended_gcd(a, b);
    EXPECT_EQ(g, gcd(a, b));
    EXPECT_EQ(s * a + t * b, g);
  }
}

TEST(Integer, FloorDivision) {
  EXPECT_EQ(floor_div(Integer(-7), Integer(2)), Integer(-4));
  EXPECT_EQ(floor_mod(Integer(-7), Integer(2)), Integer(1));
  EXPECT_EQ(floor_div(Integer(7), Integer(2)), Integer(3));
  EXPECT_TRUE(divides(Integer(3), Integer(-9)));
  EXPECT_FALSE(divides(Integer(0), Integer(1)));
  EXPECT_TRUE(divides(Integer(0), Integer(0)));
}

TEST(Smith, DivisorsMatchDeterminantalDivisors) {
  Rng rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t rows = rng.range(1, 4), cols = rng.range(1, 4);
    const Dense d = rng.matrix(rows, cols, -6, 6);
    const auto m = to_matrix(d, cols);
    const auto expect = test::determinantal_factors(d);
    const auto got = smith_normal_form(m).divisors;
    ASSERT_EQ(got.size(), expect.size()) << m.to_string();
    for (std::size_t i = 0; i < got.size(); ++i) EXPECT_EQ(got[i], Integer(expect[i])) << m.to_string();
    EXPECT_EQ(smith_divisors(m), got);
  }
}

TEST(Smith, TransformsAndChain) {
  Rng rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t rows = rng.range(1, 6), cols = rng.range(1, 6);
    const auto m = to_matrix(rng.matrix(rows, cols, -9, 9), cols);
    const auto s = smith_normal_form(m);
    EXPECT_TRUE(is_diagonal_with(s.left * m * s.right, s.divisors)) << m.to_string();
    for (std::size_t i = 0; i + 1 < s.divisors.size(); ++i) EXPECT_TRUE(divides(s.divisors[i], s.divisors[i + 1]));
    for (const auto& d : s.divisors) EXPECT_GT(d.sign(), 0);
    EXPECT_EQ(smith_normal_form(m.transpose()).divisors, s.divisors);
  }
}

TEST(Smith, ZeroAndEmpty) {
  EXPECT_TRUE(smith_normal_form(IntegerMatrix(3, 2)).divisors.empty());
  EXPECT_TRUE(smith_normal_form(IntegerMatrix(0, 0)).divisors.empty());
  EXPECT_EQ(quotient_invariants(3, IntegerMatrix(0, 3)), (AbelianInvariants{3, {}}));
}

TEST(Smith, KnownExample) {
  const IntegerMatrix m{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}};
  EXPECT_EQ(smith_normal_form(m).divisors, (std::vector<Integer>{2, 6, 12}));
  EXPECT_EQ(quotient_invariants(3, m).to_string(), "Z^0 + Z/2 + Z/6 + Z/12");
}

TEST(QuotientInvariants, BruteForceCokernel) {
  Rng rng(7);
  for (int trial = 0; trial < 250; ++trial) {
    const std::size_t ambient = rng.range(1, 3), gens = rng.range(0, 4);
    const Dense d = rng.matrix(gens, ambient, -4, 4);
    const auto inv = quotient_invariants(ambient, to_matrix(d, ambient));
    EXPECT_EQ(inv.free_rank, ambient - test::rank(d));
    // Z^a / L tensored with Z/N has N^free * prod gcd(d_i, N) elements
    std::set<long long> moduli{2, 3, 4, 5, 6, 8, 9, 12};
    for (const auto& t : inv.torsion) {
      ASSERT_TRUE(t.is_small());
      if (t.small_value() <= 40) moduli.insert(t.small_value());
    }
    for (long long n : moduli) {
      std::size_t expect = 1;
      for (std::size_t i = 0; i < inv.free_rank; ++i) expect *= static_cast<std::size_t>(n);
      for (const auto& t : inv.torsion) expect *= static_cast<std::size_t>(std::gcd(t.small_value(), n));
      EXPECT_EQ(test::cokernel_size_mod(d, ambient, n), expect) << to_matrix(d, ambient).to_string() << " N=" << n;
    }
  }
}

TEST(Hermite, CanonicalAndSameLattice) {
  Rng rng(5);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t rows = rng.range(1, 5), cols = rng.range(1, 5);
    const auto m = to_matrix(rng.matrix(rows, cols, -5, 5), cols);
    const auto h = hermite_basis(m);
    EXPECT_EQ(h.rows(), rank_over_field(m, FieldSpec::rationals()));
    std::size_t last = 0;
    for (std::size_t r = 0; r < h.rows(); ++r) {
      std::size_t p = 0;
      while (h(r, p).is_zero()) ++p;
      if (r) EXPECT_GT(p, last);
      last = p;
      EXPECT_GT(h(r, p).sign(), 0);
      for (std::size_t k = 0; k < r; ++k) {
        EXPECT_GE(h(k, p).sign(), 0);
        EXPECT_LT(h(k, p), h(r, p));
      }
    }
    // same row lattice: each spans the other
    std::vector<SparseVector> rows_m, rows_h;
    for (std::size_t r = 0; r < m.rows(); ++r) rows_m.push_back(to_sparse(m.row(r)));
    for (std::size_t r = 0; r < h.rows(); ++r) rows_h.push_back(to_sparse(h.row(r)));
    LatticeQuotient lm(cols, rows_m), lh(cols, rows_h);
    for (const auto& v : rows_h) EXPECT_TRUE(lm.contains(v));
    for (const auto& v : rows_m) EXPECT_TRUE(lh.contains(v));
    // shuffling the generators gives the same form
    IntegerMatrix rev(0, cols);
    for (std::size_t r = m.rows(); r-- > 0;) rev.append_row(m.row(r));
    EXPECT_EQ(hermite_basis(rev), h);
  }
}

TEST(RankOverField, AgreesWithMinors) {
  Rng rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t rows = rng.range(1, 5), cols = rng.range(1, 5);
    const Dense d = rng.matrix(rows, cols, -3, 3);
    const auto m = to_matrix(d, cols);
    EXPECT_EQ(rank_over_field(m, FieldSpec::rationals()), test::rank(d));
    for (std::uint64_t p : {2, 3, 5, 7}) {
      const auto inv = quotient_invariants(cols, m);
      std::size_t divisible = 0;
      for (const auto& t : inv.torsion) divisible += t.mod_u64(p) == 0;
      EXPECT_EQ(rank_over_field(m, FieldSpec::prime(p)), test::rank(d) - divisible);
    }
  }
  EXPECT_THROW(FieldSpec::prime(4), InputError);
  EXPECT_THROW(FieldSpec::from_characteristic(1), InputError);
}

TEST(LatticeQuotient, MembershipCoordinatesLift) {
  Rng rng(41);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t ambient = rng.range(1, 6), gens = rng.range(0, 6);
    const auto m = to_matrix(rng.matrix(gens, ambient, -3, 3), ambient);
    std::vector<SparseVector> rows;
    for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(to_sparse(m.row(r)));
    LatticeQuotient q(ambient, rows);
    EXPECT_EQ(q.invariants(), quotient_invariants(ambient, m));
    EXPECT_EQ(q.rank(), rank_over_field(m, FieldSpec::rationals()));

    const auto basis = q.basis();
    ASSERT_EQ(basis.size(), q.rank());
    // integer combination of generators is in L and its coordinates reproduce it
    std::vector<Integer> combo(ambient);
    for (const auto& r : rows) {
      const Integer k(rng.range(-2, 2));
      for (const auto& [c, v] : r) combo[c] += k * v;
    }
    const auto sv = to_sparse(combo);
    ASSERT_TRUE(q.contains(sv));
    auto coords = q.coordinates(sv);
    ASSERT_TRUE(coords);
    std::vector<Integer> rebuilt(ambient);
    for (std::size_t b = 0; b < basis.size(); ++b)
      for (const auto& [c, v] : basis[b]) rebuilt[c] += (*coords)[b] * v;
    EXPECT_EQ(rebuilt, combo);
    for (const auto& x : q.project(sv)) EXPECT_TRUE(x.is_zero());

    if (q.torsion_free()) {
      std::vector<Integer> f(q.invariants().free_rank);
      for (auto& x : f) x = rng.range(-3, 3);
      const auto lifted = q.lift(f);
      EXPECT_EQ(q.project(lifted), f);
    }
    // a vector with a torsion image is not contained
    if (!q.torsion_free()) {
      bool found_outside = false;
      for (std::size_t c = 0; c < ambient && !found_outside; ++c) {
        SparseVector e{{static_cast<std::uint32_t>(c), Integer(1)}};
        if (!q.contains(e)) found_outside = true;
      }
      EXPECT_TRUE(found_outside);
    }
  }
}

TEST(LatticeQuotient, HalfLatticeNotContained) {
  LatticeQuotient q(2, {{{0, Integer(2)}}, {{1, Integer(3)}}});
  EXPECT_FALSE(q.contains({{0, Integer(1)}}));
  EXPECT_TRUE(q.contains({{0, Integer(4)}, {1, Integer(-3)}}));
  EXPECT_EQ(q.invariants().to_string(), "Z^0 + Z/6");
  EXPECT_FALSE(q.coordinates({{1, Integer(1)}}).has_value());
}
