#include "osarr/homotopy.hpp"

#include <algorithm>

#include "osarr/errors.hpp"
#include "osarr/graphs.hpp"
#include "osarr/lattice.hpp"
#include "osarr/normal_form.hpp"
#include "osarr/parallel.hpp"

namespace osarr {
namespace {

void require_qualifying(const Classification& c) {
  if (!c.hypersolvable) {
    throw PreconditionError("arrangement is not hypersolvable; pi_p is not defined by the combinatorial theory");
  }
  if (c.supersolvable) {
    throw PreconditionError("arrangement is supersolvable (fiber-type); the complement is aspherical and pi_p vanishes");
  }
}

ExteriorElement element_of(const SparseVector& v, const std::vector<Mask>& monomials, std::size_t degree) {
  ExteriorElement e(degree);
  for (const auto& [i, c] : v) e.add_term(Monomial(monomials[i]), c);
  return e;
}

std::string dump(const char* name, const IntegerMatrix& m) { return std::string(name) + " = " + m.to_string(); }

}  // namespace

std::size_t gr0_rank(const OsAlgebra& os, const Classification& c) {
  require_qualifying(c);
  const std::size_t k = *c.p + 1;
  const auto q = FieldSpec::rationals();
  const std::size_t bar = os.hilbert_coefficient(QuotientKind::ABar, k, q);
  const std::size_t full = os.hilbert_coefficient(QuotientKind::A, k, q);
  if (bar <= full) throw InternalInvariantViolation("H_{p+1}(Y,X) vanishes for a qualifying arrangement");
  return bar - full;
}

MuPresentation mu_presentation(const OsAlgebra& os, const Classification& c) {
  const std::size_t gr0 = gr0_rank(os, c);
  const Arrangement& a = os.arrangement();
  const std::size_t n = a.size();
  const std::size_t k = *c.p + 1;
  if (k + 1 > n) throw InternalInvariantViolation("degree p+2 exceeds the number of hyperplanes");

  const auto& quad_k = os.presentation(IdealKind::Quadratic, k);
  const auto& quad_k1 = os.presentation(IdealKind::Quadratic, k + 1);
  const auto& lat_k = os.lattice(IdealKind::Quadratic, k);
  const auto& lat_k1 = os.lattice(IdealKind::Quadratic, k + 1);
  if (!lat_k.torsion_free() || !lat_k1.torsion_free()) {
    throw InternalInvariantViolation("quadratic Orlik-Solomon algebra has torsion in degree " +
                                     std::to_string(lat_k.torsion_free() ? k + 1 : k));
  }
  const std::size_t free_k = lat_k.invariants().free_rank;

  // I^k modulo I_2^k, in the free coordinates of (Lambda/I_2)^k
  std::vector<SparseVector> images;
  for (Mask m : quad_k.survivors) {
    if (a.independent(m)) continue;
    auto v = lat_k.project(SparseVector{{quad_k.position.at(m), Integer(1)}});
    if (auto s = to_sparse(v); !s.empty()) images.push_back(std::move(s));
  }
  const auto& full = os.presentation(IdealKind::Full, k);
  for (const auto& g : full.generators) {
    SparseVector w;
    for (const auto& [i, x] : g) {
      auto it = quad_k.position.find(full.survivors[i]);
      if (it != quad_k.position.end()) w.emplace_back(it->second, x);
    }
    std::sort(w.begin(), w.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    if (w.empty()) continue;
    if (auto s = to_sparse(lat_k.project(w)); !s.empty()) images.push_back(std::move(s));
  }
  LatticeQuotient sub(free_k, std::move(images));
  if (sub.rank() != gr0) {
    throw InternalInvariantViolation("rank of (I/I_2)^{p+1} is " + std::to_string(sub.rank()) +
                                     ", Hilbert data gives " + std::to_string(gr0));
  }
  if (!sub.torsion_free()) throw InternalInvariantViolation("Orlik-Solomon algebra has torsion in degree p+1");
  IntegerMatrix basis_rows(0, free_k);
  for (const auto& b : sub.basis()) basis_rows.append_row(to_dense(b, free_k));
  const IntegerMatrix hermite = hermite_basis(basis_rows);

  MuPresentation mu;
  mu.p = *c.p;
  std::vector<SparseVector> lifts;
  for (std::size_t g = 0; g < hermite.rows(); ++g) {
    lifts.push_back(lat_k.lift(hermite.row(g)));
    mu.generators.push_back(element_of(lifts.back(), quad_k.survivors, k));
  }
  const std::size_t free_k1 = lat_k1.invariants().free_rank;
  for (std::size_t j = 0; j < free_k1; ++j) {
    std::vector<Integer> unit(free_k1);
    unit[j] = 1;
    mu.columns.push_back(element_of(lat_k1.lift(unit), quad_k1.survivors, k + 1));
  }
  for (std::size_t g = 0; g < lifts.size(); ++g)
    for (std::size_t h = 0; h < n; ++h) mu.rows.emplace_back(g, h);

  mu.matrix = IntegerMatrix(mu.rows.size(), free_k1);
  parallel_for(mu.rows.size(), [&](std::size_t r) {
    const auto [g, h] = mu.rows[r];
    std::vector<Integer> acc(quad_k1.survivors.size());
    for (const auto& [i, x] : lifts[g]) {
      const Mask m = quad_k.survivors[i];
      if (m & bit(h)) continue;
      auto it = quad_k1.position.find(m | bit(h));
      if (it == quad_k1.position.end()) continue;  // contains a 3-circuit, so lies in I_2
      if (wedge_sign(m, bit(h)) > 0) {
        acc[it->second] += x;
      } else {
        acc[it->second] -= x;
      }
    }
    auto row = lat_k1.project(to_sparse(acc));
    for (std::size_t j = 0; j < free_k1; ++j) mu.matrix(r, j) = std::move(row[j]);
  });
  return mu;
}

AbelianInvariants gr1_invariants(const MuPresentation& mu) {
  // gr1 is the cokernel of the transpose: Z^rows modulo the columns of mu
  return quotient_invariants(mu.matrix.rows(), mu.matrix.transpose());
}

NilpotentQuotient2 second_nilpotent_quotient(const OsAlgebra& os, const Classification& c) {
  NilpotentQuotient2 q;
  q.gr0_rank = gr0_rank(os, c);
  q.mu = mu_presentation(os, c);
  q.gr1 = gr1_invariants(q.mu);
  return q;
}

HomotopyReport torsion_and_rank_report(const OsAlgebra& os, const Classification& c) {
  HomotopyReport rep;
  rep.quotient = second_nilpotent_quotient(os, c);
  rep.p = *c.p;
  rep.r = c.r;
  const std::size_t k = rep.p + 1, k2 = rep.p + 2;
  const Arrangement& a = os.arrangement();
  const auto& mu = rep.quotient.mu.matrix;

  auto& t = rep.torsion;
  t.gr1 = rep.quotient.gr1;
  t.a_plus = os.invariants(QuotientKind::APlus, k2);
  t.ind = os.invariants(QuotientKind::Ind, k2);
  t.gr1_torsion_free = t.gr1.torsion_free();
  t.a_plus_free_p2 = t.a_plus.torsion_free();
  t.ind_free_p2 = t.ind.torsion_free();
  if (t.gr1_torsion_free != t.a_plus_free_p2 || t.a_plus_free_p2 != t.ind_free_p2) {
    throw InternalInvariantViolation("torsion tests disagree: gr1 " + t.gr1.to_string() + ", A+ " +
                                     t.a_plus.to_string() + ", IND " + t.ind.to_string() + "; " +
                                     dump("mu", mu));
  }
  if (t.gr1.torsion != t.a_plus.torsion) {
    throw InternalInvariantViolation("torsion of gr1 (" + t.gr1.to_string() + ") differs from A+ in degree p+2 (" +
                                     t.a_plus.to_string() + "); " + dump("mu", mu));
  }

  auto& b = rep.ranks;
  const auto q = FieldSpec::rationals();
  b.hyperplanes = a.size();
  b.gr0_rank = rep.quotient.gr0_rank;
  b.mu_rank = detail::bareiss_rank(mu);
  b.gr1_free_rank = t.gr1.free_rank;
  b.abar_p1 = os.hilbert_coefficient(QuotientKind::ABar, k, q);
  b.a_p1 = os.hilbert_coefficient(QuotientKind::A, k, q);
  b.abar_p2 = os.hilbert_coefficient(QuotientKind::ABar, k2, q);
  b.a_p2 = os.hilbert_coefficient(QuotientKind::A, k2, q);
  b.r_p2 = os.hilbert_coefficient(QuotientKind::Ind, k2, q);
  auto ll = [](std::size_t x) { return static_cast<long long>(x); };
  b.formula = ll(b.hyperplanes) * (ll(b.abar_p1) - ll(b.a_p1)) - (ll(b.abar_p2) - ll(b.a_p2)) + ll(b.r_p2);
  const long long direct = ll(b.hyperplanes) * ll(b.gr0_rank) - ll(b.mu_rank);
  if (direct != ll(b.gr1_free_rank) || direct != b.formula) {
    throw InternalInvariantViolation("rank bookkeeping mismatch: |A|*gr0 - rank(mu) = " + std::to_string(direct) +
                                     ", Smith free rank " + std::to_string(b.gr1_free_rank) + ", formula " +
                                     std::to_string(b.formula) + "; " + dump("mu", mu));
  }

  if (a.is_graphic()) {
    const Graph& g = *a.source();
    b.chordless_p3 = os.chordless(rep.p + 3).size();
    const auto chi = chromatic_polynomial(g);
    auto betti = [&](std::size_t j) -> long long {
      const std::size_t v = g.vertex_count();
      if (j > v || v - j >= chi.size()) return 0;
      return abs(chi[v - j]).to_mpz().get_si();
    };
    const auto quad = exponent_polynomial(c.series->exponents);
    auto bar = [&](std::size_t j) -> long long { return j < quad.size() ? quad[j].to_mpz().get_si() : 0; };
    b.graphic_formula = ll(b.hyperplanes) * (bar(k) - betti(k)) - (bar(k2) - betti(k2)) + ll(*b.chordless_p3);
    if (*b.chordless_p3 != b.r_p2 || *b.graphic_formula != b.formula || !t.gr1_torsion_free) {
      throw InternalInvariantViolation("graphic formula disagrees: r_{p+2} = " + std::to_string(b.r_p2) +
                                       ", chordless (p+3)-circuits = " + std::to_string(*b.chordless_p3) +
                                       ", graphic rank " + std::to_string(*b.graphic_formula) + ", generic rank " +
                                       std::to_string(b.formula) + ", gr1 " + t.gr1.to_string());
    }
  }
  return rep;
}

std::size_t gr0_rank(const Arrangement& a) {
  OsAlgebra os(a);
  return gr0_rank(os, classify(os));
}

MuPresentation mu_presentation(const Arrangement& a) {
  OsAlgebra os(a);
  return mu_presentation(os, classify(os));
}

AbelianInvariants gr1_invariants(const Arrangement& a) { return gr1_invariants(mu_presentation(a)); }

NilpotentQuotient2 second_nilpotent_quotient(const Arrangement& a) {
  OsAlgebra os(a);
  return second_nilpotent_quotient(os, classify(os));
}

HomotopyReport torsion_and_rank_report(const Arrangement& a) {
  OsAlgebra os(a);
  return torsion_and_rank_report(os, classify(os));
}

}  // namespace osarr
