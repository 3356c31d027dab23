#include "osarr/os_algebra.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "osarr/errors.hpp"
#include "osarr/normal_form.hpp"

namespace osarr {
namespace {

void sort_lex(std::vector<Mask>& v) {
  std::sort(v.begin(), v.end(), [](Mask a, Mask b) { return lex_less(a, b); });
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

std::vector<Mask> independent_sets(const Arrangement& a, std::size_t q) {
  std::vector<Mask> out;
  const std::size_t n = a.size();
  auto visit = [&](auto&& self, Mask s, std::size_t k, std::size_t start) -> void {
    if (k == q) {
      out.push_back(s);
      return;
    }
    for (std::size_t e = start; e + (q - k) <= n; ++e)
      if (a.independent(s | bit(e))) self(self, s | bit(e), k + 1, e + 1);
  };
  visit(visit, 0, 0, 0);
  return out;
}

class TriangleIndex {
 public:
  explicit TriangleIndex(const OsAlgebra& os) : pairs_(os.size()) {
    for (const auto& c : os.circuits()) {
      if (c.size() != 3) continue;
      const Mask m = c.mask();
      triangles_.push_back(m);
      for (auto i : c.indices) pairs_[i].push_back(m & ~bit(i));
    }
  }
  /// Whether adding e to s creates a 3-circuit.
  bool closes(Mask s, std::size_t e) const {
    return std::any_of(pairs_[e].begin(), pairs_[e].end(), [&](Mask p) { return (s & p) == p; });
  }
  bool contains_triangle(Mask s) const {
    return std::any_of(triangles_.begin(), triangles_.end(), [&](Mask t) { return (s & t) == t; });
  }

 private:
  std::vector<Mask> triangles_;
  std::vector<std::vector<Mask>> pairs_;
};

std::vector<Mask> triangle_free_sets(const TriangleIndex& tri, std::size_t n, std::size_t q) {
  std::vector<Mask> out;
  auto visit = [&](auto&& self, Mask s, std::size_t k, std::size_t start) -> void {
    if (k == q) {
      out.push_back(s);
      return;
    }
    for (std::size_t e = start; e + (q - k) <= n; ++e)
      if (!tri.closes(s, e)) self(self, s | bit(e), k + 1, e + 1);
  };
  visit(visit, 0, 0, 0);
  return out;
}

void finish(SparseVector& v) {
  std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
}

// delta(e_T) restricted to surviving monomials.
SparseVector reduced_delta(const ReducedPresentation& p, Mask t) {
  SparseVector v;
  int sign = 1;
  for (Mask rest = t; rest; rest &= rest - 1) {
    auto it = p.position.find(t & ~low_bit(rest));
    if (it != p.position.end()) v.emplace_back(it->second, Integer(sign));
    sign = -sign;
  }
  finish(v);
  return v;
}

std::size_t rank_of(std::vector<SparseVector> rows, std::size_t ambient, FieldSpec field) {
  if (field.is_rational()) return LatticeQuotient(ambient, std::move(rows)).rank();
  return sparse_rank_mod_p(rows, ambient, static_cast<std::uint32_t>(field.characteristic()));
}

void add_prime_factors(Integer value, std::set<std::uint64_t>& primes) {
  mpz_class v = abs(value).to_mpz();
  for (unsigned long d = 2; d < (1ul << 31); ++d) {
    if (mpz_class(d) * d > v) break;
    if (mpz_divisible_ui_p(v.get_mpz_t(), d)) {
      primes.insert(d);
      while (mpz_divisible_ui_p(v.get_mpz_t(), d)) v /= d;
    }
  }
  if (v > 1 && v < (1ul << 31)) primes.insert(v.get_ui());
}

}  // namespace

std::string to_string(IdealKind k) {
  switch (k) {
    case IdealKind::Full: return "full";
    case IdealKind::Quadratic: return "quadratic";
    case IdealKind::Decomposable: return "decomposable";
  }
  return "?";
}

std::string to_string(QuotientKind k) {
  switch (k) {
    case QuotientKind::A: return "A";
    case QuotientKind::ABar: return "Abar";
    case QuotientKind::APlus: return "A+";
    case QuotientKind::Ind: return "IND";
  }
  return "?";
}

QuotientKind parse_quotient(const std::string& name) {
  std::string s;
  for (char c : name) s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (s == "a") return QuotientKind::A;
  if (s == "abar" || s == "a_bar") return QuotientKind::ABar;
  if (s == "a+" || s == "aplus" || s == "a_plus") return QuotientKind::APlus;
  if (s == "ind") return QuotientKind::Ind;
  throw InputError("unknown quotient '" + name + "' (expected A, Abar, A+ or IND)");
}

SparseVector ReducedPresentation::reduce(const ExteriorElement& u) const {
  SparseVector v;
  for (const auto& [m, c] : u.terms()) {
    auto it = position.find(m.mask());
    if (it != position.end()) v.emplace_back(it->second, c);
  }
  finish(v);
  return v;
}

bool ChordlessDeltaKernel::contains(const ExteriorElement& u) const {
  if (u.is_zero()) return true;
  if (u.degree() != degree + 1) return false;
  std::set<Mask> allowed;
  for (const auto& c : source) allowed.insert(c.mask());
  for (const auto& [m, c] : u.terms())
    if (!allowed.count(m.mask())) return false;
  return delta(u).is_zero();
}

OsAlgebra::OsAlgebra(Arrangement a) : a_(std::move(a)), rank_(a_.rank()) {}

void OsAlgebra::check_degree(std::size_t q) const {
  if (q > a_.size()) {
    throw InputError("degree " + std::to_string(q) + " out of range 0.." + std::to_string(a_.size()));
  }
}

const std::vector<Circuit>& OsAlgebra::circuits() const {
  std::lock_guard lock(mutex_);
  if (!circuits_) circuits_ = osarr::circuits(a_, rank_ + 1);
  return *circuits_;
}

const std::vector<Circuit>& OsAlgebra::chordless(std::size_t size) const {
  std::lock_guard lock(mutex_);
  auto it = chordless_.find(size);
  if (it != chordless_.end()) return it->second;
  std::vector<Circuit> out;
  for (const auto& c : circuits())
    if (c.size() == size && !has_chord(a_, c.mask())) out.push_back(c);
  return chordless_.emplace(size, std::move(out)).first->second;
}

ReducedPresentation OsAlgebra::build(IdealKind kind, std::size_t q) const {
  ReducedPresentation p;
  const std::size_t n = a_.size();
  auto index = [&p] {
    for (std::uint32_t i = 0; i < p.survivors.size(); ++i) p.position.emplace(p.survivors[i], i);
  };
  if (q == 0) {
    p.survivors = {0};
    index();
    return p;
  }

  if (kind == IdealKind::Quadratic) {
    TriangleIndex tri(*this);
    p.survivors = triangle_free_sets(tri, n, q);
    index();
    std::vector<Mask> ts;
    for (Mask u : p.survivors)
      for (std::size_t t = 0; t < n; ++t)
        if (!(u & bit(t)) && tri.closes(u, t)) ts.push_back(u | bit(t));
    sort_lex(ts);
    for (Mask t : ts) {
      auto v = reduced_delta(p, t);
      if (!v.empty()) p.generators.push_back(std::move(v));
    }
    return p;
  }

  p.survivors = independent_sets(a_, q);
  index();
  if (kind == IdealKind::Full) {
    std::vector<Mask> ts;
    for (Mask u : p.survivors) {
      const Mask extra = a_.closure(u) & ~u;
      for (Mask e = extra; e; e &= e - 1) ts.push_back(u | low_bit(e));
    }
    sort_lex(ts);
    for (Mask t : ts) {
      auto v = reduced_delta(p, t);
      if (!v.empty()) p.generators.push_back(std::move(v));
    }
    return p;
  }

  // decomposable: e_x ^ delta(e_T), T of size q and rank q-1, x outside cl(T)
  std::vector<Mask> ts;
  for (Mask w : independent_sets(a_, q - 1)) {
    const Mask extra = a_.closure(w) & ~w;
    for (Mask e = extra; e; e &= e - 1) ts.push_back(w | low_bit(e));
  }
  sort_lex(ts);
  for (Mask t : ts) {
    const Mask outside = a_.all() & ~a_.closure(t);
    for (Mask xs = outside; xs; xs &= xs - 1) {
      const Mask x = low_bit(xs);
      SparseVector v;
      int sign = 1;
      for (Mask rest = t; rest; rest &= rest - 1) {
        const Mask m = t & ~low_bit(rest);
        auto it = p.position.find(m | x);
        if (it != p.position.end()) v.emplace_back(it->second, Integer(sign * wedge_sign(x, m)));
        sign = -sign;
      }
      finish(v);
      if (!v.empty()) p.generators.push_back(std::move(v));
    }
  }
  return p;
}

const ReducedPresentation& OsAlgebra::presentation(IdealKind kind, std::size_t q) const {
  check_degree(q);
  std::lock_guard lock(mutex_);
  auto& slot = presentations_[{kind, q}];
  if (!slot) slot = std::make_unique<ReducedPresentation>(build(kind, q));
  return *slot;
}

const LatticeQuotient& OsAlgebra::lattice(IdealKind kind, std::size_t q) const {
  std::lock_guard lock(mutex_);
  auto& slot = lattices_[{kind, q}];
  if (!slot) {
    const auto& p = presentation(kind, q);
    slot = std::make_unique<LatticeQuotient>(p.survivors.size(), p.generators);
  }
  return *slot;
}

std::size_t OsAlgebra::generator_rank(IdealKind kind, std::size_t q, FieldSpec field) const {
  if (field.is_rational()) return lattice(kind, q).rank();
  std::lock_guard lock(mutex_);
  auto key = std::make_tuple(kind, q, field.characteristic());
  auto it = ranks_.find(key);
  if (it != ranks_.end()) return it->second;
  const auto& p = presentation(kind, q);
  const std::size_t r = sparse_rank_mod_p(p.generators, p.survivors.size(),
                                          static_cast<std::uint32_t>(field.characteristic()));
  ranks_.emplace(key, r);
  return r;
}

std::size_t OsAlgebra::hilbert_coefficient(QuotientKind quotient, std::size_t q, FieldSpec field) const {
  check_degree(q);
  auto quotient_dim = [&](IdealKind k) {
    return presentation(k, q).survivors.size() - generator_rank(k, q, field);
  };
  switch (quotient) {
    case QuotientKind::A: return quotient_dim(IdealKind::Full);
    case QuotientKind::ABar: return quotient_dim(IdealKind::Quadratic);
    case QuotientKind::APlus: return quotient_dim(IdealKind::Decomposable);
    case QuotientKind::Ind: {
      const std::size_t full = generator_rank(IdealKind::Full, q, field);
      const std::size_t dec = generator_rank(IdealKind::Decomposable, q, field);
      if (dec > full) throw InternalInvariantViolation("decomposable ideal larger than the full ideal");
      return full - dec;
    }
  }
  throw InputError("unknown quotient");
}

HilbertData OsAlgebra::hilbert(QuotientKind quotient, FieldSpec field) const {
  HilbertData h{quotient, field, {}};
  for (std::size_t q = 0; q <= a_.size(); ++q) h.coefficients.push_back(hilbert_coefficient(quotient, q, field));
  return h;
}

AbelianInvariants OsAlgebra::invariants(QuotientKind quotient, std::size_t q) const {
  check_degree(q);
  switch (quotient) {
    case QuotientKind::A: return lattice(IdealKind::Full, q).invariants();
    case QuotientKind::ABar: return lattice(IdealKind::Quadratic, q).invariants();
    case QuotientKind::APlus: return lattice(IdealKind::Decomposable, q).invariants();
    case QuotientKind::Ind: break;
  }
  std::lock_guard lock(mutex_);
  auto it = ind_invariants_.find(q);
  if (it != ind_invariants_.end()) return it->second;
  const auto& full = lattice(IdealKind::Full, q);
  std::vector<SparseVector> rows;
  for (const auto& g : presentation(IdealKind::Decomposable, q).generators) {
    auto coords = full.coordinates(g);
    if (!coords) {
      throw InternalInvariantViolation("decomposable generator outside the Orlik-Solomon ideal in degree " +
                                       std::to_string(q));
    }
    rows.push_back(to_sparse(*coords));
  }
  auto inv = LatticeQuotient(full.rank(), std::move(rows)).invariants();
  ind_invariants_.emplace(q, inv);
  return inv;
}

bool OsAlgebra::contains(IdealKind kind, const ExteriorElement& u) const {
  if (u.is_zero()) return true;
  check_degree(u.degree());
  for (const auto& [m, c] : u.terms())
    if (m.mask() & ~a_.all()) throw InputError("element uses a hyperplane index outside the arrangement");
  return lattice(kind, u.degree()).contains(presentation(kind, u.degree()).reduce(u));
}

GradedIdealPresentation ideal_generators(const Arrangement& a, IdealKind kind, std::size_t q) {
  const std::size_t n = a.size();
  if (q > n) throw InputError("degree " + std::to_string(q) + " out of range 0.." + std::to_string(n));
  GradedIdealPresentation out{kind, q, IntegerMatrix(0, binomial(n, q))};
  for (const auto& c : circuits(a, q + 1)) {
    if (kind == IdealKind::Quadratic && c.size() != 3) continue;
    const std::size_t s = q + 1 - c.size();
    if (kind == IdealKind::Decomposable && s == 0) continue;
    const ExteriorElement dc = delta_monomial(c.mask());
    for_each_subset(n, s, [&](Mask sm) {
      ExteriorElement g = wedge(ExteriorElement::monomial(sm), dc);
      if (g.is_zero()) return;
      out.generator_matrix.append_row(to_dense(g.coordinates(n), out.generator_matrix.cols()));
    });
  }
  return out;
}

HilbertData hilbert(const OsAlgebra& os, QuotientKind quotient, FieldSpec field) {
  return os.hilbert(quotient, field);
}

HilbertData hilbert(const Arrangement& a, QuotientKind quotient, FieldSpec field) {
  return OsAlgebra(a).hilbert(quotient, field);
}

AbelianInvariants quotient_invariants_graded(const Arrangement& a, QuotientKind quotient, std::size_t q) {
  return OsAlgebra(a).invariants(quotient, q);
}

std::vector<FieldSpec> default_r_table_fields(const OsAlgebra& os, std::optional<std::size_t> max_degree) {
  std::set<std::uint64_t> primes{2, 3, 5};
  const std::size_t top = std::min(os.size(), max_degree.value_or(os.size()));
  for (std::size_t q = 0; q <= top; ++q) {
    for (auto kind : {QuotientKind::APlus, QuotientKind::Ind})
      for (const auto& d : os.invariants(kind, q).torsion) add_prime_factors(d, primes);
  }
  std::vector<FieldSpec> fields{FieldSpec::rationals()};
  for (auto p : primes) fields.push_back(FieldSpec::prime(p));
  return fields;
}

RmTable r_table(const OsAlgebra& os, const std::vector<FieldSpec>& fields, std::optional<std::size_t> max_degree) {
  if (fields.empty()) throw InputError("r-table needs at least one field");
  RmTable t;
  t.fields = fields;
  const std::size_t top = std::min(os.size(), max_degree.value_or(os.size()));
  for (std::size_t m = 0; m <= top; ++m) {
    std::vector<std::size_t> row;
    for (auto f : fields) row.push_back(os.hilbert_coefficient(QuotientKind::Ind, m, f));
    const bool same = std::all_of(row.begin(), row.end(), [&](std::size_t x) { return x == row.front(); });
    if ((m < 2 || m > os.rank()) && std::any_of(row.begin(), row.end(), [](std::size_t x) { return x; })) {
      throw InternalInvariantViolation("r_" + std::to_string(m) + " is nonzero outside 2..rank");
    }
    t.values.push_back(std::move(row));
    t.field_independent.push_back(same);
  }
  return t;
}

RmTable r_table(const Arrangement& a, const std::vector<FieldSpec>& fields) {
  OsAlgebra os(a);
  return r_table(os, fields);
}

ChordlessSpanReport chordless_span_check(const OsAlgebra& os, std::size_t q, FieldSpec field) {
  if (q < 2) throw InputError("chordless span check needs degree >= 2");
  if (q > os.size()) throw InputError("degree " + std::to_string(q) + " out of range");
  ChordlessSpanReport r;
  r.degree = q;
  r.field = field;
  const auto& full = os.presentation(IdealKind::Full, q);
  const auto& dec = os.presentation(IdealKind::Decomposable, q);
  std::vector<SparseVector> images;
  for (const auto& c : os.chordless(q + 1)) images.push_back(full.reduce(delta_monomial(c.mask())));
  r.source_dim = images.size();
  // both presentations live on the independent q-sets
  const std::size_t base = os.generator_rank(IdealKind::Decomposable, q, field);
  std::vector<SparseVector> rows = dec.generators;
  rows.insert(rows.end(), images.begin(), images.end());
  r.span_dim = rank_of(std::move(rows), full.survivors.size(), field) - base;
  r.target_dim = os.hilbert_coefficient(QuotientKind::Ind, q, field);
  r.onto = r.span_dim == r.target_dim;
  r.injective = r.span_dim == r.source_dim;
  if (os.arrangement().is_graphic()) r.graphic_bijective = r.onto && r.injective;
  return r;
}

ChordlessSpanReport chordless_span_check(const Arrangement& a, std::size_t q, FieldSpec field) {
  OsAlgebra os(a);
  return chordless_span_check(os, q, field);
}

ChordlessDeltaKernel chordless_delta_kernel(const OsAlgebra& os, std::size_t q) {
  if (q + 1 > os.size()) throw InputError("degree " + std::to_string(q) + " out of range");
  ChordlessDeltaKernel k;
  k.degree = q;
  if (q + 1 >= 3) k.source = os.chordless(q + 1);
  std::vector<SparseVector> rows;
  for (const auto& c : k.source) rows.push_back(delta_monomial(c.mask()).coordinates(os.size()));
  k.image_rank = LatticeQuotient(binomial(os.size(), q), std::move(rows)).rank();
  k.kernel_dim = k.source.size() - k.image_rank;
  return k;
}

bool ideal_membership(const Arrangement& a, const ExteriorElement& u, IdealKind kind) {
  return OsAlgebra(a).contains(kind, u);
}

}  // namespace osarr
