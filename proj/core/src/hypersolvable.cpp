#include "osarr/hypersolvable.hpp"

#include <algorithm>
#include <unordered_set>

#include "osarr/errors.hpp"

namespace osarr {
namespace {

std::string join_indices(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

ExtensionCheck fail(int condition, std::vector<std::size_t> witness, const std::string& what) {
  ExtensionCheck c;
  c.ok = false;
  c.condition = condition;
  c.message = what + " {" + join_indices(witness) + "}";
  c.witness = std::move(witness);
  return c;
}

class SeriesSearch {
 public:
  SeriesSearch(const Arrangement& a) : a_(a), lines_(a) {}

  bool run(Mask s, std::vector<Mask>& chain) {
    if (popcount(s) == 1) {
      chain.push_back(s);
      return true;
    }
    if (failed_.count(s)) return false;
    const std::size_t rs = a_.rank(s);
    for (Mask ext : candidates(s)) {
      const Mask b = s & ~ext;
      if (a_.rank(b) + 1 < rs) continue;
      if (!solvable_extension_check(a_, lines_, s, b).ok) continue;
      if (run(b, chain)) {
        chain.push_back(s);
        return true;
      }
    }
    failed_.insert(s);
    return false;
  }

 private:
  // Nonempty proper subsets of s whose pairs all lie on lines of s with at
  // least three hyperplanes; singletons included. Sorted by size, then lex.
  std::vector<Mask> candidates(Mask s) {
    const auto idx = mask_indices(s);
    std::vector<Mask> nbr(a_.size(), 0);
    for (std::size_t x = 0; x < idx.size(); ++x)
      for (std::size_t y = x + 1; y < idx.size(); ++y) {
        const std::size_t i = idx[x], j = idx[y];
        if (popcount(lines_.line(i, j) & s) >= 3) {
          nbr[i] |= bit(j);
          nbr[j] |= bit(i);
        }
      }
    std::vector<Mask> out;
    auto grow = [&](auto&& self, Mask clique, Mask allowed) -> void {
      if (clique != s) out.push_back(clique);
      for (Mask rest = allowed; rest; rest &= rest - 1) {
        const std::size_t e = low_index(rest);
        // only extend with larger elements so every clique is produced once
        self(self, clique | bit(e), allowed & nbr[e] & above(e));
      }
    };
    for (auto i : idx) grow(grow, bit(i), nbr[i] & above(i));
    std::sort(out.begin(), out.end(), [](Mask x, Mask y) {
      if (popcount(x) != popcount(y)) return popcount(x) < popcount(y);
      return lex_less(x, y);
    });
    return out;
  }

  const Arrangement& a_;
  LineTable lines_;
  std::unordered_set<Mask> failed_;
};

}  // namespace

LineTable::LineTable(const Arrangement& a) : n_(a.size()), lines_(n_ * n_, 0) {
  for (std::size_t i = 0; i < n_; ++i) {
    lines_[i * n_ + i] = bit(i);
    for (std::size_t j = i + 1; j < n_; ++j) {
      const Mask l = a.closure(bit(i) | bit(j));
      lines_[i * n_ + j] = lines_[j * n_ + i] = l;
    }
  }
}

ExtensionCheck solvable_extension_check(const Arrangement& a, const LineTable& lines, Mask s, Mask b) {
  const Mask ext = s & ~b;
  const auto xs = mask_indices(ext), bs = mask_indices(b);
  // (I) closedness
  for (auto x : xs)
    for (auto y : bs) {
      const Mask on = lines.line(x, y) & b & ~bit(y);
      if (on) return fail(1, {x, y, low_index(on)}, "hyperplane outside the base is collinear with two base hyperplanes");
    }
  // (II) completeness
  std::vector<std::size_t> f(xs.size() * xs.size(), 0);
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      const Mask on = lines.line(xs[i], xs[j]) & b;
      if (!on) return fail(2, {xs[i], xs[j]}, "pair outside the base has no base hyperplane on its line");
      f[i * xs.size() + j] = f[j * xs.size() + i] = low_index(on);
    }
  // (III) solvability
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = i + 1; j < xs.size(); ++j)
      for (std::size_t k = j + 1; k < xs.size(); ++k) {
        const std::size_t fij = f[i * xs.size() + j], fjk = f[j * xs.size() + k], fik = f[i * xs.size() + k];
        if (fij == fjk && fjk == fik) continue;
        if (fij != fjk && fjk != fik && fij != fik && a.rank(bit(fij) | bit(fjk) | bit(fik)) == 2) continue;
        return fail(3, {xs[i], xs[j], xs[k]}, "triple violates the solvability condition");
      }
  (void)s;
  return {};
}

ExtensionCheck solvable_extension_check(const Arrangement& a, Mask b) {
  b &= a.all();
  if (b == 0 || b == a.all()) throw InputError("extension base must be a proper nonempty subset");
  return solvable_extension_check(a, LineTable(a), a.all(), b);
}

std::optional<CompositionSeries> composition_series(const Arrangement& a) {
  if (a.size() == 0) return std::nullopt;
  SeriesSearch search(a);
  CompositionSeries out;
  if (!search.run(a.all(), out.chain)) return std::nullopt;
  out.exponents.push_back(1);
  for (std::size_t i = 1; i < out.chain.size(); ++i)
    out.exponents.push_back(popcount(out.chain[i]) - popcount(out.chain[i - 1]));
  return out;
}

std::vector<Integer> exponent_polynomial(const std::vector<std::size_t>& exponents) {
  std::vector<Integer> p{Integer(1)};
  for (auto d : exponents) {
    std::vector<Integer> next(p.size() + 1);
    for (std::size_t i = 0; i < p.size(); ++i) {
      next[i] += p[i];
      next[i + 1].add_mul(p[i], Integer(static_cast<long long>(d)));
    }
    p = std::move(next);
  }
  return p;
}

std::optional<std::size_t> p_order(const OsAlgebra& os) {
  const auto field = FieldSpec::rationals();
  for (std::size_t t = 0; t <= os.size(); ++t) {
    const std::size_t x = os.hilbert_coefficient(QuotientKind::A, t, field);
    const std::size_t y = os.hilbert_coefficient(QuotientKind::ABar, t, field);
    if (x != y) return t - 1;
    if (x == 0) break;  // both algebras vanish from here on
  }
  return std::nullopt;
}

std::optional<std::size_t> p_order(const Arrangement& a) {
  OsAlgebra os(a);
  return p_order(os);
}

Classification classify(const OsAlgebra& os) {
  const Arrangement& a = os.arrangement();
  Classification c;
  c.r = os.rank();
  c.genericity = c_and_genericity(a);
  c.p = p_order(os);
  c.modular_chain = IntersectionLattice(a).modular_chain().has_value();
  c.series = composition_series(a);
  c.hypersolvable = c.series.has_value();

  if (c.hypersolvable) {
    const auto product = exponent_polynomial(c.series->exponents);
    const auto quad = os.hilbert(QuotientKind::ABar, FieldSpec::rationals()).coefficients;
    for (std::size_t q = 0; q < std::max(product.size(), quad.size()); ++q) {
      const Integer lhs = q < product.size() ? product[q] : Integer(0);
      const Integer rhs = q < quad.size() ? Integer(static_cast<long long>(quad[q])) : Integer(0);
      if (lhs != rhs) {
        throw InternalInvariantViolation("exponent product differs from the quadratic Hilbert series in degree " +
                                         std::to_string(q));
      }
    }
    c.supersolvable = !c.p.has_value();
    const bool full_length = c.series->chain.size() == c.r;
    if (c.modular_chain != c.supersolvable || full_length != c.supersolvable) {
      throw InternalInvariantViolation("supersolvability oracles disagree (quadratic: " +
                                       std::to_string(c.supersolvable) + ", modular chain: " +
                                       std::to_string(c.modular_chain) + ", series length " +
                                       std::to_string(c.series->chain.size()) + " vs rank " +
                                       std::to_string(c.r) + ")");
    }
    if (!c.supersolvable && !(*c.p >= 2 && *c.p < c.r)) {
      throw InternalInvariantViolation("hypersolvable arrangement with p outside [2, r)");
    }
  } else {
    if (c.modular_chain) throw InternalInvariantViolation("modular chain found but no composition series");
    c.supersolvable = false;
    c.warnings.push_back("not hypersolvable: p is the raw rank comparison and has no homotopy meaning");
  }

  if (c.genericity.two_generic.value_or(false)) {
    if (!c.hypersolvable || c.supersolvable || c.p != *c.genericity.c - 2) {
      throw InternalInvariantViolation("2-generic arrangement not classified as hypersolvable with p = c - 2");
    }
  }
  return c;
}

Classification classify(const Arrangement& a) {
  OsAlgebra os(a);
  return classify(os);
}

bool is_supersolvable(const OsAlgebra& os) { return classify(os).supersolvable; }

bool is_supersolvable(const Arrangement& a) {
  OsAlgebra os(a);
  return is_supersolvable(os);
}

}  // namespace osarr
